// Copyright 2026 The floquet-lindblad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Independent reference implementations used by the tests. Nothing here
// calls into the superoperator machinery under test except for types.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "floq/superop.hpp"

namespace floq::oracle {

using Mat = Eigen::MatrixXcd;
using Cx = std::complex<double>;

inline Mat unit(int n, int i, int j) {
  Mat e = Mat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

/// Superoperator matrix of a linear map, column j*N+i holding f(E_ij).
inline Mat matrix_of(int n, const std::function<Mat(const Mat&)>& f) {
  Mat s(n * n, n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Mat out = f(unit(n, i, j));
      for (int b = 0; b < n; ++b) {
        for (int a = 0; a < n; ++a) s(b * n + a, j * n + i) = out(a, b);
      }
    }
  }
  return s;
}

/// rho -> -i[H, rho] + sum A rho A^dag - 1/2 {A^dag A, rho}, by direct products.
inline Mat lindblad_action(const Mat& h, const std::vector<Mat>& jumps, const Mat& rho) {
  const Cx i{0.0, 1.0};
  Mat out = -i * (h * rho - rho * h);
  for (const auto& a : jumps) {
    const Mat ad = a.adjoint();
    out += a * rho * ad - 0.5 * (ad * a * rho + rho * ad * a);
  }
  return out;
}

inline Mat lindblad_matrix(const Mat& h, const std::vector<Mat>& jumps) {
  return matrix_of(static_cast<int>(h.rows()),
                   [&](const Mat& x) { return lindblad_action(h, jumps, x); });
}

/// (S x id)|Omega><Omega| = (1/N) sum_ij S(E_ij) (x) E_ij.
inline Mat choi(int n, const std::function<Mat(const Mat&)>& f) {
  Mat c = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Mat s = f(unit(n, i, j));
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) c(a * n + i, b * n + j) += s(a, b) / static_cast<double>(n);
      }
    }
  }
  return c;
}

/// Applies a superoperator matrix in the column-stacking convention.
inline Mat apply(const Mat& s, const Mat& rho) {
  const int n = static_cast<int>(rho.rows());
  Eigen::VectorXcd v(n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) v(j * n + i) = rho(i, j);
  }
  const Eigen::VectorXcd w = s * v;
  Mat out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out(i, j) = w(j * n + i);
  }
  return out;
}

inline Mat choi_of_matrix(const Mat& s) {
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(s.rows()))));
  return choi(n, [&](const Mat& x) { return apply(s, x); });
}

/// Undriven amplitude damping with H = sigma_z / 2, A = sqrt(gamma) |1><0|.
/// rho_00 decays as e^{-gamma t}, coherences as e^{-gamma t/2 -/+ i t}.
inline Mat amplitude_damping_map(double gamma, double t) {
  return matrix_of(2, [&](const Mat& r) {
    const double pop = std::exp(-gamma * t);
    const Cx coh = std::exp(Cx(-0.5 * gamma * t, -t));
    Mat out(2, 2);
    out(0, 0) = r(0, 0) * pop;
    out(1, 1) = r(1, 1) + r(0, 0) * (1.0 - pop);
    out(0, 1) = r(0, 1) * coh;
    out(1, 0) = r(1, 0) * std::conj(coh);
    return out;
  });
}

inline Mat random_matrix(int n, std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Cx(g(rng), g(rng));
  }
  return m;
}

inline Mat random_hermitian(int n, std::mt19937& rng, double scale = 1.0) {
  const Mat m = random_matrix(n, rng, scale);
  return 0.5 * (m + m.adjoint());
}

inline Mat random_traceless(int n, std::mt19937& rng, double scale = 1.0) {
  Mat m = random_matrix(n, rng, scale);
  m -= (m.trace() / static_cast<double>(n)) * Mat::Identity(n, n);
  return m;
}

/// Random Lindbladian data: Hermitian H and 1..max_jumps traceless jumps.
struct LindbladData {
  Mat h;
  std::vector<Mat> jumps;
};

inline LindbladData random_lindblad(int n, std::mt19937& rng, int max_jumps = 3) {
  LindbladData d;
  d.h = random_hermitian(n, rng);
  std::uniform_int_distribution<int> count(1, max_jumps);
  const int k = count(rng);
  for (int i = 0; i < k; ++i) d.jumps.push_back(random_traceless(n, rng, 0.4));
  return d;
}

/// Two-level Hamiltonian from the Bell-basis closed form, applied to the
/// Choi matrix built with the unnormalized maximally entangled vector.
inline Mat bell_basis_hamiltonian(const Mat& choi_normalized) {
  const double r = 1.0 / std::sqrt(2.0);
  Mat b = Mat::Zero(4, 4);
  // |00>, |01>, |10>, |11> at indices 0..3; columns Omega, Sigma, Gamma, Lambda.
  b(0, 0) = r; b(3, 0) = r;
  b(0, 1) = r; b(3, 1) = -r;
  b(1, 2) = r; b(2, 2) = r;
  b(1, 3) = r; b(2, 3) = -r;
  const Mat c = b.adjoint() * (2.0 * choi_normalized) * b;
  const Cx bb = c(1, 0), cc = c(2, 0), dd = c(3, 0);
  const Cx i{0.0, 1.0};
  Mat h(2, 2);
  h(0, 0) = -bb.imag();
  h(0, 1) = -cc.imag() + i * dd.real();
  h(1, 0) = -cc.imag() - i * dd.real();
  h(1, 1) = bb.imag();
  return 0.5 * h;
}

/// Smallest eigenvalue of a Hermitian matrix.
inline double min_eig(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// Pi C Pi >= -tol on the complement of |Omega>, via an explicit projector.
inline double min_projected_choi(const Mat& choi_matrix) {
  const int d = static_cast<int>(choi_matrix.rows());
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(d))));
  Eigen::VectorXcd omega = Eigen::VectorXcd::Zero(d);
  for (int i = 0; i < n; ++i) omega(i * n + i) = 1.0 / std::sqrt(static_cast<double>(n));
  const Mat pi = Mat::Identity(d, d) - omega * omega.adjoint();
  // Restrict to range(Pi) by adding a large positive weight on |Omega>.
  const Mat block = pi * choi_matrix * pi + 1e3 * (omega * omega.adjoint());
  return min_eig(block);
}

/// h(t) for d/dt h = int_0^t e^{(s-t)/tau} lambda h(s) ds via the equivalent
/// ODE pair h' = g, g' = lambda h - g / tau, classical RK4 with n steps.
inline Cx integrate_kernel_ode(Cx lambda, double tau, double t, int steps = 200000) {
  Cx h = 1.0, g = 0.0;
  const double dt = t / steps;
  auto f = [&](Cx hh, Cx gg) { return std::pair<Cx, Cx>{gg, lambda * hh - gg / tau}; };
  for (int k = 0; k < steps; ++k) {
    auto [k1h, k1g] = f(h, g);
    auto [k2h, k2g] = f(h + 0.5 * dt * k1h, g + 0.5 * dt * k1g);
    auto [k3h, k3g] = f(h + 0.5 * dt * k2h, g + 0.5 * dt * k2g);
    auto [k4h, k4g] = f(h + dt * k3h, g + dt * k3g);
    h += dt / 6.0 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h);
    g += dt / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
  }
  return h;
}

/// Time-ordered propagator of the driven two-level model by fixed-step RK4
/// on the density matrix ODE for each basis input, n steps per period.
inline Mat driven_two_level_map(double e, double omega, double phi, double gamma, double t,
                                int steps) {
  const Cx i{0.0, 1.0};
  Mat sz(2, 2), sx(2, 2), sm = Mat::Zero(2, 2);
  sz << 1.0, 0.0, 0.0, -1.0;
  sx << 0.0, 1.0, 1.0, 0.0;
  sm(1, 0) = 1.0;
  const std::vector<Mat> jumps{std::sqrt(gamma) * sm};
  auto rhs = [&](double time, const Mat& r) {
    const Mat h = 0.5 * sz + e * std::cos(omega * time + phi) * sx;
    return lindblad_action(h, jumps, r);
  };
  return matrix_of(2, [&](const Mat& r0) {
    Mat r = r0;
    const double dt = t / steps;
    for (int k = 0; k < steps; ++k) {
      const double tk = k * dt;
      const Mat k1 = rhs(tk, r);
      const Mat k2 = rhs(tk + 0.5 * dt, r + 0.5 * dt * k1);
      const Mat k3 = rhs(tk + 0.5 * dt, r + 0.5 * dt * k2);
      const Mat k4 = rhs(tk + dt, r + dt * k3);
      r += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return r;
  });
}

}  // namespace floq::oracle
