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

#include "floq/kernel.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <Eigen/Eigenvalues>

#include "floq/errors.hpp"

namespace floq {

namespace {

constexpr Complex kI{0.0, 1.0};

// Scaled hyperbolic pieces of h at dimensionless s = t/(2 tau) and
// w = s^2 + lambda_K t^2 = u^2:
//   cs = e^{-s} cosh u,  ss = e^{-s} sinh(u)/u.
struct Pieces {
  Complex cs;
  Complex ss;
  Complex w;
};

Pieces pieces(double s, Complex ell) {
  const Complex w = s * s + ell;
  const double es = std::exp(-s);
  if (std::abs(w) < 1e-4) {
    Complex c_sum = 0.0, s_sum = 0.0, term = 1.0;
    double fc = 1.0, fs = 1.0;  // (2n)!, (2n+1)!
    for (int n = 0; n < 8; ++n) {
      if (n > 0) {
        term *= w;
        fc *= (2.0 * n - 1.0) * (2.0 * n);
        fs *= (2.0 * n) * (2.0 * n + 1.0);
      }
      c_sum += term / fc;
      s_sum += term / fs;
    }
    return {es * c_sum, es * s_sum, w};
  }
  Complex u = std::sqrt(w);
  if (u.real() < 0.0) u = -u;
  // u - s = ell / (u + s) avoids cancellation when u ~ s.
  const Complex u_minus_s = (std::abs(u + s) > 0.5 * s) ? ell / (u + s) : u - s;
  const Complex e_plus = std::exp(u_minus_s);
  const Complex e_minus = std::exp(-u - s);
  return {0.5 * (e_plus + e_minus), (e_plus - e_minus) / (2.0 * u), w};
}

Complex h_scaled(double s, Complex ell) {
  const Pieces p = pieces(s, ell);
  return p.cs + s * p.ss;
}

// d h / d ell at fixed s.
Complex dh_dell(double s, Complex ell) {
  const Pieces p = pieces(s, ell);
  if (std::abs(p.w) < 1e-2) {
    // d/dw [sinh(u)/u] = sum_n n w^{n-1} / (2n+1)!
    Complex sum = 0.0, wp = 1.0;
    double f = 6.0;
    for (int n = 1; n < 12; ++n) {
      sum += static_cast<double>(n) * wp / f;
      wp *= p.w;
      f *= (2.0 * n + 2.0) * (2.0 * n + 3.0);
    }
    return 0.5 * p.ss + s * std::exp(-s) * sum;
  }
  return 0.5 * p.ss + s * (p.cs - p.ss) / (2.0 * p.w);
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Newton on ell = lambda_K T^2 for h(T) = lambda_a.
std::optional<Complex> polish(Complex ell, double s, Complex lambda_a) {
  Complex f = h_scaled(s, ell) - lambda_a;
  for (int it = 0; it < 80 && finite(f); ++it) {
    const Complex d = dh_dell(s, ell);
    if (!finite(d) || std::abs(d) == 0.0) return std::nullopt;
    Complex step = f / d;
    // Halve the step while it increases the residual.
    Complex next = ell - step;
    Complex f_next = h_scaled(s, next) - lambda_a;
    for (int k = 0; k < 30 && (!finite(f_next) || std::abs(f_next) > std::abs(f)); ++k) {
      step *= 0.5;
      next = ell - step;
      f_next = h_scaled(s, next) - lambda_a;
    }
    if (!finite(f_next)) return std::nullopt;
    ell = next;
    f = f_next;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(ell)) || std::abs(f) < 1e-15) break;
  }
  if (!finite(f)) return std::nullopt;
  return ell;
}

// Seeds per branch k from the large-s form e^{u - s}(1 + s/u)/2 = lambda_a
// and the small-s form cosh u = c.
std::vector<Complex> branch_seeds(Complex lambda_a, double s, int branches) {
  std::vector<Complex> out;
  if (std::abs(lambda_a) == 0.0) return out;
  for (int k = -branches; k <= branches; ++k) {
    const Complex shift = 2.0 * std::numbers::pi * kI * static_cast<double>(k);
    Complex u = s + std::log(2.0 * lambda_a) + shift;
    for (int it = 0; it < 30; ++it) {
      if (std::abs(u) < 1e-12) break;
      u = s + std::log(2.0 * lambda_a / (1.0 + s / u)) + shift;
    }
    if (finite(u)) out.push_back(u * u - s * s);
  }
  // Small-s seeds from cosh u = c, both signs of acosh.
  for (Complex c : {lambda_a * std::exp(s), lambda_a * std::exp(s) / (1.0 + s)}) {
    const Complex a = std::acosh(c);
    for (int k = -branches; k <= branches; ++k) {
      const Complex shift = 2.0 * std::numbers::pi * kI * static_cast<double>(k);
      for (Complex u : {a + shift, -a + shift}) {
        if (finite(u)) out.push_back(u * u - s * s);
      }
    }
  }
  return out;
}

// Roots of sum_k c_k z^k from the balanced companion matrix.
std::vector<Complex> companion_roots(const Eigen::VectorXcd& c) {
  const Eigen::Index n = c.size() - 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) m(i, n - 1) = -c(i) / c(n);
  // Parlett-Reinsch balancing with powers of two.
  for (bool done = false; !done;) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double col = m.col(i).cwiseAbs().sum() - std::abs(m(i, i));
      const double row = m.row(i).cwiseAbs().sum() - std::abs(m(i, i));
      if (col == 0.0 || row == 0.0) continue;
      double f = 1.0;
      double cc = col, rr = row;
      while (cc < rr / 2.0) { cc *= 2.0; rr /= 2.0; f *= 2.0; }
      while (cc >= rr * 2.0) { cc /= 2.0; rr *= 2.0; f /= 2.0; }
      if ((cc + rr) < 0.95 * (col + row)) {
        done = false;
        m.col(i) *= f;
        m.row(i) /= f;
      }
    }
  }
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(m, false);
  std::vector<Complex> out;
  if (schur.info() != Eigen::Success) return out;
  const auto& t = schur.matrixT();
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(t(i, i));
  return out;
}

std::vector<Complex> series_roots_in_w(Complex lambda_a, double s, int degree, double scale) {
  // sum_n w^n (1/(2n)! + s/(2n+1)!) - lambda_a e^s, with w = scale * z.
  Eigen::VectorXcd coeffs(degree + 1);
  double log_fact = 0.0;  // log (2n)!
  for (int n = 0; n <= degree; ++n) {
    if (n > 0) log_fact += std::log(2.0 * n - 1.0) + std::log(2.0 * n);
    const double mag = std::exp(n * std::log(scale) - log_fact);
    coeffs(n) = mag * (1.0 + s / (2.0 * n + 1.0));
  }
  coeffs(0) -= lambda_a * std::exp(s);
  int top = degree;
  const double cmax = coeffs.cwiseAbs().maxCoeff();
  while (top > 0 && std::abs(coeffs(top)) < 1e-290 * cmax) --top;
  if (top == 0) return {};
  std::vector<Complex> out;
  for (Complex z : companion_roots(coeffs.head(top + 1))) {
    const Complex w = scale * z;
    if (finite(w)) out.push_back(w);
  }
  return out;
}

// Variable scaling that keeps the leading coefficient of order one.
double series_scale(int degree, double s) {
  const double r = 2.0 * degree / std::numbers::e;
  return std::max(r * r, s * s);
}

// Smallest degree whose first neglected term is below 1e-17 of the
// right-hand side at radius |w| = radius.
int effective_degree(int n0, double radius, double s, Complex lambda_a) {
  const double rhs = std::log(std::max(std::abs(lambda_a), 1e-300)) + s;
  const double target = std::min(rhs, 0.0) + std::log(1e-17);
  for (int n = n0; n <= 4 * n0; ++n) {
    const double log_term = n * std::log(std::max(radius, 1e-300)) - std::lgamma(2.0 * n + 1.0);
    if (log_term < target) return n;
  }
  return 4 * n0;
}

void check_tau(double tau_mem) {
  if (!(tau_mem > 0.0) || !std::isfinite(tau_mem)) {
    throw Error(ErrorCode::kInvalidParams, "memory time must be positive");
  }
}

SuperOperator assemble(const SpectralDecomposition& dec, const std::vector<Complex>& coeff) {
  const int d = dec.hdim * dec.hdim;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t a = 0; a < coeff.size(); ++a) {
    if (coeff[a] != 0.0) m += coeff[a] * dec.components[a].projector.matrix;
  }
  return SuperOperator(dec.hdim, m);
}

bool is_real_kind(const SpectralComponent& c) {
  return c.kind == EigenKind::kReal || c.kind == EigenKind::kUnit;
}

}  // namespace

Complex h_function(Complex lambda_k, double tau_mem, double t) {
  check_tau(tau_mem);
  if (t == 0.0) return 1.0;
  return h_scaled(t / (2.0 * tau_mem), lambda_k * t * t);
}

Complex h_derivative(Complex lambda_k, double tau_mem, double t) {
  check_tau(tau_mem);
  if (t == 0.0) return 0.0;
  return lambda_k * t * pieces(t / (2.0 * tau_mem), lambda_k * t * t).ss;
}

double integrodifferential_residual(Complex lambda_k, double tau_mem,
                                    const std::vector<double>& grid,
                                    const std::function<Complex(double)>& h,
                                    const std::function<Complex(double)>& dh) {
  using boost::math::quadrature::gauss_kronrod;
  double worst = 0.0;
  for (double t : grid) {
    Complex rhs = 0.0;
    if (t > 0.0) {
      auto part = [&](double s, bool imag) {
        const Complex v = std::exp((s - t) / tau_mem) * lambda_k * h(s);
        return imag ? v.imag() : v.real();
      };
      const double re = gauss_kronrod<double, 31>::integrate(
          [&](double s) { return part(s, false); }, 0.0, t, 20, 1e-14);
      const double im = gauss_kronrod<double, 31>::integrate(
          [&](double s) { return part(s, true); }, 0.0, t, 20, 1e-14);
      rhs = {re, im};
    }
    worst = std::max(worst, std::abs(dh(t) - rhs));
  }
  return worst;
}

double verify_h_integrodifferential(Complex lambda_k, double tau_mem,
                                    const std::vector<double>& grid) {
  return integrodifferential_residual(
      lambda_k, tau_mem, grid, [&](double t) { return h_function(lambda_k, tau_mem, t); },
      [&](double t) { return h_derivative(lambda_k, tau_mem, t); });
}

std::vector<Complex> truncated_series_roots(Complex lambda_a, double tau_mem, double period,
                                            int n0) {
  check_tau(tau_mem);
  if (n0 < 1) throw Error(ErrorCode::kInvalidParams, "series cutoff must be positive");
  const double s = period / (2.0 * tau_mem);
  const double scale = series_scale(n0, s);
  std::vector<Complex> out;
  const double gamma_sq = 1.0 / (4.0 * tau_mem * tau_mem);
  for (Complex w : series_roots_in_w(lambda_a, s, n0, scale)) {
    out.push_back(w / (period * period) - gamma_sq);
  }
  return out;
}

std::vector<Complex> solve_lambda_k(Complex lambda_a, double tau_mem, double period, int n0) {
  check_tau(tau_mem);
  if (!(period > 0.0)) throw Error(ErrorCode::kInvalidParams, "period must be positive");
  if (n0 < 1) throw Error(ErrorCode::kInvalidParams, "series cutoff must be positive");
  const double s = period / (2.0 * tau_mem);

  const bool real_target = lambda_a.imag() == 0.0;
  std::vector<Complex> found;
  auto accept = [&](Complex ell) {
    if (real_target && std::abs(ell.imag()) <= 1e-8 * std::max(1.0, std::abs(ell))) {
      const Complex snapped = ell.real();
      if (std::abs(h_scaled(s, snapped) - lambda_a) <= 1e-8) ell = snapped;
    }
    if (std::abs(h_scaled(s, ell) - lambda_a) > 1e-8) return;
    for (Complex f : found) {
      if (std::abs(f - ell) <= 1e-7 * std::max(1.0, std::abs(ell))) return;
    }
    found.push_back(ell);
  };

  // Closed-form seeds cover one root per 2 pi i branch of u; the truncated
  // series only runs when they leave a branch uncovered.
  constexpr int kBranches = 4;
  const std::vector<Complex> seeds = branch_seeds(lambda_a, s, kBranches);
  for (Complex seed : seeds) {
    if (auto ell = polish(seed, s, lambda_a)) accept(*ell);
  }
  if (found.size() < 2 * kBranches + 1) {
    double radius = s * s;
    for (Complex ell : seeds) radius = std::max(radius, std::abs(s * s + ell));
    const int degree = effective_degree(n0, radius, s, lambda_a);
    for (Complex w : series_roots_in_w(lambda_a, s, degree, series_scale(degree, s))) {
      if (auto ell = polish(w - s * s, s, lambda_a)) accept(*ell);
    }
  }
  if (found.empty()) {
    throw Error(ErrorCode::kNoConvergedRoot, "no kernel eigenvalue satisfies h(T) = lambda");
  }

  const double t2 = period * period;
  std::vector<Complex> out;
  out.reserve(found.size());
  for (Complex ell : found) out.push_back(ell / t2);
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    const double ia = std::abs(a.imag()), ib = std::abs(b.imag());
    if (ia != ib) return ia < ib;
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a.imag() > b.imag();
  });
  return out;
}

std::optional<KernelSpec> build_kernel_lindbladian(const SpectralDecomposition& dec,
                                                   double tau_mem, double period,
                                                   const KernelOptions& options, bool* cap_hit) {
  check_tau(tau_mem);
  if (options.candidates_per_eigenvalue < 1) {
    throw Error(ErrorCode::kInvalidParams, "candidate cap must be positive");
  }
  if (!dec.hermiticity_preserving) {
    throw Error(ErrorCode::kDefectiveDecomposition, "map does not preserve Hermiticity");
  }
  for (const auto& c : dec.components) {
    if (c.kind == EigenKind::kUnpaired) {
      throw Error(ErrorCode::kDefectiveDecomposition, "complex eigenvalue without partner");
    }
  }
  const std::size_t cap = static_cast<std::size_t>(options.candidates_per_eigenvalue);

  // One group per real component or conjugate pair; the group's choice
  // fixes lambda_K on its member(s).
  struct Group {
    int first = -1;
    int second = -1;
    std::vector<Complex> choices;
  };
  std::vector<Group> groups;
  bool truncated = false;
  const auto n_comp = dec.components.size();
  for (std::size_t a = 0; a < n_comp; ++a) {
    const auto& comp = dec.components[a];
    if (comp.kind == EigenKind::kUnit) continue;
    if (comp.kind == EigenKind::kPairMember && !comp.upper_member) continue;
    Group g;
    g.first = static_cast<int>(a);
    g.second = comp.kind == EigenKind::kPairMember ? comp.partner : -1;
    std::vector<Complex> roots;
    try {
      roots = solve_lambda_k(comp.eigenvalue, tau_mem, period, options.n0);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNoConvergedRoot) return std::nullopt;
      throw;
    }
    for (Complex r : roots) {
      if (is_real_kind(comp) && r.imag() != 0.0) continue;
      if (g.choices.size() == cap) {
        truncated = true;
        break;
      }
      g.choices.push_back(r);
    }
    if (g.choices.empty()) return std::nullopt;
    groups.push_back(std::move(g));
  }

  // All combinations, ordered by total |Im lambda_K| then lexicographically.
  std::vector<std::vector<int>> combos(1);
  for (const auto& g : groups) {
    std::vector<std::vector<int>> next;
    for (const auto& c : combos) {
      for (int k = 0; k < static_cast<int>(g.choices.size()); ++k) {
        auto e = c;
        e.push_back(k);
        next.push_back(std::move(e));
      }
    }
    combos = std::move(next);
  }
  auto weight = [&](const std::vector<int>& c) {
    double w = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      w += std::abs(groups[i].choices[static_cast<std::size_t>(c[i])].imag());
    }
    return w;
  };
  std::stable_sort(combos.begin(), combos.end(),
                   [&](const auto& a, const auto& b) { return weight(a) < weight(b); });

  for (const auto& combo : combos) {
    std::vector<Complex> lk(n_comp, 0.0);
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const Complex v = groups[i].choices[static_cast<std::size_t>(combo[i])];
      lk[static_cast<std::size_t>(groups[i].first)] = v;
      if (groups[i].second >= 0) lk[static_cast<std::size_t>(groups[i].second)] = std::conj(v);
    }
    SuperOperator l_k = assemble(dec, lk);
    if (!preserves_hermiticity(l_k) || !annihilates_trace(l_k)) continue;
    if (!is_ccp(l_k, options.ccp_tol).ok) continue;
    KernelSpec spec;
    spec.tau_mem = tau_mem;
    spec.l_k = std::move(l_k);
    spec.residuals.reserve(n_comp);
    for (std::size_t a = 0; a < n_comp; ++a) {
      spec.residuals.push_back(
          std::abs(h_function(lk[a], tau_mem, period) - dec.components[a].eigenvalue));
    }
    spec.lambda_k = std::move(lk);
    if (cap_hit) *cap_hit = false;
    return spec;
  }
  if (cap_hit) *cap_hit = truncated;
  return std::nullopt;
}

KernelReport minimal_memory_time(const SpectralDecomposition& dec, double period,
                                 const MemoryScanOptions& options) {
  if (options.grid_points < 2 || !(options.tau_lo > 0.0) || !(options.tau_hi > options.tau_lo) ||
      !(options.refine_tol > 0.0) || !(period > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "invalid memory-time scan");
  }
  KernelReport report;
  report.resolution_floor = options.tau_lo * period;

  auto evaluate = [&](double tau) {
    bool cap = false;
    auto spec = build_kernel_lindbladian(dec, tau, period, options.kernel, &cap);
    report.candidate_cap_hit = report.candidate_cap_hit || cap;
    return spec;
  };

  const int n = options.grid_points;
  const double ratio = options.tau_hi / options.tau_lo;
  int first_valid = -1;
  std::optional<KernelSpec> first_spec;
  for (int i = 0; i < n; ++i) {
    const double tau = period * options.tau_lo * std::pow(ratio, static_cast<double>(i) / (n - 1));
    auto spec = evaluate(tau);
    report.scan.push_back({tau, spec.has_value()});
    if (spec && first_valid < 0) {
      first_valid = i;
      first_spec = std::move(spec);
      if (!options.full_scan) break;
    }
  }
  if (first_valid < 0) {
    throw Error(ErrorCode::kNoValidKernelInRange, "no memory time in the scan admits a kernel");
  }
  if (first_valid == 0) {
    report.tau_min = 0.0;
    report.spec_at_tau_min = std::move(first_spec);
    return report;
  }

  double lo = report.scan[static_cast<std::size_t>(first_valid - 1)].tau;
  double hi = report.scan[static_cast<std::size_t>(first_valid)].tau;
  const double tol = options.refine_tol * period;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    auto spec = evaluate(mid);
    report.refinement.push_back({mid, spec.has_value()});
    if (spec) {
      hi = mid;
      first_spec = std::move(spec);
    } else {
      lo = mid;
    }
  }
  report.tau_min = hi;
  report.tau_invalid_below = lo;
  report.spec_at_tau_min = std::move(first_spec);
  return report;
}

SuperOperator kernel_map_at(const KernelSpec& spec, const SpectralDecomposition& dec,
                            double period, double t) {
  if (spec.lambda_k.size() != dec.components.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "kernel spec does not match decomposition");
  }
  if (!(t >= 0.0) || !(period > 0.0)) throw Error(ErrorCode::kInvalidParams, "negative time");
  auto within = [&](double s) {
    std::vector<Complex> h(spec.lambda_k.size());
    for (std::size_t a = 0; a < h.size(); ++a) h[a] = h_function(spec.lambda_k[a], spec.tau_mem, s);
    return assemble(dec, h);
  };
  const double cycles = std::floor(t / period);
  double rest = t - cycles * period;
  if (rest < 0.0) rest = 0.0;
  SuperOperator out = within(rest);
  if (cycles > 0.0) {
    const SuperOperator full = within(period);
    for (long k = 0; k < static_cast<long>(cycles); ++k) out = out * full;
  }
  return out;
}

MapTrajectory kernel_evolution(const KernelSpec& spec, const SpectralDecomposition& dec,
                               double period, double t_end, int samples) {
  if (samples < 2 || !(t_end > 0.0)) throw Error(ErrorCode::kInvalidParams, "invalid sampling");
  MapTrajectory traj;
  for (int i = 0; i < samples; ++i) {
    const double t = t_end * static_cast<double>(i) / (samples - 1);
    traj.times.push_back(t);
    traj.maps.push_back(kernel_map_at(spec, dec, period, t));
  }
  return traj;
}

double kernel_trajectory_min_choi(const KernelSpec& spec, const SpectralDecomposition& dec,
                                  double period, double t_end, int samples) {
  const MapTrajectory traj = kernel_evolution(spec, dec, period, t_end, samples);
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& m : traj.maps) {
    lowest = std::min(lowest, min_hermitian_eigenvalue(choi(m).matrix));
  }
  return lowest;
}

}  // namespace floq
