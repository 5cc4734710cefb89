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

#include "floq/markovianity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "floq/errors.hpp"

namespace floq {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXcd project(const Eigen::MatrixXcd& q_perp, const SuperOperator& s) {
  const Eigen::MatrixXcd block = q_perp.adjoint() * choi(s).matrix * q_perp;
  return 0.5 * (block + block.adjoint());
}

}  // namespace

Eigen::MatrixXcd SpectrahedronProblem::at(std::span<const int> branch) const {
  if (branch.size() != vc.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "branch index length differs from n_c");
  }
  Eigen::MatrixXcd v = v0;
  for (std::size_t c = 0; c < vc.size(); ++c) v += static_cast<double>(branch[c]) * vc[c];
  return v;
}

double SpectrahedronProblem::min_eigenvalue(std::span<const int> branch) const {
  return min_hermitian_eigenvalue(at(branch));
}

bool check_condition_i(const SpectralDecomposition& dec) {
  if (!dec.hermiticity_preserving || dec.unpaired_negative) return false;
  return std::none_of(dec.components.begin(), dec.components.end(),
                      [](const auto& c) { return c.kind == EigenKind::kUnpaired; });
}

SpectrahedronProblem build_spectrahedron(const SpectralDecomposition& dec, double period) {
  const int n = dec.hdim;
  const Eigen::MatrixXcd q_perp = omega_adapted_basis(n).rightCols(n * n - 1);
  SpectrahedronProblem problem;
  problem.hdim = n;
  const BranchIndex zero(static_cast<std::size_t>(dec.n_c()), 0);
  problem.v0 = project(q_perp, branch_generator(dec, zero, period));
  for (int c = 0; c < dec.n_c(); ++c) {
    const SuperOperator shift = (2.0 * std::numbers::pi / period) * kI * dec.pair_difference(c);
    problem.vc.push_back(project(q_perp, shift));
  }
  return problem;
}

std::vector<BranchIndex> enumerate_branches(int n_c, int x_max) {
  if (n_c < 0 || x_max < 0) throw Error(ErrorCode::kInvalidParams, "negative branch bounds");
  const double count = std::pow(2.0 * x_max + 1.0, n_c);
  if (count > 5e6) throw Error(ErrorCode::kInvalidParams, "branch box too large to scan");
  std::vector<BranchIndex> out;
  out.reserve(static_cast<std::size_t>(count));
  BranchIndex x(static_cast<std::size_t>(n_c), -x_max);
  while (true) {
    out.push_back(x);
    int c = n_c - 1;
    while (c >= 0 && x[c] == x_max) x[c--] = -x_max;
    if (c < 0) break;
    ++x[c];
  }
  auto inf_norm = [](const BranchIndex& b) {
    int m = 0;
    for (int v : b) m = std::max(m, std::abs(v));
    return m;
  };
  std::stable_sort(out.begin(), out.end(), [&](const BranchIndex& a, const BranchIndex& b) {
    const int na = inf_norm(a);
    const int nb = inf_norm(b);
    if (na != nb) return na < nb;
    return a < b;
  });
  return out;
}

double mu_of_branch(const SpectrahedronProblem& problem, std::span<const int> branch) {
  const double lo = problem.min_eigenvalue(branch);
  return static_cast<double>(problem.hdim * problem.hdim) * std::max(0.0, -lo);
}

MuResult mu_min(const SpectralDecomposition& dec, double period, int x_max) {
  if (!check_condition_i(dec)) {
    throw Error(ErrorCode::kUnpairedNegativeEigenvalue, "condition (i) fails; no Hermitian branch");
  }
  const SpectrahedronProblem problem = build_spectrahedron(dec, period);
  MuResult best{kInf, {}, false};
  for (const auto& x : enumerate_branches(dec.n_c(), x_max)) {
    const double mu = mu_of_branch(problem, x);
    if (mu < best.mu) best = {mu, x, false};
  }
  for (int v : best.branch) best.at_bound = best.at_bound || std::abs(v) == x_max;
  if (best.mu == 0.0) best.at_bound = false;
  return best;
}

namespace {

// Choi matrix of id + eps S in the Omega-adapted basis:
// [[1 + eps a, eps b^dag], [eps b, eps V]] with K = [[a, b^dag], [b, V]].
struct ChoiBlocks {
  double a = 0.0;
  Eigen::VectorXcd b;
  Eigen::MatrixXcd v;
  double trace = 0.0;
};

ChoiBlocks choi_blocks(const SuperOperator& generator) {
  const Eigen::MatrixXcd q = omega_adapted_basis(generator.hdim);
  Eigen::MatrixXcd k = q.adjoint() * choi(generator).matrix * q;
  k = 0.5 * (k + k.adjoint()).eval();
  const Eigen::Index m = k.rows() - 1;
  ChoiBlocks out;
  out.a = k(0, 0).real();
  out.b = k.bottomLeftCorner(m, 1);
  out.v = k.bottomRightCorner(m, m);
  out.trace = k.trace().real();
  return out;
}

// The small eigenvalues of the Choi matrix of id + eps S are eps * nu with
// nu an eigenvalue of V - eps b b^dag / (1 + eps (a - nu)) (Schur complement
// of the leading entry). Solving for nu directly avoids the cancellation in
// ||.||_1 - 1. Returns nu in ascending order.
Eigen::VectorXd scaled_small_eigenvalues(const ChoiBlocks& k, double eps) {
  const Eigen::MatrixXcd bb = k.b * k.b.adjoint();
  auto spectrum = [&](double nu) {
    const Eigen::MatrixXcd w = k.v - (eps / (1.0 + eps * (k.a - nu))) * bb;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (w + w.adjoint()),
                                                      Eigen::EigenvaluesOnly);
    return Eigen::VectorXd(es.eigenvalues());
  };
  Eigen::VectorXd nu = spectrum(0.0);
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    double x = nu(i);
    for (int it = 0; it < 100; ++it) {
      const double next = spectrum(x)(i);
      const bool done = std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x));
      x = next;
      if (done) break;
    }
    nu(i) = x;
  }
  std::sort(nu.data(), nu.data() + nu.size());
  return nu;
}

}  // namespace

double d_rhp(const SuperOperator& generator, std::span<const double> eps_ladder) {
  if (eps_ladder.empty()) throw Error(ErrorCode::kInvalidParams, "empty epsilon ladder");
  for (double e : eps_ladder) {
    if (!(e > 0.0)) throw Error(ErrorCode::kInvalidParams, "epsilon ladder must be positive");
  }
  if (!preserves_hermiticity(generator, 1e-9)) {
    throw Error(ErrorCode::kNotHermiticityPreserving, "d_RHP needs a Hermiticity-preserving map");
  }
  const ChoiBlocks k = choi_blocks(generator);
  const Eigen::VectorXd v0 = scaled_small_eigenvalues(k, 0.0);
  const double scale = std::max(1.0, v0.cwiseAbs().maxCoeff());
  const double zero_tol = 1e-13 * scale;

  // Shrink the ladder until eps b b^dag is a small perturbation of V relative
  // to the spacing of its eigenvalues and their distance from zero, so that
  // (||.||_1 - 1) / eps is smooth on the ladder and the extrapolation is valid.
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < v0.size(); ++i) {
    if (std::abs(v0(i)) > zero_tol) gap = std::min(gap, std::abs(v0(i)));
    for (Eigen::Index j = i + 1; j < v0.size(); ++j) {
      const double d = std::abs(v0(i) - v0(j));
      if (d > zero_tol) gap = std::min(gap, d);
    }
  }
  std::vector<double> eps(eps_ladder.begin(), eps_ladder.end());
  const double k_norm = std::max({std::abs(k.a), k.b.norm(), k.v.norm(), 1e-300});
  const double coupling = std::max(k.b.squaredNorm(), 1e-300);
  for (int shrink = 0; shrink < 40; ++shrink) {
    const double top = *std::max_element(eps.begin(), eps.end());
    if (top * k_norm <= 0.25 && top * coupling <= 1e-3 * gap) break;
    for (double& e : eps) e *= 0.1;
  }

  std::vector<double> table;
  for (double e : eps) {
    const Eigen::VectorXd nu = scaled_small_eigenvalues(k, e);
    double negative = 0.0;
    for (Eigen::Index i = 0; i < nu.size(); ++i) negative += std::max(0.0, -nu(i));
    table.push_back(k.trace + 2.0 * negative);
  }
  // Neville's scheme: repeated linear extrapolation in eps towards 0.
  const std::size_t m = table.size();
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      const double ea = eps[i];
      const double eb = eps[i + level];
      table[i] = (ea * table[i + 1] - eb * table[i]) / (ea - eb);
    }
  }
  const double value = table[0];
  return value < 1e-7 ? 0.0 : value;
}

Extraction extract_hamiltonian_jumps(const SuperOperator& lindbladian) {
  const int n = lindbladian.hdim;
  const int d = n * n;
  const double scale = std::max(1.0, lindbladian.matrix.norm());
  if (!preserves_hermiticity(lindbladian, 1e-9) || !annihilates_trace(lindbladian, 1e-8 * scale)) {
    throw Error(ErrorCode::kNotLindbladian, "generator is not Hermiticity- and trace-preserving");
  }
  if (!is_ccp(lindbladian).ok) {
    throw Error(ErrorCode::kNotLindbladian, "generator is not conditionally completely positive");
  }

  const Eigen::MatrixXcd q = omega_adapted_basis(n);
  const Eigen::MatrixXcd c = q.adjoint() * choi(lindbladian).matrix * q;

  // First column below the corner is -(kappa (x) 1)|Omega> restricted to the
  // complement; kappa's traceless part follows directly.
  const Eigen::VectorXcd w = -(q.rightCols(d - 1) * c.col(0).tail(d - 1));
  OperatorMatrix kappa(n, n);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) kappa(a, i) = root_n * w(a * n + i);
  const OperatorMatrix h = Complex(0.0, -0.5) * (kappa - kappa.adjoint());

  Eigen::MatrixXcd phi = c.bottomRightCorner(d - 1, d - 1);
  phi = 0.5 * (phi + phi.adjoint());
  const ChoiMatrix phi_choi{n, q.rightCols(d - 1) * phi * q.rightCols(d - 1).adjoint()};
  std::vector<OperatorMatrix> jumps = kraus_vectors_from_choi(phi_choi, 1e-9);

  Extraction out{0.5 * (h + h.adjoint()), std::move(jumps), 0.0};
  out.residual = distance(lindbladian_matrix(out.hamiltonian, out.jumps), lindbladian);
  if (out.residual > 1e-6 * scale) {
    throw Error(ErrorCode::kExtractionResidual,
                "reassembled Lindbladian differs by " + std::to_string(out.residual));
  }
  return out;
}

MarkovReport find_floquet_lindbladian(const SuperOperator& one_cycle_map, double period,
                                      const MarkovOptions& options) {
  return find_floquet_lindbladian(spectral_decompose(one_cycle_map, options.spectral), period,
                                  options);
}

MarkovReport find_floquet_lindbladian(const SpectralDecomposition& dec, double period,
                                      const MarkovOptions& options) {
  MarkovReport report;
  report.x_max = options.x_max;
  report.n_c = dec.n_c();
  report.negative_pair = dec.has_negative_pair;
  report.hermiticity_ok = check_condition_i(dec);
  if (!report.hermiticity_ok) {
    report.exists = false;
    report.mu_min = kInf;
    report.d_rhp = kInf;
    return report;
  }

  const SpectrahedronProblem problem = build_spectrahedron(dec, period);
  const int n2 = dec.hdim * dec.hdim;
  double best_mu = kInf;
  BranchIndex best_branch;
  for (const auto& x : enumerate_branches(dec.n_c(), options.x_max)) {
    const double lo = problem.min_eigenvalue(x);
    if (lo >= -options.psd_tol) {
      report.exists = true;
      best_branch = x;
      best_mu = 0.0;
      break;
    }
    const double mu = n2 * std::max(0.0, -lo);
    if (mu < best_mu) {
      best_mu = mu;
      best_branch = x;
    }
  }
  report.mu_min = best_mu;
  report.best_branch = best_branch;
  if (!report.exists) {
    for (int v : best_branch) report.bound_hit = report.bound_hit || std::abs(v) == options.x_max;
  }

  SuperOperator generator = branch_generator(dec, best_branch, period);
  if (options.compute_d_rhp) report.d_rhp = d_rhp(generator, options.eps_ladder);
  if (report.exists) {
    report.floquet_lindbladian = generator;
    if (options.extract) {
      Extraction ex = extract_hamiltonian_jumps(generator);
      report.h_f = std::move(ex.hamiltonian);
      report.jumps_f = std::move(ex.jumps);
    }
  }
  report.closest_generator = std::move(generator);
  return report;
}

}  // namespace floq
