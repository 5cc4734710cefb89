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

#include <optional>
#include <span>
#include <vector>

#include "floq/spectral.hpp"
#include "floq/superop.hpp"

namespace floq {

using BranchIndex = std::vector<int>;

/// Linear matrix inequality V(x) = V0 + sum_c x_c V_c >= 0 on the range of
/// Pi = 1 - |Omega><Omega|, expressed in an orthonormal basis of that range.
struct SpectrahedronProblem {
  int hdim = 0;
  Eigen::MatrixXcd v0;
  std::vector<Eigen::MatrixXcd> vc;

  Eigen::MatrixXcd at(std::span<const int> branch) const;
  double min_eigenvalue(std::span<const int> branch) const;
};

struct MarkovOptions {
  int x_max = 20;
  double psd_tol = 1e-9;
  std::vector<double> eps_ladder{1e-3, 1e-4, 1e-5};
  SpectralOptions spectral;
  /// Run Hamiltonian / jump extraction when a Floquet Lindbladian exists.
  bool extract = true;
  /// Skip the trace-norm measure (it is only needed for reporting).
  bool compute_d_rhp = true;
};

struct MuResult {
  double mu = 0.0;
  BranchIndex branch;
  /// The minimizing branch touches |x_c| = x_max, so a better branch may lie
  /// outside the scanned box.
  bool at_bound = false;
};

struct Extraction {
  OperatorMatrix hamiltonian;
  std::vector<OperatorMatrix> jumps;
  double residual = 0.0;
};

struct MarkovReport {
  bool hermiticity_ok = false;
  bool exists = false;
  std::optional<BranchIndex> best_branch;
  double mu_min = 0.0;
  double d_rhp = 0.0;
  std::optional<SuperOperator> floquet_lindbladian;
  std::optional<OperatorMatrix> h_f;
  std::optional<std::vector<OperatorMatrix>> jumps_f;

  int n_c = 0;
  int x_max = 0;
  bool bound_hit = false;
  bool negative_pair = false;
  /// Generator of the branch closest to Markovianity (equal to the Floquet
  /// Lindbladian when one exists). Absent when condition (i) fails.
  std::optional<SuperOperator> closest_generator;
};

/// Hermiticity preservation of every branch: no negative real eigenvalue is
/// left without a degenerate partner and all complex eigenvalues are paired.
bool check_condition_i(const SpectralDecomposition& dec);

SpectrahedronProblem build_spectrahedron(const SpectralDecomposition& dec, double period);

/// Every x in [-x_max, x_max]^n, ordered by max-norm then lexicographically.
std::vector<BranchIndex> enumerate_branches(int n_c, int x_max);

/// mu(x) = N^2 max(0, -lambda_min(V(x))).
double mu_of_branch(const SpectrahedronProblem& problem, std::span<const int> branch);

MuResult mu_min(const SpectralDecomposition& dec, double period, int x_max = 20);

/// lim (||choi(1 + eps S)||_1 - 1) / eps, extrapolated from eps_ladder.
double d_rhp(const SuperOperator& generator,
             std::span<const double> eps_ladder = std::vector<double>{1e-3, 1e-4, 1e-5});

/// Splits a Lindbladian into a traceless Hamiltonian and jump operators.
Extraction extract_hamiltonian_jumps(const SuperOperator& lindbladian);

MarkovReport find_floquet_lindbladian(const SuperOperator& one_cycle_map, double period,
                                      const MarkovOptions& options = {});

MarkovReport find_floquet_lindbladian(const SpectralDecomposition& dec, double period,
                                      const MarkovOptions& options = {});

}  // namespace floq
