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

#include <span>
#include <utility>
#include <vector>

#include "floq/superop.hpp"

namespace floq {

enum class EigenKind {
  kUnit,         // the steady-state cluster, lambda = 1
  kReal,         // real eigenvalue (positive, or negative without partner)
  kPairMember,   // member of a complex-conjugate pair
  kUnpaired,     // complex eigenvalue without conjugate partner
};

struct SpectralComponent {
  Complex eigenvalue;
  int multiplicity = 1;
  /// Spectral projector M_a of the (possibly clustered) eigenvalue.
  SuperOperator projector;
  EigenKind kind = EigenKind::kReal;
  /// Index of the conjugate partner component, or -1.
  int partner = -1;
  /// Split out of a degenerate negative real eigenvalue; the upper member
  /// takes the +i*pi logarithm.
  bool negative_pair = false;
  /// First member (c rather than c-bar) of its conjugate pair.
  bool upper_member = false;
};

struct SpectralOptions {
  double pair_tol = 1e-8;
  /// Eigenvalues closer than cluster_rel_tol * spectral radius share one
  /// projector.
  double cluster_rel_tol = 1e-8;
  double unit_tol = 1e-8;
  double max_condition = 1e8;
  /// Throw UnpairedNegativeEigenvalue instead of flagging it.
  bool strict_pairing = false;
};

/// P = sum_a lambda_a M_a with biorthonormal projectors and conjugate-pair
/// bookkeeping.
struct SpectralDecomposition {
  int hdim = 0;
  std::vector<SpectralComponent> components;
  /// (c, c-bar) component indices; c has positive imaginary part or is the
  /// +i*pi member of a negative pair.
  std::vector<std::pair<int, int>> pairs;
  bool unpaired_negative = false;
  bool has_negative_pair = false;
  bool hermiticity_preserving = false;
  double condition_number = 1.0;

  int n_c() const { return static_cast<int>(pairs.size()); }
  int unit_index() const;
  std::vector<Complex> eigenvalues() const;
  SuperOperator reconstruct() const;
  /// M_c - M_c-bar for pair c.
  SuperOperator pair_difference(int pair) const;
};

/// Throws DefectiveMap when the eigenvector matrix is ill-conditioned.
SpectralDecomposition spectral_decompose(const SuperOperator& map,
                                         const SpectralOptions& options = {});

/// Logarithm used for component a: principal branch with the conjugate
/// member mirrored and the negative-pair members at +i*pi / -i*pi.
Complex component_log(const SpectralDecomposition& dec, int component);

/// S_x = (1/T) [sum_a Log(lambda_a) M_a + sum_c 2 pi i x_c (M_c - M_cbar)].
SuperOperator branch_generator(const SpectralDecomposition& dec, std::span<const int> branch,
                               double period);

}  // namespace floq
