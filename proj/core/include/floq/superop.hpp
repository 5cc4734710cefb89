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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace floq {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

/// N x N operator on the system Hilbert space (density matrices, Hamiltonians,
/// jump operators). Hermiticity, tracelessness and positivity are predicates,
/// not construction constraints.
using OperatorMatrix = Eigen::MatrixXcd;

/// Linear map on operators in the column-stacking convention: entry (i, j) of
/// an operator sits at index j * N + i of its vectorized form.
struct SuperOperator {
  int hdim = 0;
  Eigen::MatrixXcd matrix;

  SuperOperator() = default;
  SuperOperator(int hdim, Eigen::MatrixXcd matrix);

  static SuperOperator identity(int hdim);
  static SuperOperator zero(int hdim);

  int dim() const { return hdim * hdim; }
  OperatorMatrix apply(const OperatorMatrix& op) const;

  SuperOperator& operator+=(const SuperOperator& other);
  SuperOperator& operator-=(const SuperOperator& other);
  SuperOperator& operator*=(Complex scale);
};

SuperOperator operator+(SuperOperator lhs, const SuperOperator& rhs);
SuperOperator operator-(SuperOperator lhs, const SuperOperator& rhs);
SuperOperator operator*(SuperOperator lhs, const SuperOperator& rhs);
SuperOperator operator*(Complex scale, SuperOperator op);
SuperOperator operator*(double scale, SuperOperator op);

/// (S (x) id)|Omega><Omega| with the normalized maximally entangled state
/// |Omega> = N^{-1/2} sum_i |ii>. Row index a * N + i pairs system index a with
/// ancilla index i. A CP-T map has a unit-trace positive Choi matrix.
struct ChoiMatrix {
  int hdim = 0;
  Eigen::MatrixXcd matrix;
};

struct PositivityCheck {
  bool ok = false;
  double min_eigenvalue = 0.0;
};

ComplexVector vectorize(const OperatorMatrix& op);
OperatorMatrix devectorize(const ComplexVector& vec, int hdim);

OperatorMatrix pauli_x();
OperatorMatrix pauli_y();
OperatorMatrix pauli_z();
/// sigma_- = |1><0| = (sigma_x - i sigma_y) / 2, lowering the sigma_z eigenvalue.
OperatorMatrix sigma_minus();

bool is_hermitian(const OperatorMatrix& op, double tol = 1e-10);

/// Matrix of rho -> -i[H, rho] + sum_i (A_i rho A_i^dag - 1/2 {A_i^dag A_i, rho}).
SuperOperator lindbladian_matrix(const OperatorMatrix& hamiltonian,
                                 std::span<const OperatorMatrix> jumps);

/// rho -> tr(rho) 1/N - rho.
SuperOperator depolarizing_generator(int hdim);

/// rho -> U rho U^dag.
SuperOperator unitary_conjugation(const OperatorMatrix& unitary);

ChoiMatrix choi(const SuperOperator& map);
SuperOperator from_choi(const ChoiMatrix& c);

/// Operators K_i with sum_i (K_i (x) id)|Omega><Omega|(K_i (x) id)^dag = C.
/// Eigenvalues in [-tol, tol] are clipped; anything below -tol is rejected.
std::vector<OperatorMatrix> kraus_vectors_from_choi(const ChoiMatrix& c, double tol = 1e-9);

/// exp(t * S) by Pade scaling-and-squaring.
SuperOperator matrix_exp(const SuperOperator& generator, double t);

bool is_trace_preserving(const SuperOperator& map, double tol = 1e-9);
bool annihilates_trace(const SuperOperator& generator, double tol = 1e-9);
bool preserves_hermiticity(const SuperOperator& map, double rel_tol = 1e-10);

PositivityCheck is_completely_positive(const SuperOperator& map, double tol = 1e-9);

/// Conditional complete positivity: Pi choi(S) Pi >= -tol on the range of
/// Pi = 1 - |Omega><Omega|. Throws NotHermiticityPreserving.
PositivityCheck is_ccp(const SuperOperator& generator, double tol = 1e-9);

/// Hermitian part of Pi choi(S) Pi expressed in an orthonormal basis of the
/// range of Pi; an (N^2 - 1) x (N^2 - 1) Hermitian matrix.
Eigen::MatrixXcd projected_choi_block(const SuperOperator& generator);

ComplexVector omega_vector(int hdim);

/// Unitary N^2 x N^2 matrix whose first column is |Omega>; the remaining
/// columns span the orthogonal complement.
Eigen::MatrixXcd omega_adapted_basis(int hdim);

/// Unitary whose columns are vectorized orthonormal Hermitian operators. A
/// Hermiticity-preserving map is real in this basis.
Eigen::MatrixXcd hermitian_operator_basis(int hdim);

/// The map X -> S(X^dag)^dag. A map preserves Hermiticity iff it equals
/// its own conjugate.
SuperOperator conjugate_map(const SuperOperator& map);

double trace_norm_hermitian(const Eigen::MatrixXcd& m);
double min_hermitian_eigenvalue(const Eigen::MatrixXcd& m);

/// Frobenius distance helper used throughout the tolerance checks.
double distance(const SuperOperator& a, const SuperOperator& b);

}  // namespace floq
