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

#include "floq/superop.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "floq/errors.hpp"

namespace floq {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_same_dim(const SuperOperator& a, const SuperOperator& b) {
  if (a.hdim != b.hdim) {
    throw Error(ErrorCode::kDimensionMismatch, "superoperators act on different spaces");
  }
}

}  // namespace

SuperOperator::SuperOperator(int hdim_in, Eigen::MatrixXcd matrix_in)
    : hdim(hdim_in), matrix(std::move(matrix_in)) {
  if (hdim < 1 || matrix.rows() != hdim * hdim || matrix.cols() != hdim * hdim) {
    throw Error(ErrorCode::kDimensionMismatch, "superoperator matrix must be N^2 x N^2");
  }
  if (!matrix.allFinite()) {
    throw Error(ErrorCode::kInvalidParams, "superoperator has non-finite entries");
  }
}

SuperOperator SuperOperator::identity(int hdim) {
  return {hdim, Eigen::MatrixXcd::Identity(hdim * hdim, hdim * hdim)};
}

SuperOperator SuperOperator::zero(int hdim) {
  return {hdim, Eigen::MatrixXcd::Zero(hdim * hdim, hdim * hdim)};
}

OperatorMatrix SuperOperator::apply(const OperatorMatrix& op) const {
  if (op.rows() != hdim || op.cols() != hdim) {
    throw Error(ErrorCode::kDimensionMismatch, "operator does not match superoperator");
  }
  return devectorize(matrix * vectorize(op), hdim);
}

SuperOperator& SuperOperator::operator+=(const SuperOperator& other) {
  require_same_dim(*this, other);
  matrix += other.matrix;
  return *this;
}

SuperOperator& SuperOperator::operator-=(const SuperOperator& other) {
  require_same_dim(*this, other);
  matrix -= other.matrix;
  return *this;
}

SuperOperator& SuperOperator::operator*=(Complex scale) {
  matrix *= scale;
  return *this;
}

SuperOperator operator+(SuperOperator lhs, const SuperOperator& rhs) { return lhs += rhs; }
SuperOperator operator-(SuperOperator lhs, const SuperOperator& rhs) { return lhs -= rhs; }

SuperOperator operator*(SuperOperator lhs, const SuperOperator& rhs) {
  require_same_dim(lhs, rhs);
  lhs.matrix = lhs.matrix * rhs.matrix;
  return lhs;
}

SuperOperator operator*(Complex scale, SuperOperator op) { return op *= scale; }
SuperOperator operator*(double scale, SuperOperator op) { return op *= Complex(scale, 0.0); }

ComplexVector vectorize(const OperatorMatrix& op) {
  // Eigen's default storage is column-major, so the reshaped view is exactly
  // the column-stacking order.
  return op.reshaped();
}

OperatorMatrix devectorize(const ComplexVector& vec, int hdim) {
  if (vec.size() != hdim * hdim) {
    throw Error(ErrorCode::kDimensionMismatch, "vector length must be N^2");
  }
  return vec.reshaped(hdim, hdim);
}

OperatorMatrix pauli_x() {
  OperatorMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

OperatorMatrix pauli_y() {
  OperatorMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

OperatorMatrix pauli_z() {
  OperatorMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

OperatorMatrix sigma_minus() {
  OperatorMatrix m = OperatorMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

bool is_hermitian(const OperatorMatrix& op, double tol) {
  if (op.rows() != op.cols()) return false;
  return (op - op.adjoint()).norm() <= tol * std::max(1.0, op.norm());
}

SuperOperator lindbladian_matrix(const OperatorMatrix& hamiltonian,
                                 std::span<const OperatorMatrix> jumps) {
  const auto n = hamiltonian.rows();
  if (n < 1 || hamiltonian.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "Hamiltonian must be square");
  }
  if (!is_hermitian(hamiltonian)) {
    throw Error(ErrorCode::kNonHermitianHamiltonian, "H differs from H^dag");
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);

  // vec(A X B) = (B^T (x) A) vec(X)
  Eigen::MatrixXcd gen = -kI * (Eigen::kroneckerProduct(id, hamiltonian).eval() -
                               Eigen::kroneckerProduct(hamiltonian.transpose(), id).eval());
  for (const auto& a : jumps) {
    if (a.rows() != n || a.cols() != n) {
      throw Error(ErrorCode::kDimensionMismatch, "jump operator dimension differs from H");
    }
    const Eigen::MatrixXcd ada = a.adjoint() * a;
    gen += Eigen::kroneckerProduct(a.conjugate(), a).eval();
    gen -= 0.5 * Eigen::kroneckerProduct(id, ada).eval();
    gen -= 0.5 * Eigen::kroneckerProduct(ada.transpose(), id).eval();
  }
  return {static_cast<int>(n), std::move(gen)};
}

SuperOperator depolarizing_generator(int hdim) {
  const ComplexVector id = vectorize(OperatorMatrix::Identity(hdim, hdim));
  Eigen::MatrixXcd m = id * id.adjoint() / static_cast<double>(hdim);
  m -= Eigen::MatrixXcd::Identity(hdim * hdim, hdim * hdim);
  return {hdim, std::move(m)};
}

SuperOperator unitary_conjugation(const OperatorMatrix& unitary) {
  const auto n = static_cast<int>(unitary.rows());
  return {n, Eigen::kroneckerProduct(unitary.conjugate(), unitary).eval()};
}

ChoiMatrix choi(const SuperOperator& map) {
  const int n = map.hdim;
  const double norm = 1.0 / n;
  Eigen::MatrixXcd c(n * n, n * n);
  // C[(a,i),(b,j)] = S(E_ij)_ab / N
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < n; ++b)
        for (int j = 0; j < n; ++j)
          c(a * n + i, b * n + j) = map.matrix(b * n + a, j * n + i) * norm;
  return {n, std::move(c)};
}

SuperOperator from_choi(const ChoiMatrix& c) {
  const int n = c.hdim;
  Eigen::MatrixXcd m(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < n; ++b)
        for (int j = 0; j < n; ++j)
          m(b * n + a, j * n + i) = c.matrix(a * n + i, b * n + j) * static_cast<double>(n);
  return {n, std::move(m)};
}

std::vector<OperatorMatrix> kraus_vectors_from_choi(const ChoiMatrix& c, double tol) {
  const int n = c.hdim;
  const Eigen::MatrixXcd herm = 0.5 * (c.matrix + c.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  const auto& vals = es.eigenvalues();
  if (vals.size() > 0 && vals(0) < -tol) {
    throw Error(ErrorCode::kNotPositive,
                "Choi matrix has eigenvalue " + std::to_string(vals(0)));
  }
  std::vector<OperatorMatrix> kraus;
  // Descending order so the dominant operator comes first.
  for (Eigen::Index k = vals.size() - 1; k >= 0; --k) {
    if (vals(k) <= tol) break;
    const ComplexVector v = es.eigenvectors().col(k) * std::sqrt(vals(k) * n);
    OperatorMatrix op(n, n);
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < n; ++i) op(a, i) = v(a * n + i);
    // Fix the global phase: largest entry real and positive.
    Eigen::Index r = 0;
    Eigen::Index col = 0;
    op.cwiseAbs().maxCoeff(&r, &col);
    const Complex pivot = op(r, col);
    if (std::abs(pivot) > 0.0) op *= std::conj(pivot) / std::abs(pivot);
    kraus.push_back(std::move(op));
  }
  return kraus;
}

SuperOperator matrix_exp(const SuperOperator& generator, double t) {
  const Eigen::MatrixXcd scaled = generator.matrix * t;
  return {generator.hdim, scaled.exp()};
}

bool is_trace_preserving(const SuperOperator& map, double tol) {
  const ComplexVector id = vectorize(OperatorMatrix::Identity(map.hdim, map.hdim));
  const Eigen::RowVectorXcd dual = id.adjoint() * map.matrix;
  return (dual - id.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool annihilates_trace(const SuperOperator& generator, double tol) {
  const ComplexVector id = vectorize(OperatorMatrix::Identity(generator.hdim, generator.hdim));
  const Eigen::RowVectorXcd dual = id.adjoint() * generator.matrix;
  return dual.cwiseAbs().maxCoeff() <= tol;
}

SuperOperator conjugate_map(const SuperOperator& map) {
  // J vec(X) = vec(X^dag) is the swap permutation composed with complex
  // conjugation; J S J is then K conj(S) K.
  const int n = map.hdim;
  Eigen::MatrixXcd out(n * n, n * n);
  for (int r = 0; r < n * n; ++r) {
    const int rs = (r % n) * n + r / n;
    for (int c = 0; c < n * n; ++c) {
      const int cs = (c % n) * n + c / n;
      out(r, c) = std::conj(map.matrix(rs, cs));
    }
  }
  return {n, std::move(out)};
}

bool preserves_hermiticity(const SuperOperator& map, double rel_tol) {
  const double scale = std::max(1.0, map.matrix.norm());
  return (map.matrix - conjugate_map(map).matrix).norm() <= rel_tol * scale;
}

double min_hermitian_eigenvalue(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double trace_norm_hermitian(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

PositivityCheck is_completely_positive(const SuperOperator& map, double tol) {
  const double lo = min_hermitian_eigenvalue(choi(map).matrix);
  return {lo >= -tol, lo};
}

ComplexVector omega_vector(int hdim) {
  return vectorize(OperatorMatrix::Identity(hdim, hdim)) / std::sqrt(static_cast<double>(hdim));
}

Eigen::MatrixXcd omega_adapted_basis(int hdim) {
  // Householder reflection that maps e_0 onto |Omega>; both are real unit
  // vectors so the reflector is real symmetric and unitary.
  const int d = hdim * hdim;
  ComplexVector u = -omega_vector(hdim);
  u(0) += 1.0;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(d, d);
  const double un = u.squaredNorm();
  if (un > 0.0) h -= (2.0 / un) * u * u.adjoint();
  return h;
}

Eigen::MatrixXcd projected_choi_block(const SuperOperator& generator) {
  const Eigen::MatrixXcd q = omega_adapted_basis(generator.hdim);
  const int d = generator.dim();
  const Eigen::MatrixXcd c = choi(generator).matrix;
  const Eigen::MatrixXcd block =
      q.rightCols(d - 1).adjoint() * c * q.rightCols(d - 1);
  return 0.5 * (block + block.adjoint());
}

PositivityCheck is_ccp(const SuperOperator& generator, double tol) {
  const Eigen::MatrixXcd c = choi(generator).matrix;
  const double scale = std::max(1.0, c.norm());
  if ((c - c.adjoint()).norm() > tol * scale) {
    throw Error(ErrorCode::kNotHermiticityPreserving, "Choi matrix is not Hermitian");
  }
  const double lo = min_hermitian_eigenvalue(projected_choi_block(generator));
  return {lo >= -tol, lo};
}

Eigen::MatrixXcd hermitian_operator_basis(int hdim) {
  const int d = hdim * hdim;
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(d, d);
  const double s = 1.0 / std::sqrt(2.0);
  int col = 0;
  for (int k = 0; k < hdim; ++k) basis(k * hdim + k, col++) = 1.0;
  for (int i = 0; i < hdim; ++i) {
    for (int j = i + 1; j < hdim; ++j) {
      // (E_ij + E_ji)/sqrt2 and i(E_ij - E_ji)/sqrt2; E_ij sits at j*N + i.
      basis(j * hdim + i, col) = s;
      basis(i * hdim + j, col) = s;
      ++col;
      basis(j * hdim + i, col) = kI * s;
      basis(i * hdim + j, col) = -kI * s;
      ++col;
    }
  }
  return basis;
}

double distance(const SuperOperator& a, const SuperOperator& b) {
  require_same_dim(a, b);
  return (a.matrix - b.matrix).norm();
}

}  // namespace floq
