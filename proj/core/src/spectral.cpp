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

#include "floq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "floq/errors.hpp"

namespace floq {

namespace {

constexpr Complex kI{0.0, 1.0};

enum class Side { kReal, kUpper, kLower };

struct Cluster {
  std::vector<int> members;
  Complex value;
  Side side = Side::kReal;
  Eigen::MatrixXcd projector;  // in the working basis
};

int find_root(std::vector<int>& parent, int k) {
  while (parent[k] != k) {
    parent[k] = parent[parent[k]];
    k = parent[k];
  }
  return k;
}

}  // namespace

int SpectralDecomposition::unit_index() const {
  for (std::size_t a = 0; a < components.size(); ++a) {
    if (components[a].kind == EigenKind::kUnit) return static_cast<int>(a);
  }
  return -1;
}

std::vector<Complex> SpectralDecomposition::eigenvalues() const {
  std::vector<Complex> out;
  for (const auto& c : components) out.insert(out.end(), c.multiplicity, c.eigenvalue);
  return out;
}

SuperOperator SpectralDecomposition::reconstruct() const {
  SuperOperator sum = SuperOperator::zero(hdim);
  for (const auto& c : components) sum.matrix += c.eigenvalue * c.projector.matrix;
  return sum;
}

SuperOperator SpectralDecomposition::pair_difference(int pair) const {
  const auto [c, cbar] = pairs.at(static_cast<std::size_t>(pair));
  return components[c].projector - components[cbar].projector;
}

SpectralDecomposition spectral_decompose(const SuperOperator& map, const SpectralOptions& opt) {
  const int n = map.hdim;
  const int d = n * n;
  const Eigen::MatrixXcd basis = hermitian_operator_basis(n);
  const Eigen::MatrixXcd work = basis.adjoint() * map.matrix * basis;
  const double scale = std::max(1.0, work.cwiseAbs().maxCoeff());
  const bool real_path = work.imag().cwiseAbs().maxCoeff() <= 1e-9 * scale;

  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
  if (real_path) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(work.real());
    if (es.info() != Eigen::Success) throw Error(ErrorCode::kDefectiveMap, "eigensolver failed");
    values = es.eigenvalues();
    vectors = es.eigenvectors();
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(work);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::kDefectiveMap, "eigensolver failed");
    values = es.eigenvalues();
    vectors = es.eigenvectors();
  }
  for (int k = 0; k < d; ++k) vectors.col(k).normalize();

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vectors);
  const auto& sv = svd.singularValues();
  const double cond = sv(d - 1) > 0.0 ? sv(0) / sv(d - 1) : INFINITY;
  if (!(cond <= opt.max_condition)) {
    throw Error(ErrorCode::kDefectiveMap,
                "eigenvector condition number " + std::to_string(cond));
  }
  const Eigen::MatrixXcd dual = vectors.partialPivLu().inverse();

  // Snap numerically real eigenvalues onto the axis.
  std::vector<Complex> snapped(d);
  std::vector<Side> side(d);
  double radius = 0.0;
  for (int k = 0; k < d; ++k) {
    const Complex v = values(k);
    radius = std::max(radius, std::abs(v));
    if (std::abs(v.imag()) <= opt.pair_tol) {
      snapped[k] = v.real();
      side[k] = Side::kReal;
    } else {
      snapped[k] = v;
      side[k] = v.imag() > 0.0 ? Side::kUpper : Side::kLower;
    }
  }

  const double cluster_tol = std::max(opt.pair_tol, opt.cluster_rel_tol * radius);
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l)
      if (side[k] == side[l] && std::abs(snapped[k] - snapped[l]) <= cluster_tol)
        parent[find_root(parent, l)] = find_root(parent, k);

  std::vector<Cluster> clusters;
  {
    std::vector<int> slot(d, -1);
    for (int k = 0; k < d; ++k) {
      const int r = find_root(parent, k);
      if (slot[r] < 0) {
        slot[r] = static_cast<int>(clusters.size());
        clusters.push_back({});
        clusters.back().side = side[k];
      }
      clusters[slot[r]].members.push_back(k);
    }
  }
  for (auto& cl : clusters) {
    Complex mean = 0.0;
    Eigen::MatrixXcd right(d, cl.members.size());
    Eigen::MatrixXcd left(cl.members.size(), d);
    for (std::size_t j = 0; j < cl.members.size(); ++j) {
      const int k = cl.members[j];
      mean += snapped[k];
      right.col(j) = vectors.col(k);
      left.row(j) = dual.row(k);
    }
    cl.value = mean / static_cast<double>(cl.members.size());
    cl.projector = right * left;
    if (real_path && cl.side == Side::kReal) {
      cl.projector = cl.projector.real().cast<Complex>();
    }
  }

  SpectralDecomposition dec;
  dec.hdim = n;
  dec.hermiticity_preserving = real_path;
  dec.condition_number = cond;

  auto to_standard = [&](const Eigen::MatrixXcd& m) {
    return SuperOperator(n, basis * m * basis.adjoint());
  };
  auto add = [&](Complex value, int mult, const Eigen::MatrixXcd& proj, EigenKind kind) {
    SpectralComponent c;
    c.eigenvalue = value;
    c.multiplicity = mult;
    c.projector = to_standard(proj);
    c.kind = kind;
    dec.components.push_back(std::move(c));
    return static_cast<int>(dec.components.size()) - 1;
  };

  // Deterministic layout: unit, positive reals (descending), negative reals,
  // then conjugate pairs ordered by modulus and phase.
  std::vector<int> reals;
  std::vector<int> uppers;
  std::vector<int> lowers;
  for (int c = 0; c < static_cast<int>(clusters.size()); ++c) {
    if (clusters[c].side == Side::kReal) reals.push_back(c);
    else if (clusters[c].side == Side::kUpper) uppers.push_back(c);
    else lowers.push_back(c);
  }
  std::sort(reals.begin(), reals.end(), [&](int a, int b) {
    return clusters[a].value.real() > clusters[b].value.real();
  });
  auto pair_order = [&](int a, int b) {
    const double ma = std::abs(clusters[a].value);
    const double mb = std::abs(clusters[b].value);
    if (ma != mb) return ma > mb;
    return std::arg(clusters[a].value) < std::arg(clusters[b].value);
  };
  std::sort(uppers.begin(), uppers.end(), pair_order);

  for (int c : reals) {
    const auto& cl = clusters[c];
    const double v = cl.value.real();
    const int mult = static_cast<int>(cl.members.size());
    if (std::abs(v - 1.0) <= opt.unit_tol && dec.unit_index() < 0) {
      add(v, mult, cl.projector, EigenKind::kUnit);
    } else if (v >= 0.0) {
      add(v, mult, cl.projector, EigenKind::kReal);
    }
  }
  for (int c : reals) {
    const auto& cl = clusters[c];
    const double v = cl.value.real();
    if (v >= 0.0) continue;
    const int mult = static_cast<int>(cl.members.size());
    if (!real_path || mult % 2 != 0) {
      dec.unpaired_negative = true;
      add(v, mult, cl.projector, EigenKind::kReal);
      continue;
    }
    // Split the real eigenspace into J-conjugate halves: with an orthonormal
    // real basis (u1, u2) of a 2D block, r = (u1 + i u2)/sqrt2 pairs with its
    // complex conjugate.
    const Eigen::MatrixXd proj = cl.projector.real();
    Eigen::JacobiSVD<Eigen::MatrixXd> psvd(proj, Eigen::ComputeThinU);
    const Eigen::MatrixXd u = psvd.matrixU().leftCols(mult);
    const Eigen::MatrixXd lt = u.transpose() * proj;
    for (int j = 0; j < mult; j += 2) {
      const Eigen::VectorXcd r = (u.col(j).cast<Complex>() + kI * u.col(j + 1).cast<Complex>());
      const Eigen::RowVectorXcd l =
          (lt.row(j).cast<Complex>() - kI * lt.row(j + 1).cast<Complex>());
      const Eigen::MatrixXcd up = 0.5 * r * l;
      const int a = add(v, 1, up, EigenKind::kPairMember);
      const int b = add(v, 1, up.conjugate(), EigenKind::kPairMember);
      dec.components[a].negative_pair = dec.components[b].negative_pair = true;
      dec.has_negative_pair = true;
    }
  }

  std::vector<bool> used(clusters.size(), false);
  for (int c : uppers) {
    const auto& cl = clusters[c];
    int partner = -1;
    double best = INFINITY;
    for (int l : lowers) {
      if (used[l] || clusters[l].members.size() != cl.members.size()) continue;
      const double gap = std::abs(clusters[l].value - std::conj(cl.value));
      if (gap < best) {
        best = gap;
        partner = l;
      }
    }
    const int mult = static_cast<int>(cl.members.size());
    if (partner < 0 || best > std::max(opt.pair_tol, cluster_tol)) {
      add(cl.value, mult, cl.projector, EigenKind::kUnpaired);
      continue;
    }
    used[partner] = true;
    if (real_path) {
      // Conjugate eigenvectors of a real matrix: enforce the symmetry exactly.
      add(cl.value, mult, cl.projector, EigenKind::kPairMember);
      add(std::conj(cl.value), mult, cl.projector.conjugate(), EigenKind::kPairMember);
    } else {
      add(cl.value, mult, cl.projector, EigenKind::kPairMember);
      add(clusters[partner].value, mult, clusters[partner].projector, EigenKind::kPairMember);
    }
  }
  for (int l : lowers) {
    if (!used[l]) {
      add(clusters[l].value, static_cast<int>(clusters[l].members.size()),
          clusters[l].projector, EigenKind::kUnpaired);
    }
  }

  // Pair members were appended as adjacent (c, c-bar) couples.
  for (int a = 0; a + 1 < static_cast<int>(dec.components.size()); ++a) {
    auto& ca = dec.components[a];
    auto& cb = dec.components[a + 1];
    if (ca.kind == EigenKind::kPairMember && cb.kind == EigenKind::kPairMember &&
        ca.partner < 0 && cb.partner < 0) {
      ca.partner = a + 1;
      cb.partner = a;
      ca.upper_member = true;
      dec.pairs.emplace_back(a, a + 1);
      ++a;
    }
  }

  if (dec.unpaired_negative && opt.strict_pairing) {
    throw Error(ErrorCode::kUnpairedNegativeEigenvalue,
                "negative real eigenvalue without a degenerate partner");
  }
  return dec;
}

Complex component_log(const SpectralDecomposition& dec, int component) {
  const auto& c = dec.components.at(static_cast<std::size_t>(component));
  const double mod = std::abs(c.eigenvalue);
  if (mod < 1e-12) {
    throw Error(ErrorCode::kZeroEigenvalue, "logarithm of a vanishing eigenvalue");
  }
  if (c.negative_pair) {
    return {std::log(mod), c.upper_member ? std::numbers::pi : -std::numbers::pi};
  }
  if (c.kind == EigenKind::kPairMember && !c.upper_member) {
    return std::conj(std::log(dec.components[c.partner].eigenvalue));
  }
  if ((c.kind == EigenKind::kUnit || c.kind == EigenKind::kReal) && c.eigenvalue.real() > 0.0) {
    return std::log(c.eigenvalue.real());
  }
  return std::log(c.eigenvalue);
}

SuperOperator branch_generator(const SpectralDecomposition& dec, std::span<const int> branch,
                               double period) {
  if (!(period > 0.0)) throw Error(ErrorCode::kInvalidParams, "period must be positive");
  if (static_cast<int>(branch.size()) != dec.n_c()) {
    throw Error(ErrorCode::kDimensionMismatch, "branch index length differs from n_c");
  }
  SuperOperator gen = SuperOperator::zero(dec.hdim);
  for (int a = 0; a < static_cast<int>(dec.components.size()); ++a) {
    gen.matrix += component_log(dec, a) * dec.components[a].projector.matrix;
  }
  for (int c = 0; c < dec.n_c(); ++c) {
    if (branch[c] == 0) continue;
    gen.matrix += (2.0 * std::numbers::pi * branch[c]) * kI * dec.pair_difference(c).matrix;
  }
  gen.matrix /= period;
  return gen;
}

}  // namespace floq
