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

#include "floq/model.hpp"

#include <cmath>
#include <numbers>

#include "floq/errors.hpp"

namespace floq {

double DriveParams::period() const { return 2.0 * std::numbers::pi / omega; }

void DriveParams::validate() const {
  if (!std::isfinite(E) || !std::isfinite(omega) || !std::isfinite(phi) ||
      !std::isfinite(gamma) || !std::isfinite(delta)) {
    throw Error(ErrorCode::kInvalidParams, "drive parameters must be finite");
  }
  if (!(omega > 0.0)) throw Error(ErrorCode::kInvalidParams, "omega must be positive");
  if (gamma < 0.0) throw Error(ErrorCode::kInvalidParams, "gamma must be non-negative");
  if (E < 0.0) throw Error(ErrorCode::kInvalidParams, "E must be non-negative");
}

double Profile::operator()(double t) const {
  switch (kind) {
    case Kind::kConstant: return amplitude;
    case Kind::kCosine: return amplitude * std::cos(omega * t + phase);
  }
  return 0.0;
}

TimePeriodicLindbladian::TimePeriodicLindbladian(int hdim, std::vector<HamiltonianTerm> terms,
                                                 std::vector<OperatorMatrix> jumps,
                                                 double period)
    : hdim_(hdim), terms_(std::move(terms)), jumps_(std::move(jumps)), period_(period) {
  if (hdim_ < 2) throw Error(ErrorCode::kDimensionMismatch, "Hilbert space dimension must be >= 2");
  if (!(period_ > 0.0) || !std::isfinite(period_)) {
    throw Error(ErrorCode::kInvalidParams, "period must be positive");
  }
  const OperatorMatrix zero = OperatorMatrix::Zero(hdim_, hdim_);
  for (const auto& term : terms_) {
    if (term.op.rows() != hdim_ || term.op.cols() != hdim_) {
      throw Error(ErrorCode::kDimensionMismatch, "Hamiltonian term has wrong dimension");
    }
    if (!is_hermitian(term.op)) {
      throw Error(ErrorCode::kNonHermitianHamiltonian, "Hamiltonian term is not Hermitian");
    }
    if (term.profile.kind == Profile::Kind::kCosine) {
      // The profile must repeat with the model period.
      const double cycles = term.profile.omega * period_ / (2.0 * std::numbers::pi);
      if (std::abs(cycles - std::round(cycles)) > 1e-9) {
        throw Error(ErrorCode::kInvalidParams, "drive frequency incommensurate with period");
      }
    }
    commutators_.push_back(lindbladian_matrix(term.op, {}));
  }
  for (const auto& a : jumps_) {
    if (a.rows() != hdim_ || a.cols() != hdim_) {
      throw Error(ErrorCode::kDimensionMismatch, "jump operator has wrong dimension");
    }
    if (std::abs(a.trace()) > 1e-10 * std::max(1.0, a.norm())) {
      throw Error(ErrorCode::kInvalidParams, "jump operators must be traceless");
    }
  }
  dissipator_ = lindbladian_matrix(zero, jumps_);
}

OperatorMatrix TimePeriodicLindbladian::hamiltonian_at(double t) const {
  OperatorMatrix h = OperatorMatrix::Zero(hdim_, hdim_);
  for (const auto& term : terms_) h += term.profile(t) * term.op;
  return h;
}

SuperOperator TimePeriodicLindbladian::generator_at(double t) const {
  SuperOperator gen = dissipator_;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    gen.matrix += terms_[k].profile(t) * commutators_[k].matrix;
  }
  return gen;
}

TimePeriodicLindbladian build_two_level_model(const DriveParams& p) {
  p.validate();
  std::vector<HamiltonianTerm> terms;
  terms.push_back({0.5 * p.delta * pauli_z(), Profile::constant()});
  terms.push_back({pauli_x(), Profile::cosine(p.E, p.omega, p.phi)});
  std::vector<OperatorMatrix> jumps{std::sqrt(p.gamma) * sigma_minus()};
  return {2, std::move(terms), std::move(jumps), p.period()};
}

SuperOperator generator_at(const TimePeriodicLindbladian& model, double t) {
  return model.generator_at(t);
}

}  // namespace floq
