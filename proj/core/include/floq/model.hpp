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

#include <vector>

#include "floq/superop.hpp"

namespace floq {

/// Driven dissipative two-level system in units Delta = hbar = 1.
struct DriveParams {
  double E = 0.0;      // driving strength
  double omega = 1.0;  // driving frequency
  double phi = 0.0;    // driving phase
  double gamma = 0.0;  // dissipation strength
  double delta = 1.0;  // level splitting; fixed by the unit choice

  double period() const;
  void validate() const;
};

/// Time profile multiplying one Hamiltonian term.
struct Profile {
  enum class Kind { kConstant, kCosine };
  Kind kind = Kind::kConstant;
  double amplitude = 1.0;
  double omega = 0.0;
  double phase = 0.0;

  static Profile constant(double amplitude = 1.0) { return {Kind::kConstant, amplitude, 0.0, 0.0}; }
  static Profile cosine(double amplitude, double omega, double phase) {
    return {Kind::kCosine, amplitude, omega, phase};
  }
  double operator()(double t) const;
};

struct HamiltonianTerm {
  OperatorMatrix op;
  Profile profile;
};

/// L(t) = -i[H(t), .] + D with H(t) = sum_k f_k(t) H_k and time-independent
/// traceless jumps.
class TimePeriodicLindbladian {
 public:
  TimePeriodicLindbladian(int hdim, std::vector<HamiltonianTerm> terms,
                          std::vector<OperatorMatrix> jumps, double period);

  int hdim() const { return hdim_; }
  double period() const { return period_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }
  const std::vector<OperatorMatrix>& jumps() const { return jumps_; }

  OperatorMatrix hamiltonian_at(double t) const;
  SuperOperator generator_at(double t) const;

  /// Time-independent dissipator part, the same at every t.
  const SuperOperator& dissipator() const { return dissipator_; }
  /// -i[H_k, .] for every Hamiltonian term; L(t) = D + sum_k f_k(t) C_k.
  const std::vector<SuperOperator>& commutators() const { return commutators_; }

 private:
  int hdim_;
  std::vector<HamiltonianTerm> terms_;
  std::vector<OperatorMatrix> jumps_;
  double period_;
  SuperOperator dissipator_;
  std::vector<SuperOperator> commutators_;
};

/// H(t) = delta/2 sigma_z + E cos(omega t + phi) sigma_x, A = sqrt(gamma) sigma_-.
TimePeriodicLindbladian build_two_level_model(const DriveParams& params);

SuperOperator generator_at(const TimePeriodicLindbladian& model, double t);

}  // namespace floq
