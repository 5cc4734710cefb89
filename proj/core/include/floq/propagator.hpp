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

#include "floq/model.hpp"
#include "floq/superop.hpp"

namespace floq {

struct IntegratorConfig {
  enum class Method { kFixedRk4, kAdaptiveDopri45 };
  Method method = Method::kAdaptiveDopri45;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  long max_steps = 10'000'000;
  /// Step count per period for the fixed-step method.
  int min_substeps_per_period = 1000;

  void validate() const;
};

struct MapTrajectory {
  std::vector<double> times;
  std::vector<SuperOperator> maps;
};

struct ChoiSpectrumRow {
  double t = 0.0;
  std::vector<double> eigenvalues;
};

/// Time-ordered map from t0 to t1: solves dP/dt = L(t) P with P(t0) = 1.
SuperOperator propagate(const TimePeriodicLindbladian& model, double t0, double t1,
                        const IntegratorConfig& cfg = {});

/// One-cycle map P(T) = T exp[int_0^T L(t) dt].
SuperOperator floquet_map(const TimePeriodicLindbladian& model, const IntegratorConfig& cfg = {});

/// P(t) sampled on a uniform grid over [0, t_end] in a single sweep.
MapTrajectory propagate_trajectory(const TimePeriodicLindbladian& model, double t_end, int samples,
                                   const IntegratorConfig& cfg = {});

/// Choi eigenvalues along a trajectory: ascending at the first sample, then
/// each column follows its nearest neighbour from the previous sample.
std::vector<ChoiSpectrumRow> choi_eigenvalue_trajectory(const MapTrajectory& traj);

}  // namespace floq
