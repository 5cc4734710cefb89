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

#include <string>

#include "floq/sweep.hpp"

namespace floq {

/// "MIN:MAX:N". Throws ConfigError.
Range parse_range(const std::string& spec);

/// JSON document mirroring SweepConfig; keys that are present override
/// `base`, unknown keys are rejected. Throws ConfigError.
///
///   {"gamma": 0.01, "phi": 0,
///    "omega_range": "0.4:3:40", "e_range": {"min": 0, "max": 3, "count": 40},
///    "x_max": 20, "workers": 4, "outputs": ["mu_min", "exists"],
///    "integrator": {"method": "dopri45", "rel_tol": 1e-10, "abs_tol": 1e-12},
///    "tau_scan": {"points": 40, "lo": 0.01, "hi": 10, "refine_tol": 0.01}}
SweepConfig parse_config(const std::string& text, const SweepConfig& base = {});
SweepConfig load_config(const std::string& path, const SweepConfig& base = {});

std::string dump_config(const SweepConfig& cfg);

}  // namespace floq
