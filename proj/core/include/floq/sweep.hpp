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
#include <string>
#include <vector>

#include "floq/kernel.hpp"
#include "floq/markovianity.hpp"
#include "floq/model.hpp"
#include "floq/propagator.hpp"

namespace floq {

/// Inclusive linear grid with `count` points.
struct Range {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  std::vector<double> values() const;
  void validate(const char* name) const;
};

enum class OutputColumn { kMuMin, kDRhp, kExists, kTauMin, kNC, kBranch };

const std::vector<OutputColumn>& all_output_columns();
std::string to_string(OutputColumn column);
std::optional<OutputColumn> parse_output_column(const std::string& name);

/// Memory-time scan in units of the period.
struct TauScan {
  int points = 40;
  double lo = 1e-2;
  double hi = 10.0;
  double refine_tol = 1e-2;
  /// Evaluate every grid point instead of stopping at the first valid one.
  bool full_scan = false;
  int candidates_per_eigenvalue = 3;
};

struct SweepConfig {
  double gamma = 0.01;
  double phi = 0.0;
  Range omega_range{0.4, 3.0, 40};
  Range e_range{0.0, 3.0, 40};
  IntegratorConfig integrator;
  int x_max = 20;
  TauScan tau_scan;
  std::vector<OutputColumn> outputs = all_output_columns();
  /// 0 selects the hardware concurrency.
  int workers = 1;

  bool wants(OutputColumn column) const;
  void validate() const;
};

enum class RowStatus { kOk, kDefective, kNoKernel, kBoundExceeded };

std::string to_string(RowStatus status);
std::optional<RowStatus> parse_row_status(const std::string& name);

struct SweepResultRow {
  double omega = 0.0;
  double E = 0.0;
  double gamma = 0.0;
  double phi = 0.0;
  double T = 0.0;
  bool exists = false;
  double mu_min = 0.0;
  double d_rhp = 0.0;
  double tau_min = 0.0;
  int n_c = 0;
  BranchIndex branch;
  bool negative_pair = false;
  RowStatus status = RowStatus::kOk;
};

/// Everything computed for one parameter point.
struct PointAnalysis {
  SweepResultRow row;
  std::optional<SuperOperator> one_cycle_map;
  std::optional<SpectralDecomposition> decomposition;
  std::optional<MarkovReport> markov;
  std::optional<KernelReport> kernel;
  /// Message of the error that set a non-ok status, if any.
  std::string error;
};

PointAnalysis analyze_point(const DriveParams& params, const SweepConfig& cfg,
                            bool extract = false);

/// Module errors land in the status field.
SweepResultRow run_point(const DriveParams& params, const SweepConfig& cfg);

/// Row-major, omega outer and E inner, independent of the worker count.
std::vector<SweepResultRow> run_sweep(const SweepConfig& cfg);

struct PhaseExtent {
  double delta_omega = 0.0;
  double delta_E = 0.0;
  double max_mu = 0.0;
};

/// Throws EmptyPhase when no row is non-Lindbladian.
PhaseExtent phase_extent(const std::vector<SweepResultRow>& rows);
PhaseExtent phase_extent(double gamma, double phi, const SweepConfig& grid);

}  // namespace floq
