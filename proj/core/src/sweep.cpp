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

#include "floq/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "floq/errors.hpp"

namespace floq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

void mark_defective(PointAnalysis& out, const Error& e) {
  out.row.status = RowStatus::kDefective;
  out.row.exists = false;
  out.row.mu_min = kNaN;
  out.row.d_rhp = kNaN;
  out.row.tau_min = kNaN;
  out.error = e.what();
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> v;
  if (count < 1) return v;
  v.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    v.push_back(min);
    return v;
  }
  const double step = (max - min) / (count - 1);
  for (int i = 0; i < count; ++i) v.push_back(i == count - 1 ? max : min + i * step);
  return v;
}

void Range::validate(const char* name) const {
  if (count < 1 || !std::isfinite(min) || !std::isfinite(max) || max < min) {
    throw Error(ErrorCode::kConfigError, std::string("invalid range for ") + name);
  }
}

const std::vector<OutputColumn>& all_output_columns() {
  static const std::vector<OutputColumn> cols{OutputColumn::kMuMin,  OutputColumn::kDRhp,
                                              OutputColumn::kExists, OutputColumn::kTauMin,
                                              OutputColumn::kNC,     OutputColumn::kBranch};
  return cols;
}

std::string to_string(OutputColumn column) {
  switch (column) {
    case OutputColumn::kMuMin: return "mu_min";
    case OutputColumn::kDRhp: return "d_rhp";
    case OutputColumn::kExists: return "exists";
    case OutputColumn::kTauMin: return "tau_min";
    case OutputColumn::kNC: return "n_c";
    case OutputColumn::kBranch: return "branch";
  }
  return "unknown";
}

std::optional<OutputColumn> parse_output_column(const std::string& name) {
  for (OutputColumn c : all_output_columns()) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

bool SweepConfig::wants(OutputColumn column) const {
  return std::find(outputs.begin(), outputs.end(), column) != outputs.end();
}

void SweepConfig::validate() const {
  if (!std::isfinite(gamma) || gamma < 0.0) throw Error(ErrorCode::kConfigError, "gamma must be >= 0");
  if (!std::isfinite(phi)) throw Error(ErrorCode::kConfigError, "phi must be finite");
  omega_range.validate("omega");
  e_range.validate("E");
  if (omega_range.min <= 0.0) throw Error(ErrorCode::kConfigError, "omega must be positive");
  if (x_max < 0) throw Error(ErrorCode::kConfigError, "x_max must be >= 0");
  if (workers < 0) throw Error(ErrorCode::kConfigError, "workers must be >= 0");
  if (tau_scan.points < 2 || !(tau_scan.lo > 0.0) || !(tau_scan.hi > tau_scan.lo) ||
      !(tau_scan.refine_tol > 0.0) || tau_scan.candidates_per_eigenvalue < 1) {
    throw Error(ErrorCode::kConfigError, "invalid tau scan");
  }
  try {
    integrator.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
}

std::string to_string(RowStatus status) {
  switch (status) {
    case RowStatus::kOk: return "ok";
    case RowStatus::kDefective: return "defective";
    case RowStatus::kNoKernel: return "no_kernel";
    case RowStatus::kBoundExceeded: return "bound_exceeded";
  }
  return "unknown";
}

std::optional<RowStatus> parse_row_status(const std::string& name) {
  for (RowStatus s : {RowStatus::kOk, RowStatus::kDefective, RowStatus::kNoKernel,
                      RowStatus::kBoundExceeded}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

PointAnalysis analyze_point(const DriveParams& params, const SweepConfig& cfg, bool extract) {
  PointAnalysis out;
  SweepResultRow& row = out.row;
  row.omega = params.omega;
  row.E = params.E;
  row.gamma = params.gamma;
  row.phi = params.phi;
  row.T = params.omega > 0.0 ? params.period() : kNaN;

  try {
    params.validate();
    const auto model = build_two_level_model(params);
    out.one_cycle_map = floquet_map(model, cfg.integrator);
    out.decomposition = spectral_decompose(*out.one_cycle_map);
  } catch (const Error& e) {
    mark_defective(out, e);
    return out;
  }
  const SpectralDecomposition& dec = *out.decomposition;

  MarkovOptions mopts;
  mopts.x_max = cfg.x_max;
  mopts.extract = extract;
  mopts.compute_d_rhp = cfg.wants(OutputColumn::kDRhp);
  try {
    out.markov = find_floquet_lindbladian(dec, row.T, mopts);
  } catch (const Error& e) {
    mark_defective(out, e);
    return out;
  }
  const MarkovReport& m = *out.markov;
  row.exists = m.exists;
  row.mu_min = m.mu_min;
  row.d_rhp = mopts.compute_d_rhp ? m.d_rhp : kNaN;
  row.n_c = m.n_c;
  row.branch = m.best_branch.value_or(BranchIndex{});
  row.negative_pair = m.negative_pair;
  if (!m.exists && m.bound_hit) row.status = RowStatus::kBoundExceeded;

  row.tau_min = kNaN;
  if (cfg.wants(OutputColumn::kTauMin)) {
    MemoryScanOptions kopts;
    kopts.grid_points = cfg.tau_scan.points;
    kopts.tau_lo = cfg.tau_scan.lo;
    kopts.tau_hi = cfg.tau_scan.hi;
    kopts.refine_tol = cfg.tau_scan.refine_tol;
    kopts.full_scan = cfg.tau_scan.full_scan;
    kopts.kernel.candidates_per_eigenvalue = cfg.tau_scan.candidates_per_eigenvalue;
    try {
      out.kernel = minimal_memory_time(dec, row.T, kopts);
      row.tau_min = out.kernel->tau_min;
    } catch (const Error& e) {
      row.tau_min = kInf;
      out.error = e.what();
      if (e.code() == ErrorCode::kNoValidKernelInRange) {
        row.status = RowStatus::kNoKernel;
      } else {
        row.status = RowStatus::kDefective;
      }
    }
  }
  return out;
}

SweepResultRow run_point(const DriveParams& params, const SweepConfig& cfg) {
  return analyze_point(params, cfg).row;
}

std::vector<SweepResultRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto omegas = cfg.omega_range.values();
  const auto es = cfg.e_range.values();
  const std::size_t total = omegas.size() * es.size();
  std::vector<SweepResultRow> rows(total);

  auto work = [&](std::size_t k) {
    DriveParams p;
    p.omega = omegas[k / es.size()];
    p.E = es[k % es.size()];
    p.gamma = cfg.gamma;
    p.phi = cfg.phi;
    rows[k] = run_point(p, cfg);
  };

  unsigned workers = cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : static_cast<unsigned>(cfg.workers);
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(total, 1)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < total; ++k) work(k);
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < total; k = next++) {
        try {
          work(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

PhaseExtent phase_extent(const std::vector<SweepResultRow>& rows) {
  double w_lo = kInf, w_hi = -kInf, e_lo = kInf, e_hi = -kInf;
  PhaseExtent ext;
  bool any = false;
  for (const auto& r : rows) {
    if (r.status == RowStatus::kDefective) continue;
    if (std::isfinite(r.mu_min)) ext.max_mu = std::max(ext.max_mu, r.mu_min);
    if (r.exists) continue;
    any = true;
    w_lo = std::min(w_lo, r.omega);
    w_hi = std::max(w_hi, r.omega);
    e_lo = std::min(e_lo, r.E);
    e_hi = std::max(e_hi, r.E);
  }
  if (!any) throw Error(ErrorCode::kEmptyPhase, "no non-Lindbladian grid point");
  ext.delta_omega = w_hi - w_lo;
  ext.delta_E = e_hi - e_lo;
  return ext;
}

PhaseExtent phase_extent(double gamma, double phi, const SweepConfig& grid) {
  SweepConfig cfg = grid;
  cfg.gamma = gamma;
  cfg.phi = phi;
  std::erase(cfg.outputs, OutputColumn::kTauMin);
  std::erase(cfg.outputs, OutputColumn::kDRhp);
  return phase_extent(run_sweep(cfg));
}

}  // namespace floq
