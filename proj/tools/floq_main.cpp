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

// floq: command-line driver for single points, (omega, E) sweeps,
// trajectories and phase-extent studies.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "floq/config.hpp"
#include "floq/errors.hpp"
#include "floq/kernel.hpp"
#include "floq/markovianity.hpp"
#include "floq/model.hpp"
#include "floq/propagator.hpp"
#include "floq/sweep.hpp"
#include "floq/table_io.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kUsageError = 2;

struct CommonFlags {
  double gamma = 0.01;
  double phi = 0.0;
  double omega = 1.0;
  double e = 0.0;
  std::string omega_range;
  std::string e_range;
  int x_max = 20;
  std::string config;
  std::string out = "-";
  std::string format = "csv";
  int workers = 1;
  std::vector<std::string> outputs;

  CLI::Option* gamma_opt = nullptr;
  CLI::Option* phi_opt = nullptr;
  CLI::Option* x_max_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
  CLI::Option* outputs_opt = nullptr;
};

void add_common(CLI::App* app, CommonFlags& f, bool grid, bool single) {
  f.gamma_opt = app->add_option("--gamma", f.gamma, "dissipation strength");
  f.phi_opt = app->add_option("--phi", f.phi, "driving phase");
  if (single) {
    app->add_option("--omega", f.omega, "driving frequency");
    app->add_option("--e", f.e, "driving strength");
  }
  if (grid) {
    app->add_option("--omega-range", f.omega_range, "frequency grid MIN:MAX:N");
    app->add_option("--e-range", f.e_range, "strength grid MIN:MAX:N");
    f.workers_opt = app->add_option("--workers", f.workers, "worker threads (0: all cores)");
    f.outputs_opt = app->add_option("--outputs", f.outputs,
                                    "columns: mu_min d_rhp exists tau_min n_c branch");
  }
  f.x_max_opt = app->add_option("--x-max", f.x_max, "branch search bound");
  app->add_option("--config", f.config, "JSON config file");
  app->add_option("--out", f.out, "output file ('-' for stdout)");
  app->add_option("--format", f.format, "csv | json | pgm");
}

floq::SweepConfig resolve(const CommonFlags& f, floq::SweepConfig base) {
  floq::SweepConfig cfg = f.config.empty() ? base : floq::load_config(f.config, base);
  if (f.gamma_opt && f.gamma_opt->count()) cfg.gamma = f.gamma;
  if (f.phi_opt && f.phi_opt->count()) cfg.phi = f.phi;
  if (f.x_max_opt && f.x_max_opt->count()) cfg.x_max = f.x_max;
  if (f.workers_opt && f.workers_opt->count()) cfg.workers = f.workers;
  if (!f.omega_range.empty()) cfg.omega_range = floq::parse_range(f.omega_range);
  if (!f.e_range.empty()) cfg.e_range = floq::parse_range(f.e_range);
  if (f.outputs_opt && f.outputs_opt->count()) {
    cfg.outputs.clear();
    for (const auto& name : f.outputs) {
      auto c = floq::parse_output_column(name);
      if (!c) throw floq::Error(floq::ErrorCode::kConfigError, "unknown output " + name);
      cfg.outputs.push_back(*c);
    }
  }
  cfg.validate();
  return cfg;
}

floq::TableFormat format_of(const CommonFlags& f) {
  auto fmt = floq::parse_table_format(f.format);
  if (!fmt) throw floq::Error(floq::ErrorCode::kConfigError, "unknown format " + f.format);
  return *fmt;
}

floq::DriveParams params_of(const CommonFlags& f, const floq::SweepConfig& cfg) {
  floq::DriveParams p;
  p.omega = f.omega;
  p.E = f.e;
  p.gamma = cfg.gamma;
  p.phi = cfg.phi;
  try {
    p.validate();
  } catch (const floq::Error& e) {
    throw floq::Error(floq::ErrorCode::kConfigError, e.what());
  }
  return p;
}

ordered_json complex_json(floq::Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json matrix_json(const floq::OperatorMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json row_json(const floq::SweepResultRow& row, const std::vector<floq::OutputColumn>& outs) {
  return ordered_json::parse(floq::to_json({row}, outs)).at(0);
}

int cmd_point(const CommonFlags& f) {
  const auto cfg = resolve(f, {});
  const auto fmt = format_of(f);
  const auto analysis = floq::analyze_point(params_of(f, cfg), cfg);
  if (fmt != floq::TableFormat::kJson) {
    floq::emit({analysis.row}, floq::TableFormat::kCsv, f.out, cfg.outputs);
    return 0;
  }
  ordered_json doc;
  doc["row"] = row_json(analysis.row, cfg.outputs);
  if (!analysis.error.empty()) doc["error"] = analysis.error;
  if (analysis.decomposition) {
    ordered_json ev = ordered_json::array();
    for (const auto& c : analysis.decomposition->components) ev.push_back(complex_json(c.eigenvalue));
    doc["eigenvalues"] = ev;
  }
  if (analysis.kernel) {
    const auto& k = *analysis.kernel;
    ordered_json kj;
    kj["tau_min"] = k.tau_min;
    kj["resolution_floor"] = k.resolution_floor;
    kj["candidate_cap_hit"] = k.candidate_cap_hit;
    if (k.spec_at_tau_min) {
      kj["tau_mem"] = k.spec_at_tau_min->tau_mem;
      ordered_json lk = ordered_json::array();
      for (auto z : k.spec_at_tau_min->lambda_k) lk.push_back(complex_json(z));
      kj["lambda_k"] = lk;
      kj["trajectory_min_choi"] = kernel_trajectory_min_choi(
          *k.spec_at_tau_min, *analysis.decomposition, analysis.row.T, 2.0 * analysis.row.T, 401);
    }
    ordered_json scan = ordered_json::array();
    for (const auto& s : k.scan) scan.push_back({{"tau", s.tau}, {"valid", s.valid}});
    kj["scan"] = scan;
    doc["kernel"] = kj;
  }
  floq::write_text(f.out, doc.dump(2) + "\n");
  return 0;
}

int cmd_sweep(const CommonFlags& f, floq::OutputColumn pgm_column,
              std::vector<floq::OutputColumn> default_outputs) {
  floq::SweepConfig base;
  base.outputs = std::move(default_outputs);
  const auto cfg = resolve(f, base);
  const auto fmt = format_of(f);
  const auto rows = floq::run_sweep(cfg);
  floq::emit(rows, fmt, f.out, cfg.outputs, pgm_column);
  return 0;
}

int cmd_trajectory(const CommonFlags& f, double t_end_periods, int samples) {
  auto cfg = resolve(f, {});
  const auto fmt = format_of(f);
  if (fmt == floq::TableFormat::kPgm) {
    throw floq::Error(floq::ErrorCode::kConfigError, "trajectory supports csv or json");
  }
  if (samples < 2 || !(t_end_periods > 0.0)) {
    throw floq::Error(floq::ErrorCode::kConfigError, "need --samples >= 2 and --periods > 0");
  }
  const auto params = params_of(f, cfg);
  const double period = params.period();
  const double t_end = t_end_periods * period;
  const auto analysis = floq::analyze_point(params, cfg);

  struct Entry {
    double t;
    std::string curve;
    int index;
    double value;
  };
  std::vector<Entry> entries;
  auto add_curve = [&](const std::string& name, const floq::MapTrajectory& traj) {
    for (const auto& row : floq::choi_eigenvalue_trajectory(traj)) {
      for (std::size_t i = 0; i < row.eigenvalues.size(); ++i) {
        entries.push_back({row.t, name, static_cast<int>(i), row.eigenvalues[i]});
      }
    }
  };

  const auto model = floq::build_two_level_model(params);
  add_curve("full", floq::propagate_trajectory(model, t_end, samples, cfg.integrator));

  if (analysis.markov && analysis.markov->closest_generator) {
    floq::MapTrajectory semi;
    for (int i = 0; i < samples; ++i) {
      const double t = t_end * i / (samples - 1);
      semi.times.push_back(t);
      semi.maps.push_back(floq::matrix_exp(*analysis.markov->closest_generator, t));
    }
    add_curve("semigroup", semi);
  } else {
    std::cerr << "floq: no closest generator at this point; semigroup curve omitted\n";
  }

  if (analysis.kernel && analysis.kernel->spec_at_tau_min) {
    add_curve("kernel", floq::kernel_evolution(*analysis.kernel->spec_at_tau_min,
                                               *analysis.decomposition, period, t_end, samples));
  } else {
    std::cerr << "floq: no valid kernel at this point; kernel curve omitted\n";
  }

  std::string text;
  if (fmt == floq::TableFormat::kCsv) {
    text = "t,curve,eigenvalue_index,value\n";
    for (const auto& e : entries) {
      text += floq::format_real(e.t) + "," + e.curve + "," + std::to_string(e.index) + "," +
              floq::format_real(e.value) + "\n";
    }
  } else {
    ordered_json arr = ordered_json::array();
    for (const auto& e : entries) {
      arr.push_back({{"t", e.t}, {"curve", e.curve}, {"eigenvalue_index", e.index},
                     {"value", e.value}});
    }
    text = arr.dump(2) + "\n";
  }
  floq::write_text(f.out, text);
  return 0;
}

int cmd_extract(const CommonFlags& f) {
  const auto cfg = resolve(f, {});
  const auto fmt = format_of(f);
  if (fmt == floq::TableFormat::kPgm) {
    throw floq::Error(floq::ErrorCode::kConfigError, "extract supports csv or json");
  }
  auto no_kernel = cfg;
  std::erase(no_kernel.outputs, floq::OutputColumn::kTauMin);
  const auto analysis = floq::analyze_point(params_of(f, cfg), no_kernel, /*extract=*/true);
  const auto& m = analysis.markov;
  const bool ok = m && m->exists && m->h_f && m->jumps_f;
  if (!ok) std::cerr << "floq: no Floquet Lindbladian within |x| <= " << cfg.x_max << "\n";

  std::string text;
  if (fmt == floq::TableFormat::kJson) {
    ordered_json doc;
    doc["exists"] = ok;
    if (ok) {
      doc["branch"] = *m->best_branch;
      doc["hamiltonian"] = matrix_json(*m->h_f);
      ordered_json jumps = ordered_json::array();
      for (const auto& j : *m->jumps_f) jumps.push_back(matrix_json(j));
      doc["jumps"] = jumps;
    }
    text = doc.dump(2) + "\n";
  } else {
    text = "operator,index,row,col,re,im\n";
    auto dump = [&](const std::string& name, int index, const floq::OperatorMatrix& op) {
      for (Eigen::Index i = 0; i < op.rows(); ++i) {
        for (Eigen::Index j = 0; j < op.cols(); ++j) {
          text += name + "," + std::to_string(index) + "," + std::to_string(i) + "," +
                  std::to_string(j) + "," + floq::format_real(op(i, j).real()) + "," +
                  floq::format_real(op(i, j).imag()) + "\n";
        }
      }
    };
    if (ok) {
      dump("hamiltonian", 0, *m->h_f);
      for (std::size_t k = 0; k < m->jumps_f->size(); ++k) {
        dump("jump", static_cast<int>(k), (*m->jumps_f)[k]);
      }
    }
  }
  floq::write_text(f.out, text);
  return 0;
}

int cmd_extent(const CommonFlags& f, std::vector<double> gammas) {
  floq::SweepConfig base;
  base.outputs = {floq::OutputColumn::kMuMin, floq::OutputColumn::kExists};
  const auto cfg = resolve(f, base);
  const auto fmt = format_of(f);
  if (fmt == floq::TableFormat::kPgm) {
    throw floq::Error(floq::ErrorCode::kConfigError, "extent supports csv or json");
  }
  if (gammas.empty()) gammas.push_back(cfg.gamma);

  ordered_json arr = ordered_json::array();
  std::string text = "gamma,phi,delta_omega,delta_E,max_mu,empty\n";
  for (double g : gammas) {
    floq::PhaseExtent ext{0.0, 0.0, 0.0};
    bool empty = false;
    try {
      ext = floq::phase_extent(g, cfg.phi, cfg);
    } catch (const floq::Error& e) {
      if (e.code() != floq::ErrorCode::kEmptyPhase) throw;
      empty = true;
    }
    text += floq::format_real(g) + "," + floq::format_real(cfg.phi) + "," +
            floq::format_real(ext.delta_omega) + "," + floq::format_real(ext.delta_E) + "," +
            floq::format_real(ext.max_mu) + "," + (empty ? "true" : "false") + "\n";
    arr.push_back({{"gamma", g}, {"phi", cfg.phi}, {"delta_omega", ext.delta_omega},
                   {"delta_E", ext.delta_E}, {"max_mu", ext.max_mu}, {"empty", empty}});
  }
  floq::write_text(f.out, fmt == floq::TableFormat::kJson ? arr.dump(2) + "\n" : text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet Lindbladian existence, non-Markovianity measures and memory kernels"};
  app.require_subcommand(1);

  CommonFlags point_f, phase_f, kmap_f, traj_f, extract_f, extent_f;
  auto* point = app.add_subcommand("point", "analyse one (omega, E) point");
  add_common(point, point_f, false, true);

  auto* phase = app.add_subcommand("phase-diagram", "mu_min / d_rhp / existence over a grid");
  add_common(phase, phase_f, true, false);

  auto* kmap = app.add_subcommand("kernel-map", "minimal memory time over a grid");
  add_common(kmap, kmap_f, true, false);

  auto* traj = app.add_subcommand("trajectory", "Choi eigenvalues of P(t), exp(tS) and the kernel");
  add_common(traj, traj_f, false, true);
  double periods = 2.0;
  int samples = 201;
  traj->add_option("--periods", periods, "time span in periods");
  traj->add_option("--samples", samples, "number of time samples");

  auto* extract = app.add_subcommand("extract", "Floquet Hamiltonian and jump operators");
  add_common(extract, extract_f, false, true);

  auto* extent = app.add_subcommand("extent", "size of the non-Lindbladian phase");
  add_common(extent, extent_f, true, false);
  std::vector<double> gammas;
  extent->add_option("--gammas", gammas, "several dissipation strengths")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*point) return cmd_point(point_f);
    if (*phase) {
      return cmd_sweep(phase_f, floq::OutputColumn::kMuMin,
                       {floq::OutputColumn::kMuMin, floq::OutputColumn::kDRhp,
                        floq::OutputColumn::kExists, floq::OutputColumn::kNC,
                        floq::OutputColumn::kBranch});
    }
    if (*kmap) {
      return cmd_sweep(kmap_f, floq::OutputColumn::kTauMin,
                       {floq::OutputColumn::kExists, floq::OutputColumn::kMuMin,
                        floq::OutputColumn::kTauMin});
    }
    if (*traj) return cmd_trajectory(traj_f, periods, samples);
    if (*extract) return cmd_extract(extract_f);
    if (*extent) return cmd_extent(extent_f, gammas);
  } catch (const floq::Error& e) {
    std::cerr << "floq: " << floq::to_string(e.code()) << ": " << e.what() << "\n";
    return kUsageError;
  }
  return 0;
}
