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

#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>
#include <json.hpp>

#include "floq/config.hpp"
#include "floq/sweep.hpp"
#include "floq/table_io.hpp"
#include "test_util.hpp"

namespace floq {
namespace {

DriveParams params(double e, double omega, double gamma = 0.01, double phi = 0.0) {
  DriveParams p;
  p.E = e;
  p.omega = omega;
  p.gamma = gamma;
  p.phi = phi;
  return p;
}

SweepConfig small_grid() {
  SweepConfig cfg;
  cfg.omega_range = {0.9, 1.8, 4};
  cfg.e_range = {0.0, 1.5, 4};
  return cfg;
}

void expect_rows_equal(const SweepResultRow& a, const SweepResultRow& b) {
  auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
  EXPECT_TRUE(same(a.omega, b.omega));
  EXPECT_TRUE(same(a.E, b.E));
  EXPECT_TRUE(same(a.gamma, b.gamma));
  EXPECT_TRUE(same(a.phi, b.phi));
  EXPECT_TRUE(same(a.T, b.T));
  EXPECT_EQ(a.exists, b.exists);
  EXPECT_TRUE(same(a.mu_min, b.mu_min));
  EXPECT_TRUE(same(a.d_rhp, b.d_rhp));
  EXPECT_TRUE(same(a.tau_min, b.tau_min));
  EXPECT_EQ(a.n_c, b.n_c);
  EXPECT_EQ(a.branch, b.branch);
  EXPECT_EQ(a.negative_pair, b.negative_pair);
  EXPECT_EQ(a.status, b.status);
}

TEST(RunPoint, UndrivenLimit) {
  const auto row = run_point(params(0.0, 2.0), SweepConfig{});
  EXPECT_TRUE(row.exists);
  EXPECT_EQ(row.mu_min, 0.0);
  EXPECT_EQ(row.tau_min, 0.0);
  EXPECT_EQ(row.status, RowStatus::kOk);
  EXPECT_DOUBLE_EQ(row.T, std::numbers::pi);
}

TEST(RunPoint, PaperPoints) {
  const auto no = run_point(params(0.75, 1.2), SweepConfig{});
  EXPECT_FALSE(no.exists);
  EXPECT_GT(no.mu_min, 0.0);
  EXPECT_GE(no.tau_min, 1e-2 * no.T);
  EXPECT_EQ(no.n_c, 1);
  const auto yes = run_point(params(1.5, 1.5), SweepConfig{});
  EXPECT_TRUE(yes.exists);
  EXPECT_EQ(yes.mu_min, 0.0);
  EXPECT_EQ(yes.tau_min, 0.0);
}

TEST(RunPoint, FailuresBecomeStatus) {
  SweepConfig cfg;
  cfg.integrator.max_steps = 2;
  const auto row = run_point(params(0.75, 1.2), cfg);
  EXPECT_EQ(row.status, RowStatus::kDefective);
  EXPECT_TRUE(std::isnan(row.mu_min));
  const auto a = analyze_point(params(0.75, 1.2), cfg);
  EXPECT_FALSE(a.error.empty());
}

TEST(RunSweep, SingleCellReducesToPoint) {
  SweepConfig cfg;
  cfg.omega_range = {1.2, 1.2, 1};
  cfg.e_range = {0.75, 0.75, 1};
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 1u);
  expect_rows_equal(rows[0], run_point(params(0.75, 1.2), cfg));
}

TEST(RunSweep, RowMajorOrderAndInvariants) {
  const auto cfg = small_grid();
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 16u);
  const auto om = cfg.omega_range.values();
  const auto es = cfg.e_range.values();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_EQ(rows[i * 4 + j].omega, om[i]);
      EXPECT_EQ(rows[i * 4 + j].E, es[j]);
    }
  }
  for (const auto& r : rows) {
    if (r.exists) {
      EXPECT_EQ(r.mu_min, 0.0);
      EXPECT_EQ(r.tau_min, 0.0);
    } else {
      EXPECT_GT(r.mu_min, 0.0);
    }
  }
}

TEST(RunSweep, ParallelMatchesSerialAndIsDeterministic) {
  auto cfg = small_grid();
  cfg.workers = 1;
  const std::string serial = to_csv(run_sweep(cfg));
  cfg.workers = 8;
  const std::string parallel = to_csv(run_sweep(cfg));
  EXPECT_EQ(serial, parallel);
  EXPECT_EQ(parallel, to_csv(run_sweep(cfg)));
}

TEST(RunSweep, SurvivesDefectivePoints) {
  auto cfg = small_grid();
  cfg.integrator.max_steps = 2;
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 16u);
  for (const auto& r : rows) EXPECT_EQ(r.status, RowStatus::kDefective);
}

TEST(PhaseExtent, FromRows) {
  std::vector<SweepResultRow> rows(4);
  rows[0].omega = 1.0; rows[0].E = 0.5; rows[0].exists = false; rows[0].mu_min = 0.2;
  rows[1].omega = 2.0; rows[1].E = 0.1; rows[1].exists = false; rows[1].mu_min = 0.4;
  rows[2].omega = 3.0; rows[2].E = 2.0; rows[2].exists = true;
  rows[3].omega = 5.0; rows[3].E = 9.0; rows[3].exists = false;
  rows[3].status = RowStatus::kDefective; rows[3].mu_min = 7.0;
  const auto ext = phase_extent(rows);
  EXPECT_DOUBLE_EQ(ext.delta_omega, 1.0);
  EXPECT_DOUBLE_EQ(ext.delta_E, 0.4);
  EXPECT_DOUBLE_EQ(ext.max_mu, 0.4);
  rows.resize(3);
  rows[0].exists = rows[1].exists = true;
  EXPECT_FLOQ_ERROR(phase_extent(rows), ErrorCode::kEmptyPhase);
}

TEST(Csv, HeaderOnlyForEmptyTable) {
  const std::string csv = to_csv({});
  EXPECT_EQ(csv, "omega,E,gamma,phi,T,exists,mu_min,d_rhp,tau_min,n_c,branch,negative_pair,status\n");
}

TEST(Csv, RoundTrip) {
  auto cfg = small_grid();
  auto rows = run_sweep(cfg);
  rows[1].tau_min = std::numeric_limits<double>::infinity();
  rows[1].status = RowStatus::kNoKernel;
  rows[2].mu_min = std::numeric_limits<double>::quiet_NaN();
  rows[2].status = RowStatus::kDefective;
  rows[3].branch = {-2, 5};
  rows[3].negative_pair = true;
  const std::string text = to_csv(rows);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const auto back = parse_csv(text);
  ASSERT_EQ(back.size(), rows.size());
  // Values survive exactly at 12 significant digits.
  EXPECT_EQ(to_csv(back), text);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(back[k].exists, rows[k].exists);
    EXPECT_EQ(back[k].branch, rows[k].branch);
    EXPECT_EQ(back[k].status, rows[k].status);
    EXPECT_EQ(std::stod(format_real(rows[k].omega)), back[k].omega);
  }
  EXPECT_FLOQ_ERROR(parse_csv("omega,E\n1,2,3\n"), ErrorCode::kIoError);
}

TEST(Csv, FloatFormatting) {
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_real(1e-20), "1e-20");
}

TEST(Json, ArrayOfObjectsWithCsvFieldNames) {
  auto rows = run_sweep(small_grid());
  const auto doc = nlohmann::json::parse(to_json(rows));
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), rows.size());
  const auto names = table_columns();
  for (const auto& obj : doc) {
    ASSERT_TRUE(obj.is_object());
    EXPECT_EQ(obj.size(), names.size());
    for (const auto& n : names) EXPECT_TRUE(obj.contains(n)) << n;
  }
  EXPECT_EQ(doc[0]["omega"].get<double>(), rows[0].omega);
}

TEST(Pgm, DimensionsMatchGrid) {
  SweepConfig cfg;
  cfg.omega_range = {1.0, 2.0, 5};
  cfg.e_range = {0.0, 1.0, 3};
  cfg.outputs = {OutputColumn::kMuMin, OutputColumn::kExists};
  const auto rows = run_sweep(cfg);
  const std::string pgm = to_pgm(rows, OutputColumn::kMuMin);
  const std::string header = "P5\n5 3\n255\n";
  ASSERT_EQ(pgm.substr(0, header.size()), header);
  EXPECT_EQ(pgm.size(), header.size() + 15);
}

TEST(Emit, WritesFilesAndReportsIoErrors) {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string path = (dir / "floq_emit_test.csv").string();
  emit({}, TableFormat::kCsv, path);
  EXPECT_EQ(read_text(path), to_csv({}));
  std::filesystem::remove(path);
  EXPECT_FLOQ_ERROR(emit({}, TableFormat::kCsv, "/nonexistent-dir/x.csv"), ErrorCode::kIoError);
  EXPECT_FLOQ_ERROR(read_text("/nonexistent-dir/x.csv"), ErrorCode::kIoError);
}

TEST(Outputs, SelectColumns) {
  const std::vector<OutputColumn> outs{OutputColumn::kExists, OutputColumn::kMuMin};
  const auto cols = table_columns(outs);
  EXPECT_EQ(cols, (std::vector<std::string>{"omega", "E", "gamma", "phi", "T", "exists", "mu_min",
                                            "negative_pair", "status"}));
  for (auto c : all_output_columns()) EXPECT_EQ(parse_output_column(to_string(c)), c);
  EXPECT_FALSE(parse_output_column("bogus").has_value());
}

TEST(Config, ParseRange) {
  const auto r = parse_range("0.4:3:40");
  EXPECT_EQ(r.min, 0.4);
  EXPECT_EQ(r.max, 3.0);
  EXPECT_EQ(r.count, 40);
  EXPECT_EQ(r.values().size(), 40u);
  EXPECT_DOUBLE_EQ(r.values().back(), 3.0);
  EXPECT_FLOQ_ERROR(parse_range("1:2"), ErrorCode::kConfigError);
  EXPECT_FLOQ_ERROR(parse_range("1:2:0"), ErrorCode::kConfigError);
  EXPECT_FLOQ_ERROR(parse_range("a:2:3"), ErrorCode::kConfigError);
}

TEST(Config, ParseOverridesAndRoundTrip) {
  const std::string text = R"({
    // comment lines are accepted
    "gamma": 0.03,
    "phi": 1.5707963267948966,
    "omega_range": "0.5:2.5:11",
    "e_range": {"min": 0, "max": 2, "count": 9},
    "x_max": 7,
    "workers": 3,
    "outputs": ["mu_min", "exists"],
    "integrator": {"method": "rk4", "min_substeps_per_period": 500},
    "tau_scan": {"points": 20, "full_scan": true}
  })";
  const auto cfg = parse_config(text);
  EXPECT_EQ(cfg.gamma, 0.03);
  EXPECT_EQ(cfg.omega_range.count, 11);
  EXPECT_EQ(cfg.e_range.max, 2.0);
  EXPECT_EQ(cfg.x_max, 7);
  EXPECT_EQ(cfg.workers, 3);
  EXPECT_EQ(cfg.outputs, (std::vector<OutputColumn>{OutputColumn::kMuMin, OutputColumn::kExists}));
  EXPECT_EQ(cfg.integrator.method, IntegratorConfig::Method::kFixedRk4);
  EXPECT_EQ(cfg.integrator.min_substeps_per_period, 500);
  EXPECT_EQ(cfg.tau_scan.points, 20);
  EXPECT_TRUE(cfg.tau_scan.full_scan);
  EXPECT_FALSE(cfg.wants(OutputColumn::kTauMin));

  const auto again = parse_config(dump_config(cfg));
  EXPECT_EQ(dump_config(again), dump_config(cfg));

  // Keys absent from the document keep the base values.
  SweepConfig base;
  base.gamma = 0.2;
  EXPECT_EQ(parse_config(R"({"phi": 0.1})", base).gamma, 0.2);
}

TEST(Config, Errors) {
  EXPECT_FLOQ_ERROR(parse_config("{"), ErrorCode::kConfigError);
  EXPECT_FLOQ_ERROR(parse_config(R"({"gama": 1})"), ErrorCode::kConfigError);
  EXPECT_FLOQ_ERROR(parse_config(R"({"outputs": ["nope"]})"), ErrorCode::kConfigError);
  EXPECT_FLOQ_ERROR(parse_config(R"({"omega_range": "0:1:0"})"), ErrorCode::kConfigError);
  EXPECT_FLOQ_ERROR(parse_config(R"({"integrator": {"method": "euler"}})"), ErrorCode::kConfigError);
  EXPECT_FLOQ_ERROR(load_config("/nonexistent-dir/cfg.json"), ErrorCode::kIoError);
}

}  // namespace
}  // namespace floq
