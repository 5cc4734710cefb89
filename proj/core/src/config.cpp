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

#include "floq/config.hpp"

#include <set>
#include <sstream>

#include <json.hpp>

#include "floq/errors.hpp"
#include "floq/table_io.hpp"

namespace floq {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::kConfigError, msg); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) fail("unknown key '" + item.key() + "' in " + where);
  }
}

double real_at(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

long integer_at(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(std::string("'") + key + "' must be an integer");
  return v.get<long>();
}

Range range_from(const json& v, const char* name) {
  if (v.is_string()) return parse_range(v.get<std::string>());
  check_keys(v, {"min", "max", "count"}, name);
  Range r;
  r.min = real_at(v, "min");
  r.max = real_at(v, "max");
  r.count = static_cast<int>(integer_at(v, "count"));
  return r;
}

json range_to(const Range& r) { return {{"min", r.min}, {"max", r.max}, {"count", r.count}}; }

}  // namespace

Range parse_range(const std::string& spec) {
  std::stringstream in(spec);
  std::string a, b, c, extra;
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c, ':') ||
      std::getline(in, extra)) {
    fail("range '" + spec + "' is not MIN:MAX:N");
  }
  Range r;
  try {
    std::size_t ua = 0, ub = 0, uc = 0;
    r.min = std::stod(a, &ua);
    r.max = std::stod(b, &ub);
    r.count = std::stoi(c, &uc);
    if (ua != a.size() || ub != b.size() || uc != c.size()) throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    fail("range '" + spec + "' is not MIN:MAX:N");
  }
  r.validate("range");
  return r;
}

SweepConfig parse_config(const std::string& text, const SweepConfig& base) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::exception& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  SweepConfig cfg = base;
  try {
    check_keys(doc, {"gamma", "phi", "omega_range", "e_range", "x_max", "workers", "outputs",
                     "integrator", "tau_scan"},
               "config");
    if (doc.contains("gamma")) cfg.gamma = real_at(doc, "gamma");
    if (doc.contains("phi")) cfg.phi = real_at(doc, "phi");
    if (doc.contains("omega_range")) cfg.omega_range = range_from(doc["omega_range"], "omega_range");
    if (doc.contains("e_range")) cfg.e_range = range_from(doc["e_range"], "e_range");
    if (doc.contains("x_max")) cfg.x_max = static_cast<int>(integer_at(doc, "x_max"));
    if (doc.contains("workers")) cfg.workers = static_cast<int>(integer_at(doc, "workers"));
    if (doc.contains("outputs")) {
      const json& outs = doc["outputs"];
      if (!outs.is_array()) fail("'outputs' must be an array");
      cfg.outputs.clear();
      for (const auto& o : outs) {
        if (!o.is_string()) fail("'outputs' entries must be strings");
        auto c = parse_output_column(o.get<std::string>());
        if (!c) fail("unknown output '" + o.get<std::string>() + "'");
        cfg.outputs.push_back(*c);
      }
    }
    if (doc.contains("integrator")) {
      const json& in = doc["integrator"];
      check_keys(in, {"method", "rel_tol", "abs_tol", "max_steps", "min_substeps_per_period"},
                 "integrator");
      auto& ic = cfg.integrator;
      if (in.contains("method")) {
        const std::string m = in["method"].is_string() ? in["method"].get<std::string>() : "";
        if (m == "dopri45") ic.method = IntegratorConfig::Method::kAdaptiveDopri45;
        else if (m == "rk4") ic.method = IntegratorConfig::Method::kFixedRk4;
        else fail("integrator method must be \"dopri45\" or \"rk4\"");
      }
      if (in.contains("rel_tol")) ic.rel_tol = real_at(in, "rel_tol");
      if (in.contains("abs_tol")) ic.abs_tol = real_at(in, "abs_tol");
      if (in.contains("max_steps")) ic.max_steps = integer_at(in, "max_steps");
      if (in.contains("min_substeps_per_period")) {
        ic.min_substeps_per_period = static_cast<int>(integer_at(in, "min_substeps_per_period"));
      }
    }
    if (doc.contains("tau_scan")) {
      const json& ts = doc["tau_scan"];
      check_keys(ts, {"points", "lo", "hi", "refine_tol", "full_scan", "candidates_per_eigenvalue"},
                 "tau_scan");
      auto& t = cfg.tau_scan;
      if (ts.contains("points")) t.points = static_cast<int>(integer_at(ts, "points"));
      if (ts.contains("lo")) t.lo = real_at(ts, "lo");
      if (ts.contains("hi")) t.hi = real_at(ts, "hi");
      if (ts.contains("refine_tol")) t.refine_tol = real_at(ts, "refine_tol");
      if (ts.contains("full_scan")) {
        if (!ts["full_scan"].is_boolean()) fail("'full_scan' must be a boolean");
        t.full_scan = ts["full_scan"].get<bool>();
      }
      if (ts.contains("candidates_per_eigenvalue")) {
        t.candidates_per_eigenvalue =
            static_cast<int>(integer_at(ts, "candidates_per_eigenvalue"));
      }
    }
  } catch (const json::exception& e) {
    fail(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

SweepConfig load_config(const std::string& path, const SweepConfig& base) {
  return parse_config(read_text(path), base);
}

std::string dump_config(const SweepConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["gamma"] = cfg.gamma;
  doc["phi"] = cfg.phi;
  doc["omega_range"] = range_to(cfg.omega_range);
  doc["e_range"] = range_to(cfg.e_range);
  doc["x_max"] = cfg.x_max;
  doc["workers"] = cfg.workers;
  doc["outputs"] = nlohmann::ordered_json::array();
  for (auto c : cfg.outputs) doc["outputs"].push_back(to_string(c));
  const auto& ic = cfg.integrator;
  doc["integrator"] = {
      {"method", ic.method == IntegratorConfig::Method::kFixedRk4 ? "rk4" : "dopri45"},
      {"rel_tol", ic.rel_tol},
      {"abs_tol", ic.abs_tol},
      {"max_steps", ic.max_steps},
      {"min_substeps_per_period", ic.min_substeps_per_period}};
  const auto& t = cfg.tau_scan;
  doc["tau_scan"] = {{"points", t.points},
                     {"lo", t.lo},
                     {"hi", t.hi},
                     {"refine_tol", t.refine_tol},
                     {"full_scan", t.full_scan},
                     {"candidates_per_eigenvalue", t.candidates_per_eigenvalue}};
  return doc.dump(2) + "\n";
}

}  // namespace floq
