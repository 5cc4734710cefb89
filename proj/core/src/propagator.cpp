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

#include "floq/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "floq/errors.hpp"

namespace floq {

namespace {

using Mat = Eigen::MatrixXcd;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

class MapIntegrator {
 public:
  MapIntegrator(const TimePeriodicLindbladian& model, const IntegratorConfig& cfg)
      : model_(model), cfg_(cfg) {}

  /// Advances state from t0 to t1 in place.
  void advance(Mat& state, double t0, double t1) {
    if (t1 == t0) return;
    if (cfg_.method == IntegratorConfig::Method::kFixedRk4) {
      advance_rk4(state, t0, t1);
    } else {
      advance_dopri(state, t0, t1);
    }
  }

 private:
  Mat rhs(double t, const Mat& p) const { return model_.generator_at(t).matrix * p; }

  void count_step() {
    if (++steps_ > cfg_.max_steps) {
      throw Error(ErrorCode::kIntegratorDiverged, "max_steps exceeded");
    }
  }

  void advance_rk4(Mat& y, double t0, double t1) {
    const double span = t1 - t0;
    const long n = std::max<long>(
        1, static_cast<long>(std::ceil(std::abs(span) / model_.period() *
                                       cfg_.min_substeps_per_period - 1e-9)));
    const double h = span / static_cast<double>(n);
    for (long k = 0; k < n; ++k) {
      count_step();
      const double t = t0 + static_cast<double>(k) * h;
      const Mat k1 = rhs(t, y);
      const Mat k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
      const Mat k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
      const Mat k4 = rhs(t + h, y + h * k3);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }

  void advance_dopri(Mat& y, double t0, double t1) {
    const double dir = t1 > t0 ? 1.0 : -1.0;
    double t = t0;
    double h = std::min(std::abs(t1 - t0), next_h_ > 0.0 ? next_h_ : model_.period() / 64.0);
    Mat k1 = rhs(t, y);
    while (dir * (t1 - t) > 0.0) {
      bool last = false;
      if (h >= std::abs(t1 - t)) {
        h = std::abs(t1 - t);
        last = true;
      }
      if (h <= 1e-14 * std::max(1.0, std::abs(t))) {
        throw Error(ErrorCode::kIntegratorDiverged, "step size underflow");
      }
      count_step();
      const double s = dir * h;
      const Mat k2 = rhs(t + c2 * s, y + s * (a21 * k1));
      const Mat k3 = rhs(t + c3 * s, y + s * (a31 * k1 + a32 * k2));
      const Mat k4 = rhs(t + c4 * s, y + s * (a41 * k1 + a42 * k2 + a43 * k3));
      const Mat k5 = rhs(t + c5 * s, y + s * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Mat k6 =
          rhs(t + s, y + s * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const Mat y_new = y + s * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const Mat k7 = rhs(t + s, y_new);
      const Mat err = s * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double err_norm = 0.0;
      for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = cfg_.abs_tol +
                          cfg_.rel_tol * std::max(std::abs(y(i)), std::abs(y_new(i)));
        err_norm = std::max(err_norm, std::abs(err(i)) / sc);
      }
      if (!std::isfinite(err_norm)) {
        throw Error(ErrorCode::kIntegratorDiverged, "non-finite error estimate");
      }
      const double factor =
          err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
      if (err_norm <= 1.0) {
        t = last ? t1 : t + s;
        y = y_new;
        k1 = k7;
        if (!last) next_h_ = h * factor;
        h *= factor;
      } else {
        h *= std::min(1.0, factor);
      }
    }
  }

  const TimePeriodicLindbladian& model_;
  const IntegratorConfig& cfg_;
  long steps_ = 0;
  double next_h_ = 0.0;
};

void check_trace(const SuperOperator& p) {
  if (!is_trace_preserving(p, 1e-6)) {
    throw Error(ErrorCode::kAccuracyLoss, "trace-preservation residual above 1e-6");
  }
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "integrator tolerances must be positive");
  }
  if (max_steps <= 0 || min_substeps_per_period <= 0) {
    throw Error(ErrorCode::kInvalidParams, "integrator step limits must be positive");
  }
}

SuperOperator propagate(const TimePeriodicLindbladian& model, double t0, double t1,
                        const IntegratorConfig& cfg) {
  cfg.validate();
  const int d = model.hdim() * model.hdim();
  Mat state = Mat::Identity(d, d);
  MapIntegrator integrator(model, cfg);
  integrator.advance(state, t0, t1);
  SuperOperator out(model.hdim(), std::move(state));
  check_trace(out);
  return out;
}

SuperOperator floquet_map(const TimePeriodicLindbladian& model, const IntegratorConfig& cfg) {
  return propagate(model, 0.0, model.period(), cfg);
}

MapTrajectory propagate_trajectory(const TimePeriodicLindbladian& model, double t_end,
                                   int samples, const IntegratorConfig& cfg) {
  cfg.validate();
  if (!(t_end > 0.0) || samples < 2) {
    throw Error(ErrorCode::kInvalidParams, "trajectory needs t_end > 0 and >= 2 samples");
  }
  const int d = model.hdim() * model.hdim();
  MapTrajectory traj;
  traj.times.reserve(samples);
  traj.maps.reserve(samples);
  Mat state = Mat::Identity(d, d);
  MapIntegrator integrator(model, cfg);
  double t_prev = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = t_end * static_cast<double>(k) / static_cast<double>(samples - 1);
    integrator.advance(state, t_prev, t);
    t_prev = t;
    traj.times.push_back(t);
    traj.maps.emplace_back(model.hdim(), state);
    check_trace(traj.maps.back());
  }
  return traj;
}

std::vector<ChoiSpectrumRow> choi_eigenvalue_trajectory(const MapTrajectory& traj) {
  std::vector<ChoiSpectrumRow> rows;
  rows.reserve(traj.maps.size());
  for (std::size_t k = 0; k < traj.maps.size(); ++k) {
    const Eigen::MatrixXcd c = choi(traj.maps[k]).matrix;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (c + c.adjoint()),
                                                      Eigen::EigenvaluesOnly);
    std::vector<double> fresh(es.eigenvalues().data(),
                              es.eigenvalues().data() + es.eigenvalues().size());
    ChoiSpectrumRow row{traj.times[k], {}};
    if (rows.empty()) {
      row.eigenvalues = std::move(fresh);
    } else {
      // Greedy nearest-neighbour assignment to the previous sample's tracks.
      const auto& prev = rows.back().eigenvalues;
      const std::size_t n = prev.size();
      row.eigenvalues.assign(n, 0.0);
      std::vector<bool> track_done(n, false);
      std::vector<bool> value_used(n, false);
      for (std::size_t round = 0; round < n; ++round) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0;
        std::size_t bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (track_done[i]) continue;
          for (std::size_t j = 0; j < n; ++j) {
            if (value_used[j]) continue;
            const double gap = std::abs(prev[i] - fresh[j]);
            if (gap < best) {
              best = gap;
              bi = i;
              bj = j;
            }
          }
        }
        track_done[bi] = value_used[bj] = true;
        row.eigenvalues[bi] = fresh[bj];
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace floq
