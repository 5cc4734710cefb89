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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "floq/kernel.hpp"
#include "floq/markovianity.hpp"
#include "floq/model.hpp"
#include "floq/propagator.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace floq {
namespace {

using oracle::Mat;

struct Point {
  double period = 0.0;
  SuperOperator map;
  SpectralDecomposition dec;
};

Point make_point(double e, double omega) {
  DriveParams p;
  p.E = e;
  p.omega = omega;
  p.gamma = 0.01;
  Point pt;
  pt.period = p.period();
  pt.map = floquet_map(build_two_level_model(p));
  pt.dec = spectral_decompose(pt.map);
  return pt;
}

const Point& lindbladian_point() {
  static const Point p = make_point(1.5, 1.5);
  return p;
}

const Point& non_lindbladian_point() {
  static const Point p = make_point(0.75, 1.2);
  return p;
}

std::vector<double> uniform_grid(double t_end, int n) {
  std::vector<double> g;
  for (int k = 0; k <= n; ++k) g.push_back(t_end * k / n);
  return g;
}

TEST(HFunction, ZeroEigenvalueIsConstant) {
  for (double t : {0.0, 0.3, 2.0, 17.0}) {
    EXPECT_LT(std::abs(h_function(0.0, 0.7, t) - 1.0), 1e-14);
    EXPECT_LT(std::abs(h_derivative(0.0, 0.7, t)), 1e-14);
  }
}

TEST(HFunction, BoundaryConditions) {
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 20; ++k) {
    const Complex lk(u(rng), u(rng));
    const double tau = 0.1 + std::abs(u(rng));
    EXPECT_LT(std::abs(h_function(lk, tau, 0.0) - 1.0), 1e-14);
    const double step = 1e-6;
    const Complex fd = (h_function(lk, tau, step) - h_function(lk, tau, 0.0)) / step;
    // Forward difference of a function with zero slope: error O(step * h'').
    EXPECT_LT(std::abs(fd), 1e-5 * std::max(1.0, std::abs(lk)));
    EXPECT_LT(std::abs(h_derivative(lk, tau, 0.0)), 1e-10);
  }
}

TEST(HFunction, MatchesOdeOracle) {
  std::mt19937 rng(67);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 10; ++k) {
    const Complex lk(u(rng), u(rng));
    const double tau = 0.2 + std::abs(u(rng));
    for (double t : {0.5, 2.0, 5.0}) {
      const Complex want = oracle::integrate_kernel_ode(lk, tau, t, 20000);
      EXPECT_LT(std::abs(h_function(lk, tau, t) - want), 1e-9 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST(HFunction, MarkovianLimit) {
  // The kernel integrates to tau, so the short-memory rate is tau * lambda_K.
  const double period = 2.0 * std::numbers::pi / 1.2;
  const double tau = 1e-4 * period;
  for (Complex rate : {Complex(-0.3, 0.0), Complex(-0.1, 0.8), Complex(-0.5, -1.2)}) {
    const Complex lk = rate / tau;
    for (double t : {0.25, 0.5, 1.0, 3.0}) {
      const Complex h = h_function(lk, tau, t);
      const Complex ode = oracle::integrate_kernel_ode(lk, tau, t, 400000);
      EXPECT_LT(std::abs(h - ode) / std::abs(ode), 1e-8);
      // Slow mode of mu^2 + mu / tau = lambda_K to first order in tau:
      // amplitude 1 - tau rate, exponent rate - tau rate^2.
      const Complex corrected = (1.0 - tau * rate) * std::exp((rate - tau * rate * rate) * t);
      EXPECT_LT(std::abs(h - corrected) / std::abs(corrected), 1e-5);
      if (t <= 1.0) {
        const Complex markov = std::exp(rate * t);
        EXPECT_LT(std::abs(h - markov) / std::abs(markov), 1e-3);
      }
    }
  }
}

TEST(HFunction, SmallGammaSeriesIsContinuous) {
  const double tau = 0.8;
  const double crit = -1.0 / (4.0 * tau * tau);
  for (double t : {0.5, 3.0}) {
    const Complex at = h_function(crit, tau, t);
    const Complex near = h_function(crit * (1.0 + 1e-7), tau, t);
    EXPECT_LT(std::abs(at - near), 1e-6);
    EXPECT_TRUE(std::isfinite(at.real()));
  }
}

TEST(IntegroDifferential, ClosedFormSatisfiesEquation) {
  EXPECT_EQ(verify_h_integrodifferential(0.0, 1.0, uniform_grid(5.0, 20)), 0.0);
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double period = 2.0 * std::numbers::pi / 1.2;
  for (int k = 0; k < 20; ++k) {
    Complex lk(u(rng), u(rng));
    lk *= 5.0 * std::abs(u(rng)) / std::abs(lk);
    EXPECT_LE(verify_h_integrodifferential(lk, period, uniform_grid(period, 40)), 1e-6) << lk;
  }
}

TEST(IntegroDifferential, DetectsPerturbedSolution) {
  const Complex lk(-0.7, 0.9);
  const double tau = 1.3;
  const auto grid = uniform_grid(4.0, 40);
  const double r = integrodifferential_residual(
      lk, tau, grid, [&](double t) { return 1.01 * h_function(lk, tau, t); },
      [&](double t) { return h_derivative(lk, tau, t); });
  EXPECT_GT(r, 1e-3);
  const double r0 = integrodifferential_residual(
      lk, tau, grid, [&](double t) { return h_function(lk, tau, t); },
      [&](double t) { return h_derivative(lk, tau, t); });
  EXPECT_LE(r0, 1e-6);
}

TEST(SolveLambdaK, UnitEigenvalueHasZeroRoot) {
  const auto roots = solve_lambda_k(1.0, 0.5, 5.0);
  ASSERT_FALSE(roots.empty());
  EXPECT_LT(std::abs(roots.front()), 1e-10);
}

TEST(SolveLambdaK, MarkovianLimitPrincipalLog) {
  const double period = 2.0 * std::numbers::pi / 1.2;
  const double tau = 1e-3 * period;
  const auto roots = solve_lambda_k(0.5, tau, period);
  ASSERT_FALSE(roots.empty());
  const double want = std::log(0.5) / period;
  EXPECT_LT(std::abs(tau * roots.front() - want) / std::abs(want), 1e-3);
}

TEST(SolveLambdaK, ResidualsAndOrdering) {
  std::mt19937 rng(73);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 40; ++k) {
    const double r = 0.05 + 0.95 * u(rng);
    const double arg = std::numbers::pi * (2.0 * u(rng) - 1.0);
    const Complex la = std::polar(r, k % 4 == 0 ? 0.0 : arg);
    const double period = 1.0 + 6.0 * u(rng);
    const double tau = period * std::pow(10.0, -2.0 + 3.0 * u(rng));
    const auto roots = solve_lambda_k(la, tau, period);
    ASSERT_FALSE(roots.empty());
    for (std::size_t j = 0; j < roots.size(); ++j) {
      EXPECT_LE(std::abs(h_function(roots[j], tau, period) - la), 1e-8);
      if (j > 0) EXPECT_LE(std::abs(roots[j - 1].imag()), std::abs(roots[j].imag()) + 1e-9);
    }
  }
}

TEST(SolveLambdaK, SeriesRootsAgreeWithSolver) {
  const double period = 2.0 * std::numbers::pi / 1.2;
  const Complex la = std::polar(0.8, 2.1);
  const double tau = 0.3 * period;
  const auto series = truncated_series_roots(la, tau, period);
  const auto solved = solve_lambda_k(la, tau, period);
  ASSERT_FALSE(series.empty());
  for (Complex s : series) {
    if (std::abs(h_function(s, tau, period) - la) > 1e-8) continue;
    double best = 1e9;
    for (Complex r : solved) best = std::min(best, std::abs(r - s));
    EXPECT_LT(best, 1e-6 * std::max(1.0, std::abs(s))) << s;
  }
}

TEST(SolveLambdaK, InvalidInput) {
  EXPECT_FLOQ_ERROR(solve_lambda_k(0.5, 0.0, 1.0), ErrorCode::kInvalidParams);
  EXPECT_FLOQ_ERROR(solve_lambda_k(0.5, 1.0, -1.0), ErrorCode::kInvalidParams);
}

void expect_valid_spec(const KernelSpec& spec, const SpectralDecomposition& dec, double period) {
  ASSERT_EQ(spec.lambda_k.size(), dec.components.size());
  Mat rebuilt = Mat::Zero(4, 4);
  for (std::size_t a = 0; a < dec.components.size(); ++a) {
    const auto& c = dec.components[a];
    if (c.kind == EigenKind::kUnit) EXPECT_EQ(spec.lambda_k[a], Complex(0.0));
    if (c.partner >= 0) {
      EXPECT_LT(std::abs(spec.lambda_k[a] - std::conj(spec.lambda_k[c.partner])), 1e-12);
    }
    EXPECT_LE(std::abs(h_function(spec.lambda_k[a], spec.tau_mem, period) - c.eigenvalue), 1e-8);
    rebuilt += spec.lambda_k[a] * c.projector.matrix;
  }
  EXPECT_LT((rebuilt - spec.l_k.matrix).norm(), 1e-12);
  const Mat ch = choi(spec.l_k).matrix;
  EXPECT_LT((ch - ch.adjoint()).norm(), 1e-9);
  EXPECT_TRUE(is_ccp(spec.l_k).ok);
  EXPECT_TRUE(annihilates_trace(spec.l_k));
}

TEST(BuildKernel, LindbladianPointValidAtFloor) {
  const auto& pt = lindbladian_point();
  const auto spec = build_kernel_lindbladian(pt.dec, 1e-2 * pt.period, pt.period);
  ASSERT_TRUE(spec.has_value());
  expect_valid_spec(*spec, pt.dec, pt.period);
}

TEST(BuildKernel, NonLindbladianPointNeedsMemory) {
  const auto& pt = non_lindbladian_point();
  EXPECT_FALSE(build_kernel_lindbladian(pt.dec, 1e-2 * pt.period, pt.period).has_value());
  const auto spec = build_kernel_lindbladian(pt.dec, 0.1 * pt.period, pt.period);
  ASSERT_TRUE(spec.has_value());
  expect_valid_spec(*spec, pt.dec, pt.period);
}

TEST(BuildKernel, MarkovianLimitApproachesFloquetLindbladian) {
  const auto& pt = lindbladian_point();
  const auto rep = find_floquet_lindbladian(pt.dec, pt.period);
  ASSERT_TRUE(rep.exists);
  const double tau = 1e-3 * pt.period;
  const auto spec = build_kernel_lindbladian(pt.dec, tau, pt.period);
  ASSERT_TRUE(spec.has_value());
  const auto& lf = *rep.floquet_lindbladian;
  EXPECT_LE(distance(tau * spec->l_k, lf), 1e-2 * lf.matrix.norm());
}

TEST(BuildKernel, RejectsUnpairedDecomposition) {
  Eigen::VectorXcd d(4);
  d << 1.0, -0.3, 0.5, 0.2;
  const auto dec = spectral_decompose(SuperOperator(2, d.asDiagonal().toDenseMatrix()));
  EXPECT_FLOQ_ERROR(build_kernel_lindbladian(dec, 1.0, 1.0), ErrorCode::kDefectiveDecomposition);
}

TEST(MinimalMemoryTime, LindbladianPointIsZero) {
  const auto& pt = lindbladian_point();
  const auto rep = minimal_memory_time(pt.dec, pt.period);
  EXPECT_EQ(rep.tau_min, 0.0);
  EXPECT_DOUBLE_EQ(rep.resolution_floor, 1e-2 * pt.period);
  ASSERT_EQ(rep.scan.size(), 40u);
  EXPECT_TRUE(rep.scan.front().valid);
  EXPECT_NEAR(rep.scan.back().tau, 10.0 * pt.period, 1e-9 * pt.period);
}

TEST(MinimalMemoryTime, NonLindbladianPointBisectionContract) {
  const auto& pt = non_lindbladian_point();
  MemoryScanOptions opts;
  const auto rep = minimal_memory_time(pt.dec, pt.period, opts);
  EXPECT_GE(rep.tau_min, 1e-2 * pt.period);
  ASSERT_TRUE(rep.spec_at_tau_min.has_value());
  EXPECT_DOUBLE_EQ(rep.spec_at_tau_min->tau_mem, rep.tau_min);
  expect_valid_spec(*rep.spec_at_tau_min, pt.dec, pt.period);
  const double tol = opts.refine_tol * pt.period;
  EXPECT_LE(rep.tau_min - rep.tau_invalid_below, tol + 1e-15);
  EXPECT_FALSE(build_kernel_lindbladian(pt.dec, rep.tau_invalid_below, pt.period).has_value());
  EXPECT_FALSE(build_kernel_lindbladian(pt.dec, rep.tau_min - tol, pt.period).has_value());

  const auto again = minimal_memory_time(pt.dec, pt.period, opts);
  EXPECT_EQ(again.tau_min, rep.tau_min);
  ASSERT_EQ(again.scan.size(), rep.scan.size());
  for (std::size_t k = 0; k < rep.scan.size(); ++k) {
    EXPECT_EQ(again.scan[k].tau, rep.scan[k].tau);
    EXPECT_EQ(again.scan[k].valid, rep.scan[k].valid);
  }
}

TEST(KernelEvolution, StroboscopicCompositionMatchesOdeOracle) {
  const auto& pt = non_lindbladian_point();
  const auto rep = minimal_memory_time(pt.dec, pt.period);
  ASSERT_TRUE(rep.spec_at_tau_min.has_value());
  const auto& spec = *rep.spec_at_tau_min;
  EXPECT_LT(distance(kernel_map_at(spec, pt.dec, pt.period, pt.period), pt.map), 1e-8);
  EXPECT_LT(distance(kernel_map_at(spec, pt.dec, pt.period, 2.0 * pt.period), pt.map * pt.map), 1e-8);
  const double s = 0.4 * pt.period;
  EXPECT_LT(distance(kernel_map_at(spec, pt.dec, pt.period, pt.period + s),
                     kernel_map_at(spec, pt.dec, pt.period, s) * pt.map),
            1e-10);

  // Full map equation P' = G, G' = L_K P - G / tau integrated by RK4.
  const Mat l = spec.l_k.matrix;
  const double tau = spec.tau_mem;
  const int steps = 20000;
  const double dt = s / steps;
  Mat p = Mat::Identity(4, 4), g = Mat::Zero(4, 4);
  auto f = [&](const Mat& pp, const Mat& gg) { return std::pair<Mat, Mat>{gg, l * pp - gg / tau}; };
  for (int k = 0; k < steps; ++k) {
    const auto [a1, b1] = f(p, g);
    const auto [a2, b2] = f(p + 0.5 * dt * a1, g + 0.5 * dt * b1);
    const auto [a3, b3] = f(p + 0.5 * dt * a2, g + 0.5 * dt * b2);
    const auto [a4, b4] = f(p + dt * a3, g + dt * b3);
    p += dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    g += dt / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
  }
  EXPECT_LT((kernel_map_at(spec, pt.dec, pt.period, s).matrix - p).norm(), 1e-9);
}

TEST(KernelEvolution, TracePreservingAndCptAtLongerMemory) {
  const auto& pt = non_lindbladian_point();
  const auto spec = build_kernel_lindbladian(pt.dec, 0.1 * pt.period, pt.period);
  ASSERT_TRUE(spec.has_value());
  const auto traj = kernel_evolution(*spec, pt.dec, pt.period, 2.0 * pt.period, 201);
  ASSERT_EQ(traj.maps.size(), 201u);
  EXPECT_LT((traj.maps.front().matrix - Mat::Identity(4, 4)).norm(), 1e-12);
  for (const auto& m : traj.maps) EXPECT_TRUE(is_trace_preserving(m, 1e-8));
  for (const auto& row : choi_eigenvalue_trajectory(traj)) {
    for (double v : row.eigenvalues) EXPECT_GE(v, -1e-6) << row.t;
  }
  EXPECT_GE(kernel_trajectory_min_choi(*spec, pt.dec, pt.period, 2.0 * pt.period, 201), -1e-6);
}

}  // namespace
}  // namespace floq
