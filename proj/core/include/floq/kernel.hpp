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

#include <functional>
#include <optional>
#include <vector>

#include "floq/propagator.hpp"
#include "floq/spectral.hpp"
#include "floq/superop.hpp"

namespace floq {

/// Exponential-kernel master equation
///   d/dt rho(t) = int_0^t e^{(s - t)/tau_mem} L_K rho(s) ds
/// with L_K = sum_a lambda^K_a M_a sharing the spectral projectors of P(T).
struct KernelSpec {
  double tau_mem = 0.0;
  std::vector<Complex> lambda_k;  // aligned with SpectralDecomposition::components
  SuperOperator l_k;
  std::vector<double> residuals;  // |h_a(T) - lambda_a|
};

struct KernelOptions {
  int n0 = 60;
  int candidates_per_eigenvalue = 3;
  double ccp_tol = 1e-9;
  double residual_tol = 1e-8;
};

struct ScanPoint {
  double tau = 0.0;
  bool valid = false;
};

struct KernelReport {
  double tau_min = 0.0;
  std::optional<KernelSpec> spec_at_tau_min;
  std::vector<ScanPoint> scan;
  /// Bisection evaluations, in order.
  std::vector<ScanPoint> refinement;
  double resolution_floor = 0.0;
  /// Largest memory time found invalid during refinement (0 when tau_min = 0).
  double tau_invalid_below = 0.0;
  bool candidate_cap_hit = false;
};

struct MemoryScanOptions {
  int grid_points = 40;
  double tau_lo = 1e-2;   // in units of T
  double tau_hi = 10.0;   // in units of T
  double refine_tol = 1e-2;  // in units of T
  /// Evaluate every grid point; otherwise stop at the first valid one.
  bool full_scan = true;
  KernelOptions kernel;
};

/// h(t) = e^{-t/2tau} [cosh(G t) + sinh(G t)/(2 G tau)], G = sqrt(1/(4 tau^2) + lambda_K).
Complex h_function(Complex lambda_k, double tau_mem, double t);

/// dh/dt evaluated analytically.
Complex h_derivative(Complex lambda_k, double tau_mem, double t);

/// Max |h'(t_i) - int_0^{t_i} e^{(s - t_i)/tau} lambda_K h(s) ds| over the grid,
/// with the integral by adaptive Gauss-Kronrod quadrature.
double verify_h_integrodifferential(Complex lambda_k, double tau_mem,
                                    const std::vector<double>& grid);

/// Same residual for an arbitrary candidate h and its derivative.
double integrodifferential_residual(Complex lambda_k, double tau_mem,
                                    const std::vector<double>& grid,
                                    const std::function<Complex(double)>& h,
                                    const std::function<Complex(double)>& dh);

/// Raw roots lambda_K of the degree-n0 truncation of h(T) = lambda_a,
/// before any polishing.
std::vector<Complex> truncated_series_roots(Complex lambda_a, double tau_mem, double period,
                                            int n0 = 60);

/// Solutions lambda_K of h(T) = lambda_a with |h(T) - lambda_a| <= 1e-8,
/// sorted by |Im lambda_K| then |lambda_K|. Throws NoConvergedRoot.
std::vector<Complex> solve_lambda_k(Complex lambda_a, double tau_mem, double period, int n0 = 60);

/// First kernel Lindbladian (ascending total |Im lambda_K|) passing
/// Hermiticity preservation, trace annihilation and conditional complete
/// positivity; nullopt when none does.
std::optional<KernelSpec> build_kernel_lindbladian(const SpectralDecomposition& dec,
                                                   double tau_mem, double period,
                                                   const KernelOptions& options = {},
                                                   bool* cap_hit = nullptr);

/// Geometric tau scan plus bisection. Throws NoValidKernelInRange.
KernelReport minimal_memory_time(const SpectralDecomposition& dec, double period,
                                 const MemoryScanOptions& options = {});

/// P~(t) = sum_a h_a(t) M_a within a period, memory erased at multiples of T.
MapTrajectory kernel_evolution(const KernelSpec& spec, const SpectralDecomposition& dec,
                               double period, double t_end, int samples);

SuperOperator kernel_map_at(const KernelSpec& spec, const SpectralDecomposition& dec,
                            double period, double t);

/// Smallest Choi eigenvalue of P~(t) over a uniform grid on [0, t_end]. A
/// Lindblad-form L_K does not by itself make the trajectory CP-T, so this is
/// the separate check.
double kernel_trajectory_min_choi(const KernelSpec& spec, const SpectralDecomposition& dec,
                                  double period, double t_end, int samples);

}  // namespace floq
