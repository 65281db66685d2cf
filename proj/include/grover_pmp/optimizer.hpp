// Copyright 2026 The grover-pmp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <vector>

#include "grover_pmp/qubit_dynamics.hpp"

namespace grover_pmp {

struct ScalarOptResult {
  double best_param = 0.0;
  double best_fidelity = 0.0;
  int evaluations = 0;
};

/// Maximizes `objective` over [lo, hi]: a uniform scan of `grid_points`
/// points (ties go to the smallest parameter), then golden-section search on
/// the bracket around the best grid point until it is narrower than `tol`.
[[nodiscard]] ScalarOptResult maximize_scalar(
    const std::function<double(double)>& objective, double lo, double hi,
    int grid_points = 400, double tol = 1e-8);

/// Best t1 in [0, tf/2] for bang_singular_bang(t1, tf - 2 t1). The objective
/// is the evolved fidelity; no closed forms are used.
[[nodiscard]] ScalarOptResult optimize_t1_bsb(Overlap x, double tf);

/// Best t1 in (0, tf/2) for multiple_bang(t1, n, tf).
[[nodiscard]] ScalarOptResult optimize_t1_multibang(Overlap x, double tf,
                                                    int n);

struct GradientOptions {
  int max_iter = 500;
  double armijo = 1e-4;
  double shrink = 0.5;
  double initial_step = 1.0;
  double min_step = 1e-12;
  double tolerance = 1e-6;  // on the L2 norm of the projected gradient
};

struct GradOptResult {
  std::vector<double> u_grid;
  std::vector<double> fidelity_history;  // initial control first
  int iterations = 0;
  double projected_gradient_norm = 0.0;
};

/// Projected gradient ascent on fidelity for a control with `cells` uniform
/// cells over [0, tf], starting from u = 0. Steps follow the L2 (per unit
/// time) gradient, i.e. the switching function; every iterate is clipped to
/// [-1, 1] and accepted only under the Armijo condition. Throws DomainError
/// if cells < 10 or tf <= 0.
[[nodiscard]] GradOptResult gradient_descent(Overlap x, double tf, int cells,
                                             const GradientOptions& options = {});

/// L2 norm of u - clip(u - G) where G is the per-unit-time gradient.
[[nodiscard]] double projected_gradient_norm(const std::vector<double>& u,
                                             const std::vector<double>& gradient,
                                             double dt);

struct SweepRow {
  int n = 0;
  double x = 0.0;
  double tf_optimal = 0.0;
  double tf_singular = 0.0;
  double tf_grover = 0.0;
  double diff = 0.0;             // tf_singular - tf_optimal
  double grover_fidelity = 0.0;  // informational
};

/// One row per qubit count in [n_min, n_max], x = 2^(-n/2). Throws
/// DomainError unless 1 <= n_min <= n_max <= 60.
[[nodiscard]] std::vector<SweepRow> sweep_times(int n_min, int n_max);

/// Fidelity after round(pi/(4x)) Grover cycles, using repeated squaring of
/// the one-cycle propagator.
[[nodiscard]] double grover_fidelity(Overlap x);

}  // namespace grover_pmp
