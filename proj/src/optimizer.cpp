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

#include "grover_pmp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "grover_pmp/errors.hpp"
#include "grover_pmp/pmp_verifier.hpp"
#include "grover_pmp/protocols.hpp"

namespace grover_pmp {

namespace {

using std::numbers::pi;

// Fidelity of a uniform-grid control, forward pass only.
double grid_fidelity(const std::vector<double>& u, double dt, Overlap x) {
  QubitState s = initial_state(x);
  for (const double v : u) s = propagate_const(s, control_hamiltonian(x, v), dt);
  return fidelity(s);
}

double clip_unit(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

ScalarOptResult maximize_scalar(const std::function<double(double)>& objective,
                                double lo, double hi, int grid_points,
                                double tol) {
  if (!(hi >= lo) || grid_points < 2 || !(tol > 0.0)) {
    throw PreconditionError("maximize_scalar: bad interval or grid");
  }
  ScalarOptResult best;
  best.best_fidelity = -1.0;
  const double step = (hi - lo) / (grid_points - 1);
  int best_index = 0;
  for (int i = 0; i < grid_points; ++i) {
    const double t = i == grid_points - 1 ? hi : lo + step * i;
    const double f = objective(t);
    ++best.evaluations;
    if (f > best.best_fidelity) {
      best.best_fidelity = f;
      best.best_param = t;
      best_index = i;
    }
  }

  double a = std::max(lo, lo + step * (best_index - 1));
  double b = std::min(hi, lo + step * (best_index + 1));
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  best.evaluations += 2;
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = objective(d);
    }
    ++best.evaluations;
  }
  const double t = 0.5 * (a + b);
  const double f = objective(t);
  ++best.evaluations;
  if (f > best.best_fidelity) {
    best.best_fidelity = f;
    best.best_param = t;
  }
  best.best_fidelity = std::clamp(best.best_fidelity, 0.0, 1.0);
  return best;
}

ScalarOptResult optimize_t1_bsb(Overlap x, double tf) {
  if (!(tf > 0.0)) {
    throw DomainError(fmt::format("final time must be > 0, got {}", tf));
  }
  const QubitState s0 = initial_state(x);
  const auto objective = [&](double t1) {
    const double t2 = std::max(0.0, tf - 2.0 * t1);
    return fidelity(evolve_final(s0, bang_singular_bang(t1, t2), x));
  };
  return maximize_scalar(objective, 0.0, 0.5 * tf);
}

ScalarOptResult optimize_t1_multibang(Overlap x, double tf, int n) {
  if (!(tf > 0.0)) {
    throw DomainError(fmt::format("final time must be > 0, got {}", tf));
  }
  if (n < 1) {
    throw DomainError(fmt::format("multiple-bang needs N >= 1, got {}", n));
  }
  constexpr int kGrid = 400;
  const QubitState s0 = initial_state(x);
  const auto objective = [&](double t1) {
    return fidelity(evolve_final(s0, multiple_bang(t1, n, tf), x));
  };
  // Keep the search strictly inside (0, tf/2).
  const double half = 0.5 * tf;
  return maximize_scalar(objective, half / (kGrid + 1),
                         half * kGrid / (kGrid + 1), kGrid);
}

double projected_gradient_norm(const std::vector<double>& u,
                               const std::vector<double>& gradient, double dt) {
  double sum = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double p = u[k] - clip_unit(u[k] - gradient[k] / dt);
    sum += p * p;
  }
  return std::sqrt(sum * dt);
}

GradOptResult gradient_descent(Overlap x, double tf, int cells,
                               const GradientOptions& options) {
  if (cells < 10) {
    throw DomainError(fmt::format("need at least 10 cells, got {}", cells));
  }
  if (!(tf > 0.0)) {
    throw DomainError(fmt::format("final time must be > 0, got {}", tf));
  }
  const double dt = tf / cells;
  GradOptResult out;
  out.u_grid.assign(static_cast<std::size_t>(cells), 0.0);
  double fid = grid_fidelity(out.u_grid, dt, x);
  out.fidelity_history.push_back(fid);

  std::vector<double> trial(out.u_grid.size());
  std::vector<double> grad = adjoint_gradient(out.u_grid, dt, x);
  out.projected_gradient_norm = projected_gradient_norm(out.u_grid, grad, dt);

  while (out.iterations < options.max_iter &&
         out.projected_gradient_norm >= options.tolerance) {
    // J = -F/2; Armijo on J along the projected path.
    const double cost = -0.5 * fid;
    double step = options.initial_step;
    bool accepted = false;
    double trial_fid = fid;
    while (step >= options.min_step) {
      double slope = 0.0;
      for (std::size_t k = 0; k < trial.size(); ++k) {
        trial[k] = clip_unit(out.u_grid[k] - step * grad[k] / dt);
        slope += grad[k] * (trial[k] - out.u_grid[k]);
      }
      trial_fid = grid_fidelity(trial, dt, x);
      if (-0.5 * trial_fid <= cost + options.armijo * slope) {
        accepted = true;
        break;
      }
      step *= options.shrink;
    }
    if (!accepted) break;
    // Armijo guarantees no increase in J up to rounding; keep the history
    // monotone even when the accepted step is at the rounding floor.
    if (trial_fid < fid) break;
    out.u_grid.swap(trial);
    fid = trial_fid;
    out.fidelity_history.push_back(fid);
    ++out.iterations;
    grad = adjoint_gradient(out.u_grid, dt, x);
    out.projected_gradient_norm = projected_gradient_norm(out.u_grid, grad, dt);
  }
  return out;
}

double grover_fidelity(Overlap x) {
  const GroverHamiltonians h = grover_hamiltonians(x);
  Unitary cycle = propagator(h.hs, pi) * propagator(h.hw, pi);
  Unitary total;
  for (long n = grover_iterations(x); n > 0; n >>= 1) {
    if (n & 1) total = cycle * total;
    cycle = cycle * cycle;
  }
  return fidelity(total.apply(initial_state(x)));
}

std::vector<SweepRow> sweep_times(int n_min, int n_max) {
  if (!(1 <= n_min && n_min <= n_max && n_max <= 60)) {
    throw DomainError(fmt::format(
        "sweep needs 1 <= n_min <= n_max <= 60, got [{}, {}]", n_min, n_max));
  }
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (int n = n_min; n <= n_max; ++n) {
    const Overlap x = Overlap::from_qubits(n);
    SweepRow row;
    row.n = n;
    row.x = x.value();
    row.tf_optimal = optimal_times(x).tf;
    row.tf_singular = pi / x.value();
    row.tf_grover = 2.0 * pi * grover_iterations(x);
    row.diff = row.tf_singular - row.tf_optimal;
    row.grover_fidelity = grover_fidelity(x);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace grover_pmp
