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

#include "grover_pmp/pmp_verifier.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "grover_pmp/errors.hpp"

namespace grover_pmp {

namespace {

// |Psi_0(tf)| below this leaves a zero terminal costate.
constexpr double kDegenerateAmplitude = 1e-12;

// Uniform grid of `samples` points on [0, tf].
std::vector<double> uniform_grid(double tf, int samples) {
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    t[i] = tf * static_cast<double>(i) / static_cast<double>(samples - 1);
  }
  if (samples > 1) t.back() = tf;
  return t;
}

// Pi at every segment boundary, integrated backward from the terminal
// condition.
std::vector<QubitState> costates_at_boundaries(const Protocol& protocol,
                                               const QubitState& final_state,
                                               Overlap x) {
  const auto& segs = protocol.segments();
  std::vector<QubitState> pi(segs.size() + 1);
  pi.back() = terminal_costate(final_state);
  for (std::size_t k = segs.size(); k-- > 0;) {
    const PauliHamiltonian h = control_hamiltonian(x, segs[k].u);
    pi[k] = propagate_const(pi[k + 1], -h, segs[k].duration);
  }
  return pi;
}

std::vector<QubitState> states_at_boundaries(const Protocol& protocol,
                                             Overlap x) {
  const auto& segs = protocol.segments();
  std::vector<QubitState> psi(segs.size() + 1);
  psi[0] = initial_state(x);
  for (std::size_t k = 0; k < segs.size(); ++k) {
    psi[k + 1] = propagate_const(psi[k], control_hamiltonian(x, segs[k].u),
                                 segs[k].duration);
  }
  return psi;
}

// Integral over [0, T] of U(t)^dag A U(t) for U(t) = exp(-i H t). The Pauli
// vector a of A precesses as da/dt = -2 n x a.
PauliHamiltonian integrated_heisenberg(const PauliHamiltonian& h,
                                       const PauliHamiltonian& a, double T) {
  const double omega = std::sqrt(h.nx * h.nx + h.ny * h.ny + h.nz * h.nz);
  if (omega * T < 1e-300 || omega == 0.0) {
    return T * a;
  }
  const double ux = h.nx / omega;
  const double uy = h.ny / omega;
  const double uz = h.nz / omega;
  const double along = ux * a.nx + uy * a.ny + uz * a.nz;
  const double cx = uy * a.nz - uz * a.ny;
  const double cy = uz * a.nx - ux * a.nz;
  const double cz = ux * a.ny - uy * a.nx;

  const double s = std::sin(2.0 * omega * T) / (2.0 * omega);
  const double sw = std::sin(omega * T);
  const double c = sw * sw / omega;
  const double p = T - s;
  return {a.e0 * T, s * a.nx + p * along * ux - c * cx,
          s * a.ny + p * along * uy - c * cy,
          s * a.nz + p * along * uz - c * cz};
}

}  // namespace

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kSameSign:
      return "control has the same sign as the switching function";
    case ViolationKind::kNotExtremal:
      return "control is not extremal where the switching function is nonzero";
    case ViolationKind::kHcDeviation:
      return "c-Hamiltonian deviates from its mean";
    case ViolationKind::kHcPositive:
      return "c-Hamiltonian is positive";
  }
  return "unknown";
}

const char* to_string(VerificationStatus status) {
  switch (status) {
    case VerificationStatus::kPassed:
      return "passed";
    case VerificationStatus::kFailed:
      return "failed";
    case VerificationStatus::kDegenerate:
      return "degenerate terminal costate";
  }
  return "unknown";
}

void PmpConfig::validate() const {
  if (!(lambda0 > 0.0)) {
    throw DomainError(fmt::format("lambda0 must be > 0, got {}", lambda0));
  }
  if (!(tol_phi > 0.0) || !(tol_hc > 0.0)) {
    throw DomainError("PMP tolerances must be > 0");
  }
  if (samples < 2) {
    throw DomainError(fmt::format("need at least 2 samples, got {}", samples));
  }
}

QubitState terminal_costate(const QubitState& final_state) {
  return {-final_state.c0, Complex{0.0, 0.0}};
}

CostateTrajectory backward_costate(const Protocol& protocol,
                                   const QubitState& final_state, Overlap x,
                                   int samples) {
  if (samples < 2) {
    throw PreconditionError(
        fmt::format("backward_costate needs samples >= 2, got {}", samples));
  }
  CostateTrajectory out;
  if (protocol.empty()) {
    out.times = {0.0};
    out.costates = {terminal_costate(final_state)};
    return out;
  }
  const std::vector<QubitState> pi =
      costates_at_boundaries(protocol, final_state, x);
  const std::vector<double> bounds = protocol.boundaries();
  out.times = uniform_grid(protocol.total_time(), samples);
  out.costates.reserve(out.times.size());
  for (const double t : out.times) {
    const std::size_t k = protocol.segment_at(t);
    const PauliHamiltonian h = control_hamiltonian(x, protocol.segments()[k].u);
    out.costates.push_back(propagate_const(pi[k + 1], -h, bounds[k + 1] - t));
  }
  return out;
}

double switching_function(const QubitState& costate, const QubitState& state,
                          Overlap x) {
  const PauliHamiltonian hd = grover_hamiltonians(x).hd;
  return std::imag(inner(costate, hd.apply(state)));
}

double c_hamiltonian(const QubitState& costate, const QubitState& state,
                     double u, Overlap x) {
  if (!(std::abs(u) <= 1.0)) {
    throw DomainError(fmt::format("control must satisfy |u| <= 1, got {}", u));
  }
  const PauliHamiltonian h0 = grover_hamiltonians(x).h0;
  return std::imag(inner(costate, h0.apply(state))) +
         u * switching_function(costate, state, x);
}

VerificationReport verify(const Protocol& protocol, Overlap x,
                          const PmpConfig& config) {
  config.validate();
  VerificationReport report;
  report.config = config;
  if (protocol.empty()) return report;

  const auto& segs = protocol.segments();
  const std::vector<double> bounds = protocol.boundaries();
  const std::vector<QubitState> psi = states_at_boundaries(protocol, x);
  const QubitState& final_state = psi.back();
  const std::vector<QubitState> pi =
      costates_at_boundaries(protocol, final_state, x);

  const double tf = bounds.back();
  const std::vector<double> grid = uniform_grid(tf, config.samples);
  const double half_step = 0.5 * tf / (config.samples - 1);

  std::vector<double> switches;
  for (std::size_t k = 1; k < segs.size(); ++k) {
    if (segs[k].u != segs[k - 1].u) switches.push_back(bounds[k]);
  }
  const auto near_switch = [&](double t) {
    return std::any_of(switches.begin(), switches.end(), [&](double s) {
      return std::abs(t - s) <= half_step;
    });
  };

  report.records.reserve(grid.size());
  for (const double t : grid) {
    const std::size_t k = protocol.segment_at(t);
    const double u = segs[k].u;
    const PauliHamiltonian h = control_hamiltonian(x, u);
    const QubitState state = propagate_const(psi[k], h, t - bounds[k]);
    const QubitState costate = propagate_const(pi[k + 1], -h, bounds[k + 1] - t);
    report.records.push_back({t, u, switching_function(costate, state, x),
                              c_hamiltonian(costate, state, u, x)});
  }

  if (std::abs(final_state.c0) < kDegenerateAmplitude) {
    report.status = VerificationStatus::kDegenerate;
    return report;
  }

  for (const SwitchingRecord& r : report.records) {
    if (std::abs(r.phi) <= config.tol_phi || near_switch(r.t)) continue;
    const double required = r.phi < 0.0 ? 1.0 : -1.0;
    if (r.u == required) continue;
    report.sign_condition_ok = false;
    const bool same_sign = (r.u > 0.0 && r.phi > 0.0) || (r.u < 0.0 && r.phi < 0.0);
    report.violations.push_back(
        {r.t, same_sign ? ViolationKind::kSameSign : ViolationKind::kNotExtremal});
  }

  double sum = 0.0;
  for (const SwitchingRecord& r : report.records) sum += r.hc;
  report.hc_mean = sum / static_cast<double>(report.records.size());
  for (const SwitchingRecord& r : report.records) {
    const double dev = std::abs(r.hc - report.hc_mean);
    report.hc_max_dev = std::max(report.hc_max_dev, dev);
    if (dev >= config.tol_hc) {
      report.violations.push_back({r.t, ViolationKind::kHcDeviation});
    }
    if (r.hc > config.tol_hc) {
      report.hc_nonpositive_ok = false;
      report.violations.push_back({r.t, ViolationKind::kHcPositive});
    }
  }
  report.hc_constant_ok = report.hc_max_dev < config.tol_hc;

  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.t < b.t; });

  const bool ok = report.sign_condition_ok && report.hc_constant_ok &&
                  report.hc_nonpositive_ok;
  report.status = ok ? VerificationStatus::kPassed : VerificationStatus::kFailed;
  return report;
}

Protocol grid_protocol(std::span<const double> u_grid, double dt) {
  std::vector<Segment> segs;
  segs.reserve(u_grid.size());
  for (const double u : u_grid) segs.push_back({dt, u});
  return Protocol(std::move(segs), "grid");
}

std::vector<double> adjoint_gradient(std::span<const double> u_grid, double dt,
                                     Overlap x) {
  if (!(dt > 0.0)) {
    throw DomainError(fmt::format("cell width must be > 0, got {}", dt));
  }
  for (const double u : u_grid) {
    if (!(std::abs(u) <= 1.0)) {
      throw DomainError(fmt::format("control must satisfy |u| <= 1, got {}", u));
    }
  }
  const std::size_t cells = u_grid.size();
  const PauliHamiltonian hd = grover_hamiltonians(x).hd;

  std::vector<PauliHamiltonian> h(cells);
  std::vector<Unitary> step(cells);
  std::vector<QubitState> psi(cells + 1);
  psi[0] = initial_state(x);
  for (std::size_t k = 0; k < cells; ++k) {
    h[k] = control_hamiltonian(x, u_grid[k]);
    step[k] = propagator(h[k], dt);
    psi[k + 1] = step[k].apply(psi[k]);
  }

  std::vector<double> grad(cells);
  QubitState pi = terminal_costate(psi[cells]);
  for (std::size_t k = cells; k-- > 0;) {
    pi = step[k].adjoint().apply(pi);
    const PauliHamiltonian avg = integrated_heisenberg(h[k], hd, dt);
    grad[k] = std::imag(inner(pi, avg.apply(psi[k])));
  }
  return grad;
}

}  // namespace grover_pmp
