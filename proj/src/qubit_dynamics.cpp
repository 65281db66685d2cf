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

#include "grover_pmp/qubit_dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "grover_pmp/errors.hpp"
#include "grover_pmp/protocols.hpp"

namespace grover_pmp {

namespace {

constexpr Complex kI{0.0, 1.0};

// Below this |n| the sin(w dt)/w factor is replaced by its series.
constexpr double kSeriesThreshold = 1e-14;

}  // namespace

Complex inner(const QubitState& a, const QubitState& b) {
  return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

QubitState operator*(Complex s, const QubitState& v) {
  return {s * v.c0, s * v.c1};
}

QubitState operator+(const QubitState& a, const QubitState& b) {
  return {a.c0 + b.c0, a.c1 + b.c1};
}

QubitState operator-(const QubitState& a, const QubitState& b) {
  return {a.c0 - b.c0, a.c1 - b.c1};
}

QubitState PauliHamiltonian::apply(const QubitState& v) const {
  const Complex off_up{nx, -ny};
  const Complex off_down{nx, ny};
  return {(e0 + nz) * v.c0 + off_up * v.c1,
          off_down * v.c0 + (e0 - nz) * v.c1};
}

PauliHamiltonian operator+(const PauliHamiltonian& a,
                           const PauliHamiltonian& b) {
  return {a.e0 + b.e0, a.nx + b.nx, a.ny + b.ny, a.nz + b.nz};
}

PauliHamiltonian operator-(const PauliHamiltonian& a,
                           const PauliHamiltonian& b) {
  return {a.e0 - b.e0, a.nx - b.nx, a.ny - b.ny, a.nz - b.nz};
}

PauliHamiltonian operator-(const PauliHamiltonian& a) {
  return {-a.e0, -a.nx, -a.ny, -a.nz};
}

PauliHamiltonian operator*(double s, const PauliHamiltonian& a) {
  return {s * a.e0, s * a.nx, s * a.ny, s * a.nz};
}

Overlap::Overlap(double x) : x_(x), complement_(0.0) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError(fmt::format("overlap x must lie in (0, 1), got {}", x));
  }
  complement_ = std::sqrt(1.0 - x * x);
}

Overlap Overlap::from_qubits(int n) {
  if (n < 1) {
    throw DomainError(fmt::format("qubit count must be >= 1, got {}", n));
  }
  return Overlap(std::pow(2.0, -0.5 * n));
}

GroverHamiltonians grover_hamiltonians(Overlap x) {
  const double xv = x.value();
  const double cross = xv * x.complement();
  GroverHamiltonians h;
  h.hw = {0.5, 0.0, 0.0, 0.5};
  h.hs = {0.5, cross, 0.0, 0.5 * (2.0 * xv * xv - 1.0)};
  h.h0 = 0.5 * (h.hw + h.hs);
  h.hd = 0.5 * (h.hw - h.hs);
  return h;
}

PauliHamiltonian control_hamiltonian(Overlap x, double u) {
  if (!(std::abs(u) <= 1.0)) {
    throw DomainError(fmt::format("control must satisfy |u| <= 1, got {}", u));
  }
  const GroverHamiltonians h = grover_hamiltonians(x);
  return 0.5 * (1.0 + u) * h.hw + 0.5 * (1.0 - u) * h.hs;
}

QubitState initial_state(Overlap x) {
  return {Complex{x.value(), 0.0}, Complex{x.complement(), 0.0}};
}

QubitState Unitary::apply(const QubitState& v) const {
  return {m00 * v.c0 + m01 * v.c1, m10 * v.c0 + m11 * v.c1};
}

Unitary Unitary::adjoint() const {
  return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
}

Unitary operator*(const Unitary& a, const Unitary& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Unitary propagator(const PauliHamiltonian& h, double dt) {
  const double omega = std::sqrt(h.nx * h.nx + h.ny * h.ny + h.nz * h.nz);
  const Complex phase = std::exp(-kI * (h.e0 * dt));
  const double c = std::cos(omega * dt);
  const double s = omega < kSeriesThreshold ? dt : std::sin(omega * dt) / omega;
  // phase * [cos(w dt) I - i sin(w dt) (n . sigma) / w]
  const Complex a = phase * Complex{c, -s * h.nz};
  const Complex d = phase * Complex{c, s * h.nz};
  const Complex b = phase * (-kI * s) * Complex{h.nx, -h.ny};
  const Complex e = phase * (-kI * s) * Complex{h.nx, h.ny};
  return {a, b, e, d};
}

QubitState propagate_const(const QubitState& state, const PauliHamiltonian& h,
                           double dt) {
  return propagator(h, dt).apply(state);
}

Trajectory evolve(const QubitState& state, const Protocol& protocol, Overlap x,
                  int samples_per_segment) {
  if (samples_per_segment < 1) {
    throw PreconditionError(fmt::format(
        "samples_per_segment must be >= 1, got {}", samples_per_segment));
  }
  const auto n_seg = protocol.segments().size();
  Trajectory out;
  out.times.reserve(n_seg * samples_per_segment + 1);
  out.states.reserve(n_seg * samples_per_segment + 1);
  out.times.push_back(0.0);
  out.states.push_back(state);

  double t0 = 0.0;
  QubitState start = state;
  for (const Segment& seg : protocol.segments()) {
    const PauliHamiltonian h = control_hamiltonian(x, seg.u);
    for (int j = 1; j < samples_per_segment; ++j) {
      const double tau = seg.duration * j / samples_per_segment;
      out.times.push_back(t0 + tau);
      out.states.push_back(propagate_const(start, h, tau));
    }
    start = propagate_const(start, h, seg.duration);
    t0 += seg.duration;
    out.times.push_back(t0);
    out.states.push_back(start);
  }
  return out;
}

QubitState evolve_final(const QubitState& state, const Protocol& protocol,
                        Overlap x) {
  QubitState s = state;
  for (const Segment& seg : protocol.segments()) {
    s = propagate_const(s, control_hamiltonian(x, seg.u), seg.duration);
  }
  return s;
}

double fidelity(const QubitState& state) {
  return std::min(1.0, std::norm(state.c0));
}

}  // namespace grover_pmp
