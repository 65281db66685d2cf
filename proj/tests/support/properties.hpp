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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "grover_pmp/pmp_verifier.hpp"
#include "grover_pmp/protocols.hpp"
#include "grover_pmp/qubit_dynamics.hpp"
#include "support/oracles.hpp"

namespace oracle {

struct RandomCase {
  double x = 0.5;
  grover_pmp::Protocol protocol;
};

// Random overlap and a protocol of 1 to 6 segments; a third of the controls
// sit on the bounds.
inline RandomCase random_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> xs(0.05, 0.9);
  std::uniform_int_distribution<int> count(1, 6);
  std::uniform_real_distribution<double> dur(0.05, 3.0);
  std::uniform_real_distribution<double> us(-1.0, 1.0);
  std::uniform_int_distribution<int> kind(0, 2);
  RandomCase c;
  c.x = xs(rng);
  std::vector<grover_pmp::Segment> segs(static_cast<std::size_t>(count(rng)));
  for (auto& s : segs) {
    s.duration = dur(rng);
    const int k = kind(rng);
    s.u = k == 0 ? 1.0 : (k == 1 ? -1.0 : us(rng));
  }
  c.protocol = grover_pmp::Protocol(std::move(segs), "random");
  return c;
}

struct PropertyErrors {
  double norm = 0.0;
  double composition = 0.0;
  double reversibility = 0.0;
  double hc_constancy = 0.0;
  double rk4 = 0.0;
};

inline double state_distance(const grover_pmp::QubitState& a, const grover_pmp::QubitState& b) {
  return std::hypot(std::abs(a.c0 - b.c0), std::abs(a.c1 - b.c1));
}

inline PropertyErrors property_errors(const RandomCase& c) {
  using namespace grover_pmp;
  const Overlap x(c.x);
  const QubitState start = initial_state(x);
  PropertyErrors e;

  const Trajectory traj = evolve(start, c.protocol, x, 8);
  for (const QubitState& s : traj.states)
    e.norm = std::max(e.norm, std::abs(s.norm_squared() - 1.0));

  QubitState back = traj.states.back();
  const auto& segs = c.protocol.segments();
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    const PauliHamiltonian h = control_hamiltonian(x, it->u);
    // Splitting a segment in two must not change its propagator.
    const Unitary whole = propagator(h, it->duration);
    const Unitary split = propagator(h, 0.37 * it->duration) * propagator(h, 0.63 * it->duration);
    e.composition = std::max({e.composition, std::abs(whole.m00 - split.m00),
                              std::abs(whole.m01 - split.m01), std::abs(whole.m10 - split.m10),
                              std::abs(whole.m11 - split.m11)});
    back = propagate_const(back, h, -it->duration);
  }
  e.reversibility = state_distance(back, start);

  const VerificationReport report = verify(c.protocol, x, PmpConfig{1.0, 1e-6, 1e-6, 400});
  for (std::size_t k = 0; k < segs.size(); ++k) {
    double lo = 1e300;
    double hi = -1e300;
    for (const SwitchingRecord& r : report.records) {
      if (c.protocol.segment_at(r.t) != k) continue;
      lo = std::min(lo, r.hc);
      hi = std::max(hi, r.hc);
    }
    if (hi >= lo) e.hc_constancy = std::max(e.hc_constancy, hi - lo);
  }

  const int steps = static_cast<int>(std::ceil(3.0 / 1e-3));
  Vec psi = start_vector(c.x);
  for (const Segment& s : segs) {
    const Protocol one({s}, "one");
    const int n = std::max(1, static_cast<int>(std::ceil(s.duration / 3.0 * steps)));
    psi = rk4_evolve(psi, one, c.x, n);
  }
  e.rk4 = std::hypot(std::abs(psi[0] - traj.states.back().c0),
                     std::abs(psi[1] - traj.states.back().c1));
  return e;
}

}  // namespace oracle
