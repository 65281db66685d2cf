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

#include <string>
#include <vector>

#include "grover_pmp/qubit_dynamics.hpp"

namespace grover_pmp {

struct Segment {
  double duration = 0.0;
  double u = 0.0;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Piecewise-constant control u(t). Every segment has duration > 0 and
/// |u| <= 1; the constructor enforces both.
class Protocol {
 public:
  Protocol() = default;
  explicit Protocol(std::vector<Segment> segments, std::string label = {});

  [[nodiscard]] const std::vector<Segment>& segments() const {
    return segments_;
  }
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] bool empty() const { return segments_.empty(); }
  [[nodiscard]] double total_time() const;

  /// Segment start times followed by the final time (size = segments + 1).
  [[nodiscard]] std::vector<double> boundaries() const;

  /// Index of the segment active at time t, right-continuous; t = total_time
  /// maps to the last segment.
  [[nodiscard]] std::size_t segment_at(double t) const;

  /// The restriction of u(t) to [t_begin, t_end], re-based to start at 0.
  [[nodiscard]] Protocol slice(double t_begin, double t_end) const;

  friend bool operator==(const Protocol& a, const Protocol& b) {
    return a.segments_ == b.segments_;
  }

 private:
  std::vector<Segment> segments_;
  std::string label_;
};

/// Bang duration t1, singular duration t2, total tf = 2 t1 + t2.
struct OptimalTimes {
  double t1 = 0.0;
  double t2 = 0.0;
  double tf = 0.0;
};

/// u = 0 for pi / x.
[[nodiscard]] Protocol singular_protocol(Overlap x);

/// Number of Grover iterations, round(pi / (4x)).
[[nodiscard]] int grover_iterations(Overlap x);

/// round(pi/(4x)) repetitions of (pi, u=+1), (pi, u=-1).
[[nodiscard]] Protocol grover_protocol(Overlap x);

/// (t1, +1), (t2, 0), (t1, -1) with zero-length pieces dropped.
[[nodiscard]] Protocol bang_singular_bang(double t1, double t2);

/// (t1, +1), then 2N half-cycles of (tf - 2 t1) / (2N) alternating
/// -1, +1, ..., then (t1, -1).
[[nodiscard]] Protocol multiple_bang(double t1, int n, double tf);

/// Psi_1 amplitude (up to phase) after bang_singular_bang(t1, t2). Signed.
[[nodiscard]] double psi1_magnitude(double t1, double t2, Overlap x);

/// Singular duration that makes psi1_magnitude vanish, with x t2 / 2 taken in
/// (0, pi). Throws DomainError if sin(t1) = 0.
[[nodiscard]] double t2_of_t1(double t1, Overlap x);

/// cos t1* = (2x^2 - 1) / (2(x^2 - 1)); only defined for x <= sqrt(3)/2.
[[nodiscard]] OptimalTimes optimal_times(Overlap x);

/// Residual of the quadratic in cos(t1) whose root selects t1*.
[[nodiscard]] double optimal_t1_residual(double cos_t1, Overlap x);

/// Small-x expansion: t1 = pi/3 + x^2/sqrt3, t2 = pi/x - 2 sqrt3.
[[nodiscard]] OptimalTimes asymptotic_times(Overlap x);

}  // namespace grover_pmp
