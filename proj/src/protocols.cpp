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

#include "grover_pmp/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "grover_pmp/errors.hpp"

namespace grover_pmp {

using std::numbers::pi;

Protocol::Protocol(std::vector<Segment> segments, std::string label)
    : segments_(std::move(segments)), label_(std::move(label)) {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
      throw DomainError(fmt::format(
          "segment {} has non-positive duration {}", i, s.duration));
    }
    if (!(std::abs(s.u) <= 1.0)) {
      throw DomainError(
          fmt::format("segment {} has control |u| > 1 ({})", i, s.u));
    }
  }
}

double Protocol::total_time() const {
  double t = 0.0;
  for (const Segment& s : segments_) t += s.duration;
  return t;
}

std::vector<double> Protocol::boundaries() const {
  std::vector<double> b;
  b.reserve(segments_.size() + 1);
  double t = 0.0;
  b.push_back(t);
  for (const Segment& s : segments_) {
    t += s.duration;
    b.push_back(t);
  }
  return b;
}

std::size_t Protocol::segment_at(double t) const {
  if (segments_.empty()) {
    throw PreconditionError("segment_at on an empty protocol");
  }
  double end = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    end += segments_[i].duration;
    if (t < end) return i;
  }
  return segments_.size() - 1;
}

Protocol Protocol::slice(double t_begin, double t_end) const {
  if (!(t_begin <= t_end)) {
    throw PreconditionError("slice needs t_begin <= t_end");
  }
  std::vector<Segment> out;
  double start = 0.0;
  for (const Segment& s : segments_) {
    const double end = start + s.duration;
    const double lo = std::max(start, t_begin);
    const double hi = std::min(end, t_end);
    if (hi > lo) out.push_back({hi - lo, s.u});
    start = end;
  }
  return Protocol(std::move(out), label_);
}

Protocol singular_protocol(Overlap x) {
  return Protocol({{pi / x.value(), 0.0}}, "singular");
}

int grover_iterations(Overlap x) {
  return static_cast<int>(std::lround(pi / (4.0 * x.value())));
}

Protocol grover_protocol(Overlap x) {
  const int n = grover_iterations(x);
  std::vector<Segment> segs;
  segs.reserve(2 * static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    segs.push_back({pi, 1.0});
    segs.push_back({pi, -1.0});
  }
  return Protocol(std::move(segs), "grover");
}

Protocol bang_singular_bang(double t1, double t2) {
  if (!(t1 >= 0.0) || !(t2 >= 0.0)) {
    throw DomainError(fmt::format(
        "bang-singular-bang durations must be >= 0, got t1={} t2={}", t1, t2));
  }
  std::vector<Segment> segs;
  if (t1 > 0.0) segs.push_back({t1, 1.0});
  if (t2 > 0.0) segs.push_back({t2, 0.0});
  if (t1 > 0.0) segs.push_back({t1, -1.0});
  return Protocol(std::move(segs), "bsb");
}

Protocol multiple_bang(double t1, int n, double tf) {
  if (n < 1) {
    throw DomainError(fmt::format("multiple-bang needs N >= 1, got {}", n));
  }
  if (!(t1 > 0.0) || !(2.0 * t1 < tf)) {
    throw DomainError(fmt::format(
        "multiple-bang needs 0 < 2 t1 < tf, got t1={} tf={}", t1, tf));
  }
  const double inner = (tf - 2.0 * t1) / (2.0 * n);
  std::vector<Segment> segs;
  segs.reserve(2 * static_cast<std::size_t>(n) + 2);
  segs.push_back({t1, 1.0});
  for (int k = 0; k < 2 * n; ++k) {
    segs.push_back({inner, k % 2 == 0 ? -1.0 : 1.0});
  }
  segs.push_back({t1, -1.0});
  return Protocol(std::move(segs), "multibang");
}

double psi1_magnitude(double t1, double t2, Overlap x) {
  if (!(t1 >= 0.0) || !(t2 >= 0.0)) {
    throw DomainError("psi1_magnitude needs t1, t2 >= 0");
  }
  const double xv = x.value();
  const double half = std::sin(0.5 * t1);
  const double a = 0.5 * xv * t2;
  return x.complement() * (std::cos(a) * (1.0 - 4.0 * xv * xv * half * half) -
                           2.0 * xv * std::sin(a) * std::sin(t1));
}

double t2_of_t1(double t1, Overlap x) {
  const double sin_t1 = std::sin(t1);
  if (std::abs(sin_t1) < 1e-12) {
    throw DomainError(fmt::format(
        "t2(t1) is singular where sin(t1) = 0 (t1 = {})", t1));
  }
  const double xv = x.value();
  const double num = 1.0 - 2.0 * xv * xv + 2.0 * xv * xv * std::cos(t1);
  const double den = 2.0 * xv * sin_t1;
  // x = 1/sqrt(2) lands exactly on num = 0 at the optimum, where rounding
  // would otherwise pick the t2 = 2 pi / x end of the branch.
  if (std::abs(num) <= 1e-12 * std::max(1.0, std::abs(den))) return 0.0;
  // Branch with x t2 / 2 in (0, pi): principal arctan shifted by pi when
  // negative, written as pi/2 - atan(den/num) to stay accurate for small x.
  const double half_angle = 0.5 * pi - std::atan(den / num);
  return 2.0 * half_angle / xv;
}

double optimal_t1_residual(double cos_t1, Overlap x) {
  const double x2 = x.value() * x.value();
  const double b = 2.0 * x2 - 1.0;
  return 4.0 * x2 * (x2 - 1.0) * cos_t1 * cos_t1 - 2.0 * b * b * cos_t1 +
         b * b;
}

OptimalTimes optimal_times(Overlap x) {
  const double x2 = x.value() * x.value();
  const double cos_t1 = (-1.0 + 2.0 * x2) / (2.0 * (-1.0 + x2));
  if (!(cos_t1 >= -1.0 && cos_t1 <= 1.0)) {
    throw DomainError(fmt::format(
        "no bang-singular-bang optimum for x = {} (cos t1* = {} outside "
        "[-1, 1]; requires x <= sqrt(3)/2)",
        x.value(), cos_t1));
  }
  OptimalTimes t;
  t.t1 = std::acos(cos_t1);
  t.t2 = t2_of_t1(t.t1, x);
  t.tf = 2.0 * t.t1 + t.t2;
  return t;
}

OptimalTimes asymptotic_times(Overlap x) {
  const double xv = x.value();
  const double sqrt3 = std::numbers::sqrt3;
  OptimalTimes t;
  t.t1 = pi / 3.0 + xv * xv / sqrt3;
  t.t2 = pi / xv - 2.0 * sqrt3;
  // Leading orders only: the x^2 term of 2 t1 is dropped from the total.
  t.tf = pi / xv + 2.0 * pi / 3.0 - 2.0 * sqrt3;
  return t;
}

}  // namespace grover_pmp
