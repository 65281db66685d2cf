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

#include "grover_pmp/bloch_geometric.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "grover_pmp/errors.hpp"

namespace grover_pmp {

namespace {

using std::numbers::pi;
constexpr double kTwoPi = 2.0 * pi;

void check_theta(const BlochPoint& p, const char* what) {
  if (!(p.theta >= kPoleGuard && p.theta <= pi - kPoleGuard)) {
    throw PoleError(fmt::format("{}: theta = {} is inside the pole guard band",
                                what, p.theta));
  }
}

double cot(double theta) { return std::cos(theta) / std::sin(theta); }

}  // namespace

TangentVector operator+(const TangentVector& a, const TangentVector& b) {
  return {a.d_theta + b.d_theta, a.d_phi + b.d_phi};
}

TangentVector operator-(const TangentVector& a, const TangentVector& b) {
  return {a.d_theta - b.d_theta, a.d_phi - b.d_phi};
}

TangentVector operator*(double s, const TangentVector& a) {
  return {s * a.d_theta, s * a.d_phi};
}

double wrap_angle(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

BlochPoint state_to_bloch(const QubitState& state) {
  const double r0 = std::abs(state.c0);
  const double r1 = std::abs(state.c1);
  BlochPoint p;
  p.theta = 2.0 * std::atan2(r1, r0);
  if (r0 == 0.0 || r1 == 0.0) {
    p.phi = 0.0;
  } else {
    p.phi = wrap_angle(std::arg(state.c1) - std::arg(state.c0));
  }
  return p;
}

QubitState bloch_to_state(const BlochPoint& p) {
  return {Complex{std::cos(0.5 * p.theta), 0.0},
          std::sin(0.5 * p.theta) * std::polar(1.0, p.phi)};
}

TangentVector pauli_field(PauliAxis which, const BlochPoint& p) {
  switch (which) {
    case PauliAxis::kZ:
      return {0.0, 2.0};
    case PauliAxis::kX:
      check_theta(p, "V_x");
      return {-2.0 * std::sin(p.phi), -2.0 * std::cos(p.phi) * cot(p.theta)};
    case PauliAxis::kY:
      check_theta(p, "V_y");
      return {2.0 * std::cos(p.phi), -2.0 * std::sin(p.phi) * cot(p.theta)};
  }
  return {};
}

TangentVector hamiltonian_field(const PauliHamiltonian& h, const BlochPoint& p) {
  TangentVector v = h.nz * pauli_field(PauliAxis::kZ, p);
  if (h.nx != 0.0) v = v + h.nx * pauli_field(PauliAxis::kX, p);
  if (h.ny != 0.0) v = v + h.ny * pauli_field(PauliAxis::kY, p);
  return v;
}

ProblemFields problem_fields(Overlap x, const BlochPoint& p) {
  check_theta(p, "problem_fields");
  const double xv = x.value();
  const double cross = xv * x.complement();
  ProblemFields out;
  out.Y = {0.0, 1.0};
  out.X = {-2.0 * cross * std::sin(p.phi),
           (2.0 * xv * xv - 1.0) - 2.0 * cross * std::cos(p.phi) * cot(p.theta)};
  out.f = 0.5 * (out.X + out.Y);
  out.g = 0.5 * (out.Y - out.X);
  return out;
}

TangentVector reduced_rhs(Overlap x, const BlochPoint& p, double u) {
  if (!(std::abs(u) <= 1.0)) {
    throw DomainError(fmt::format("control must satisfy |u| <= 1, got {}", u));
  }
  check_theta(p, "reduced_rhs");
  const double xv = x.value();
  const double r = x.complement();
  const double cross = xv * r;
  const double s = std::sin(p.phi);
  const double c_cot = std::cos(p.phi) * cot(p.theta);
  const TangentVector f{-cross * s, xv * xv - cross * c_cot};
  const TangentVector g{cross * s, (1.0 - xv * xv) + cross * c_cot};
  return {f.d_theta + u * g.d_theta, f.d_phi + u * g.d_phi};
}

AlphaBeta alpha_beta(Overlap x, const BlochPoint& p) {
  check_theta(p, "alpha_beta");
  const double s = std::sin(p.phi);
  if (!(std::abs(s) >= kPoleGuard)) {
    throw PoleError(fmt::format(
        "alpha_beta: sin(phi) = {} is inside the guard band", s));
  }
  const double xv = x.value();
  const double r = x.complement();
  const double ct = cot(p.theta);
  const double c = std::cos(p.phi);
  return {-r * (xv * ct / s + r * c / s), -xv * r * ct / s + xv * xv * c / s};
}

double singular_arc_theta(double phi, Overlap x) {
  const double cot_theta = -(x.complement() / x.value()) * std::cos(phi);
  return std::atan2(1.0, cot_theta);
}

const char* to_string(ArcKind kind) {
  switch (kind) {
    case ArcKind::kFast:
      return "fast";
    case ArcKind::kSlow:
      return "slow";
    case ArcKind::kNotSingular:
      return "not_singular";
  }
  return "unknown";
}

double lie_derivative_alpha(Overlap x, const BlochPoint& p,
                            const TangentVector& field, double step) {
  const BlochPoint fwd{p.theta + step * field.d_theta,
                       p.phi + step * field.d_phi};
  const BlochPoint bwd{p.theta - step * field.d_theta,
                       p.phi - step * field.d_phi};
  return (alpha_beta(x, fwd).alpha - alpha_beta(x, bwd).alpha) / (2.0 * step);
}

ArcClassification classify_arc(Overlap x, const BlochPoint& p) {
  const double alpha = alpha_beta(x, p).alpha;
  if (!(std::abs(alpha) < 1e-8)) {
    throw PreconditionError(fmt::format(
        "classify_arc: point is off the singular arc (alpha = {})", alpha));
  }
  const ProblemFields fields = problem_fields(x, p);
  ArcClassification out;
  out.l_x_alpha = lie_derivative_alpha(x, p, fields.X);
  out.l_y_alpha = lie_derivative_alpha(x, p, fields.Y);
  if (out.l_x_alpha < 0.0 && out.l_y_alpha > 0.0) {
    out.kind = ArcKind::kFast;
  } else if (out.l_x_alpha > 0.0 && out.l_y_alpha < 0.0) {
    out.kind = ArcKind::kSlow;
  } else {
    out.kind = ArcKind::kNotSingular;
  }
  if (out.kind != ArcKind::kNotSingular) {
    // d alpha = 0 = L_f alpha + u L_g alpha, with f = (X+Y)/2, g = (Y-X)/2.
    out.singular_u =
        (out.l_x_alpha + out.l_y_alpha) / (out.l_x_alpha - out.l_y_alpha);
  }
  return out;
}

BlochPoint initial_bloch_point(Overlap x) {
  return {2.0 * std::atan(x.complement() / x.value()), 0.0};
}

GroverThetaAnalysis grover_theta_analysis(Overlap x) {
  GroverThetaAnalysis out;
  out.delta_theta_max = 4.0 * x.value() * x.complement();
  out.n_estimate = initial_bloch_point(x).theta / out.delta_theta_max;
  return out;
}

BlochTrajectory project_trajectory(const Trajectory& trajectory) {
  BlochTrajectory out;
  out.times = trajectory.times;
  out.theta.reserve(trajectory.states.size());
  out.phi.reserve(trajectory.states.size());
  for (const QubitState& s : trajectory.states) {
    const BlochPoint p = state_to_bloch(s);
    double phi = p.phi;
    if (!out.phi.empty()) {
      const double prev = out.phi.back();
      phi += kTwoPi * std::round((prev - phi) / kTwoPi);
    }
    out.theta.push_back(p.theta);
    out.phi.push_back(phi);
  }
  return out;
}

BlochTrajectory integrate_reduced(Overlap x, const Protocol& protocol,
                                  const BlochPoint& start, double max_step) {
  if (!(max_step > 0.0)) {
    throw PreconditionError("integrate_reduced needs max_step > 0");
  }
  BlochTrajectory out;
  double t = 0.0;
  double theta = start.theta;
  double phi = start.phi;
  out.times.push_back(t);
  out.theta.push_back(theta);
  out.phi.push_back(phi);

  for (const Segment& seg : protocol.segments()) {
    const auto steps =
        static_cast<long>(std::max(1.0, std::ceil(seg.duration / max_step)));
    const double h = seg.duration / static_cast<double>(steps);
    const double t0 = t;
    const auto rhs = [&](double th, double ph) {
      return reduced_rhs(x, BlochPoint{th, ph}, seg.u);
    };
    for (long j = 1; j <= steps; ++j) {
      const TangentVector k1 = rhs(theta, phi);
      const TangentVector k2 =
          rhs(theta + 0.5 * h * k1.d_theta, phi + 0.5 * h * k1.d_phi);
      const TangentVector k3 =
          rhs(theta + 0.5 * h * k2.d_theta, phi + 0.5 * h * k2.d_phi);
      const TangentVector k4 = rhs(theta + h * k3.d_theta, phi + h * k3.d_phi);
      theta += h / 6.0 * (k1.d_theta + 2.0 * k2.d_theta + 2.0 * k3.d_theta +
                          k4.d_theta);
      phi += h / 6.0 * (k1.d_phi + 2.0 * k2.d_phi + 2.0 * k3.d_phi + k4.d_phi);
      check_theta({theta, phi}, "integrate_reduced");
      t = j == steps ? t0 + seg.duration : t0 + h * static_cast<double>(j);
      out.times.push_back(t);
      out.theta.push_back(theta);
      out.phi.push_back(phi);
    }
  }
  return out;
}

std::vector<ArcSample> singular_arc_samples(Overlap x, int count) {
  if (count < 1) {
    throw PreconditionError("singular_arc_samples needs count >= 1");
  }
  std::vector<ArcSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double phi = kTwoPi * static_cast<double>(i) / count;
    out.push_back({phi, singular_arc_theta(phi, x)});
  }
  return out;
}

}  // namespace grover_pmp
