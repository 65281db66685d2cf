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

#include <optional>
#include <vector>

#include "grover_pmp/protocols.hpp"
#include "grover_pmp/qubit_dynamics.hpp"

namespace grover_pmp {

/// Width of the excluded band around theta = 0 and theta = pi, where the
/// cot(theta) terms of the reduced dynamics diverge. Also applied to
/// |sin(phi)| in the [f, g] decomposition.
inline constexpr double kPoleGuard = 1e-3;

/// State modulo global phase: [cos(theta/2), sin(theta/2) e^{i phi}]^T.
/// theta in [0, pi], phi in [0, 2 pi); phi = 0 at the poles.
struct BlochPoint {
  double theta = 0.0;
  double phi = 0.0;
};

/// Coefficients of d/dtheta and d/dphi.
struct TangentVector {
  double d_theta = 0.0;
  double d_phi = 0.0;
};

TangentVector operator+(const TangentVector& a, const TangentVector& b);
TangentVector operator-(const TangentVector& a, const TangentVector& b);
TangentVector operator*(double s, const TangentVector& a);

[[nodiscard]] BlochPoint state_to_bloch(const QubitState& state);
[[nodiscard]] QubitState bloch_to_state(const BlochPoint& p);

/// Wraps an angle into [0, 2 pi).
[[nodiscard]] double wrap_angle(double phi);

enum class PauliAxis { kX, kY, kZ };

/// Image of a Pauli matrix as a vector field. V_x and V_y throw PoleError
/// inside the pole guard band.
[[nodiscard]] TangentVector pauli_field(PauliAxis which, const BlochPoint& p);

/// nx V_x + ny V_y + nz V_z; the identity part generates a global phase and
/// drops out.
[[nodiscard]] TangentVector hamiltonian_field(const PauliHamiltonian& h,
                                              const BlochPoint& p);

struct ProblemFields {
  TangentVector X;  // u = -1, from Hs
  TangentVector Y;  // u = +1, from Hw
  TangentVector f;  // drift, from H0
  TangentVector g;  // control, from Hd
};

[[nodiscard]] ProblemFields problem_fields(Overlap x, const BlochPoint& p);

/// f(p) + u g(p). Throws DomainError if |u| > 1, PoleError near the poles.
[[nodiscard]] TangentVector reduced_rhs(Overlap x, const BlochPoint& p,
                                        double u);

/// [f, g] = alpha f + beta g.
struct AlphaBeta {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Throws PoleError when sin(phi) or sin(theta) is inside the guard band.
[[nodiscard]] AlphaBeta alpha_beta(Overlap x, const BlochPoint& p);

/// Solution theta in (0, pi) of -x cot(theta) / sqrt(1 - x^2) = cos(phi).
[[nodiscard]] double singular_arc_theta(double phi, Overlap x);

enum class ArcKind { kFast, kSlow, kNotSingular };

[[nodiscard]] const char* to_string(ArcKind kind);

struct ArcClassification {
  double l_x_alpha = 0.0;
  double l_y_alpha = 0.0;
  ArcKind kind = ArcKind::kNotSingular;
  std::optional<double> singular_u;
};

/// Step of the central differences used for Lie derivatives.
inline constexpr double kLieStep = 1e-6;

/// Directional derivative of alpha along field X or Y, by central
/// differences.
[[nodiscard]] double lie_derivative_alpha(Overlap x, const BlochPoint& p,
                                          const TangentVector& field,
                                          double step = kLieStep);

/// Throws PreconditionError unless |alpha(p)| < 1e-8.
[[nodiscard]] ArcClassification classify_arc(Overlap x, const BlochPoint& p);

struct GroverThetaAnalysis {
  double delta_theta_max = 0.0;  // 4 x sqrt(1 - x^2)
  double n_estimate = 0.0;       // theta_i / delta_theta_max
};

[[nodiscard]] GroverThetaAnalysis grover_theta_analysis(Overlap x);

/// (theta_i, phi_i) = (2 atan(sqrt(1 - x^2) / x), 0)
[[nodiscard]] BlochPoint initial_bloch_point(Overlap x);

/// Time series on the chart with phi unwrapped so |delta phi| < pi between
/// consecutive samples (phi may leave [0, 2 pi)).
struct BlochTrajectory {
  std::vector<double> times;
  std::vector<double> theta;
  std::vector<double> phi;
};

[[nodiscard]] BlochTrajectory project_trajectory(const Trajectory& trajectory);

/// RK4 integration of reduced_rhs over the protocol starting from `start`,
/// with steps no longer than max_step that land on every segment boundary.
/// One sample per step. Throws PoleError if theta enters the guard band.
[[nodiscard]] BlochTrajectory integrate_reduced(Overlap x,
                                                const Protocol& protocol,
                                                const BlochPoint& start,
                                                double max_step = 1e-3);

struct ArcSample {
  double phi = 0.0;
  double theta = 0.0;
};

/// `count` points of the singular arc, phi uniform on [0, 2 pi).
[[nodiscard]] std::vector<ArcSample> singular_arc_samples(Overlap x, int count);

}  // namespace grover_pmp
