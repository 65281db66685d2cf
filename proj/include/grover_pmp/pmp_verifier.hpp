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

#include <span>
#include <string>
#include <vector>

#include "grover_pmp/protocols.hpp"
#include "grover_pmp/qubit_dynamics.hpp"

namespace grover_pmp {

/// Conjugate momentum |Pi(t)>, sampled on an ascending time grid.
struct CostateTrajectory {
  std::vector<double> times;
  std::vector<QubitState> costates;
};

struct SwitchingRecord {
  double t = 0.0;
  double u = 0.0;
  double phi = 0.0;  // switching function
  double hc = 0.0;   // c-Hamiltonian without the lambda0 term
};

enum class ViolationKind {
  kSameSign,       // u has the sign of phi
  kNotExtremal,    // |phi| > tol but u is not -sign(phi)
  kHcDeviation,    // c-Hamiltonian differs from its mean by >= tol_hc
  kHcPositive,     // c-Hamiltonian above tol_hc
};

[[nodiscard]] const char* to_string(ViolationKind kind);

struct Violation {
  double t = 0.0;
  ViolationKind kind = ViolationKind::kSameSign;
};

enum class VerificationStatus {
  kPassed,
  kFailed,
  // Psi_0(tf) = 0 makes the terminal costate vanish; nothing to check.
  kDegenerate,
};

[[nodiscard]] const char* to_string(VerificationStatus status);

struct PmpConfig {
  double lambda0 = 1.0;  // only its sign matters at fixed tf
  double tol_phi = 1e-6;
  double tol_hc = 1e-6;
  int samples = 2000;

  /// Throws DomainError on lambda0 <= 0, non-positive tolerances or
  /// samples < 2.
  void validate() const;
};

struct VerificationReport {
  std::vector<SwitchingRecord> records;
  bool sign_condition_ok = true;
  bool hc_constant_ok = true;
  bool hc_nonpositive_ok = true;
  double hc_mean = 0.0;
  double hc_max_dev = 0.0;
  std::vector<Violation> violations;
  VerificationStatus status = VerificationStatus::kPassed;
  PmpConfig config;

  [[nodiscard]] bool passed() const {
    return status == VerificationStatus::kPassed;
  }
};

/// |Pi(tf)> = -[Psi_0(tf), 0]^T
[[nodiscard]] QubitState terminal_costate(const QubitState& final_state);

/// Costate on `samples` uniformly spaced times in [0, tf], integrated
/// backward from the terminal condition with the exact propagator under the
/// same Hamiltonian as the state. Throws PreconditionError if samples < 2.
[[nodiscard]] CostateTrajectory backward_costate(const Protocol& protocol,
                                                 const QubitState& final_state,
                                                 Overlap x, int samples);

/// Im <Pi| Hd |Psi>
[[nodiscard]] double switching_function(const QubitState& costate,
                                        const QubitState& state, Overlap x);

/// Im <Pi| (H0 + u Hd) |Psi>. Throws DomainError if |u| > 1.
[[nodiscard]] double c_hamiltonian(const QubitState& costate,
                                   const QubitState& state, double u,
                                   Overlap x);

/// Forward state, backward costate and switching records on a uniform grid
/// of config.samples points, with the necessary conditions evaluated:
///   - wherever |phi| > tol_phi, u = -sign(phi). Samples within half a grid
///     step of a switching instant are skipped.
///   - c-Hamiltonian constant to tol_hc.
///   - c-Hamiltonian mean <= tol_hc.
/// A failing protocol is reported, not thrown.
[[nodiscard]] VerificationReport verify(const Protocol& protocol, Overlap x,
                                        const PmpConfig& config = {});

/// Gradient of J = -|Psi_0(tf)|^2 / 2 with respect to each cell of a
/// piecewise-constant control on a uniform grid of width dt, from one forward
/// and one backward pass. Entry k is the switching function integrated over
/// cell k, evaluated in closed form. Throws DomainError if any |u| > 1 or
/// dt <= 0.
[[nodiscard]] std::vector<double> adjoint_gradient(std::span<const double> u_grid,
                                                   double dt, Overlap x);

/// Piecewise-constant grid control as a Protocol.
[[nodiscard]] Protocol grid_protocol(std::span<const double> u_grid, double dt);

}  // namespace grover_pmp
