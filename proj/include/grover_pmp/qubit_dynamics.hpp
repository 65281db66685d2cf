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

#include <complex>
#include <cstddef>
#include <vector>

namespace grover_pmp {

using Complex = std::complex<double>;

class Protocol;

/// Two complex amplitudes in the {|w>, |w_bar>} basis. Also used for the
/// costate, which is not normalized.
struct QubitState {
  Complex c0;
  Complex c1;

  [[nodiscard]] double norm_squared() const {
    return std::norm(c0) + std::norm(c1);
  }
  friend bool operator==(const QubitState&, const QubitState&) = default;
};

/// <a|b>
[[nodiscard]] Complex inner(const QubitState& a, const QubitState& b);

QubitState operator*(Complex s, const QubitState& v);
QubitState operator+(const QubitState& a, const QubitState& b);
QubitState operator-(const QubitState& a, const QubitState& b);

/// H = e0 I + nx sx + ny sy + nz sz.
struct PauliHamiltonian {
  double e0 = 0.0;
  double nx = 0.0;
  double ny = 0.0;
  double nz = 0.0;

  [[nodiscard]] QubitState apply(const QubitState& v) const;
  friend bool operator==(const PauliHamiltonian&,
                         const PauliHamiltonian&) = default;
};

PauliHamiltonian operator+(const PauliHamiltonian& a,
                           const PauliHamiltonian& b);
PauliHamiltonian operator-(const PauliHamiltonian& a,
                           const PauliHamiltonian& b);
PauliHamiltonian operator-(const PauliHamiltonian& a);
PauliHamiltonian operator*(double s, const PauliHamiltonian& a);

/// Overlap <s|w> between the uniform superposition and the marked state.
class Overlap {
 public:
  /// Throws DomainError unless 0 < x < 1.
  explicit Overlap(double x);

  /// x = 2^(-n/2) for an n-qubit register. Throws DomainError for n < 1.
  static Overlap from_qubits(int n);

  [[nodiscard]] double value() const { return x_; }
  /// sqrt(1 - x^2)
  [[nodiscard]] double complement() const { return complement_; }

 private:
  double x_;
  double complement_;
};

struct GroverHamiltonians {
  PauliHamiltonian hw;  // |w><w|, also H_Y (u = +1)
  PauliHamiltonian hs;  // |s><s|, also H_X (u = -1)
  PauliHamiltonian h0;  // (Hw + Hs) / 2
  PauliHamiltonian hd;  // (Hw - Hs) / 2
};

[[nodiscard]] GroverHamiltonians grover_hamiltonians(Overlap x);

/// H0 + u Hd, evaluated as ((1+u)/2) Hw + ((1-u)/2) Hs so that u = +-1
/// reproduces Hw / Hs bit-for-bit. Throws DomainError if |u| > 1.
[[nodiscard]] PauliHamiltonian control_hamiltonian(Overlap x, double u);

/// |s> = [x, sqrt(1 - x^2)]^T
[[nodiscard]] QubitState initial_state(Overlap x);

/// 2x2 unitary, row-major.
struct Unitary {
  Complex m00{1.0, 0.0};
  Complex m01{};
  Complex m10{};
  Complex m11{1.0, 0.0};

  [[nodiscard]] QubitState apply(const QubitState& v) const;
  [[nodiscard]] Unitary adjoint() const;
};

/// a * b (b acts first).
Unitary operator*(const Unitary& a, const Unitary& b);

/// exp(-i H dt) in closed form. Negative dt runs time backward.
[[nodiscard]] Unitary propagator(const PauliHamiltonian& h, double dt);

/// exp(-i H dt) |state>.
[[nodiscard]] QubitState propagate_const(const QubitState& state,
                                         const PauliHamiltonian& h, double dt);

struct Trajectory {
  std::vector<double> times;
  std::vector<QubitState> states;
};

/// Exact segment-wise evolution. Each segment contributes
/// samples_per_segment sub-intervals; segment endpoints are always present
/// and the endpoint of every segment is a single propagate_const call from
/// the previous endpoint. Throws PreconditionError if samples_per_segment < 1.
[[nodiscard]] Trajectory evolve(const QubitState& state,
                                const Protocol& protocol, Overlap x,
                                int samples_per_segment = 1);

/// Final state only; equal to evolve(...).states.back().
[[nodiscard]] QubitState evolve_final(const QubitState& state,
                                      const Protocol& protocol, Overlap x);

/// |c0|^2, the population of the marked state.
[[nodiscard]] double fidelity(const QubitState& state);

}  // namespace grover_pmp
