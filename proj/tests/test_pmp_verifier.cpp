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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "grover_pmp/errors.hpp"
#include "grover_pmp/optimizer.hpp"
#include "grover_pmp/pmp_verifier.hpp"
#include "grover_pmp/protocols.hpp"
#include "grover_pmp/qubit_dynamics.hpp"
#include "support/oracles.hpp"

namespace grover_pmp {
namespace {

constexpr double kPi = std::numbers::pi;

Protocol optimal_bsb_at(double tf, Overlap x) {
  const double t1 = optimize_t1_bsb(x, tf).best_param;
  return bang_singular_bang(t1, tf - 2.0 * t1);
}

TEST(TerminalCostate, IsMinusTargetProjection) {
  const QubitState s{Complex(0.3, 0.4), Complex(0.5, -0.1)};
  const QubitState pi = terminal_costate(s);
  EXPECT_EQ(pi.c0, -s.c0);
  EXPECT_EQ(pi.c1, Complex(0.0));
}

TEST(BackwardCostate, SatisfiesTerminalConditionAndSchroedinger) {
  const Overlap x(0.5);
  const Protocol p({{0.7, 1.0}, {1.3, -0.2}, {0.6, -1.0}}, "p");
  const QubitState final_state = evolve_final(initial_state(x), p, x);
  const CostateTrajectory co = backward_costate(p, final_state, x, 101);
  ASSERT_EQ(co.times.size(), 101u);
  EXPECT_NEAR(co.times.back(), p.total_time(), 1e-14);
  const QubitState end = terminal_costate(final_state);
  EXPECT_LT(std::abs(co.costates.back().c0 - end.c0), 1e-14);
  // Forward propagation of Pi(0) with the same Hamiltonian returns Pi(tf).
  const QubitState again = evolve_final(co.costates.front(), p, x);
  EXPECT_LT(std::abs(again.c0 - end.c0) + std::abs(again.c1 - end.c1), 1e-13);
  for (const QubitState& c : co.costates)
    EXPECT_NEAR(c.norm_squared(), end.norm_squared(), 1e-13);
}

TEST(SwitchingFunction, MatchesDenseFormula) {
  const Overlap x(0.3);
  const QubitState pi{Complex(0.2, -0.7), Complex(0.1, 0.4)};
  const QubitState psi{Complex(0.6, 0.1), Complex(-0.3, 0.5)};
  const oracle::Mat hd = oracle::mat_scale(
      oracle::mat_add(oracle::hw_matrix(), oracle::hs_matrix(0.3), -1.0), 0.5);
  const oracle::Vec v = oracle::mat_vec(hd, {psi.c0, psi.c1});
  const double expected = (std::conj(pi.c0) * v[0] + std::conj(pi.c1) * v[1]).imag();
  EXPECT_NEAR(switching_function(pi, psi, x), expected, 1e-15);
  const oracle::Mat h = oracle::h_of_u(0.3, 0.4);
  const oracle::Vec w = oracle::mat_vec(h, {psi.c0, psi.c1});
  EXPECT_NEAR(c_hamiltonian(pi, psi, 0.4, x),
              (std::conj(pi.c0) * w[0] + std::conj(pi.c1) * w[1]).imag(), 1e-15);
  EXPECT_THROW((void)c_hamiltonian(pi, psi, 1.2, x), DomainError);
}

TEST(PmpConfig, Validation) {
  PmpConfig c;
  EXPECT_NO_THROW(c.validate());
  c.samples = 1;
  EXPECT_THROW(c.validate(), DomainError);
  c = PmpConfig{};
  c.tol_phi = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = PmpConfig{};
  c.lambda0 = -1.0;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(Verify, OptimalBsbAtShortTimeSatisfiesConditions) {
  const Overlap x(0.5);
  const Protocol p = optimal_bsb_at(1.3 * kPi, x);
  const VerificationReport r = verify(p, x);
  EXPECT_TRUE(r.passed()) << to_string(r.status);
  EXPECT_TRUE(r.sign_condition_ok);
  EXPECT_TRUE(r.hc_constant_ok);
  EXPECT_TRUE(r.hc_nonpositive_ok);
  EXPECT_LT(r.hc_mean, 0.0);
  EXPECT_TRUE(r.violations.empty());
  ASSERT_EQ(r.records.size(), 2000u);
  const double t1 = p.segments()[0].duration;
  const double t2 = p.segments()[1].duration;
  for (const SwitchingRecord& rec : r.records) {
    if (rec.t > t1 + 1e-3 && rec.t < t1 + t2 - 1e-3) {
      EXPECT_EQ(rec.u, 0.0);
      EXPECT_LT(std::abs(rec.phi), 1e-6);
    }
  }
}

TEST(Verify, MultibangViolatesSignCondition) {
  const Overlap x(0.5);
  const double tf = 1.3 * kPi;
  const double t1 = optimize_t1_multibang(x, tf, 2).best_param;
  const VerificationReport r = verify(multiple_bang(t1, 2, tf), x);
  EXPECT_EQ(r.status, VerificationStatus::kFailed);
  EXPECT_FALSE(r.sign_condition_ok);
  const auto same_sign = std::count_if(r.violations.begin(), r.violations.end(),
                                       [](const Violation& v) {
                                         return v.kind == ViolationKind::kSameSign;
                                       });
  EXPECT_GT(same_sign, 100);
  EXPECT_TRUE(std::is_sorted(r.violations.begin(), r.violations.end(),
                             [](const Violation& a, const Violation& b) { return a.t < b.t; }));
}

TEST(Verify, SingularProtocolPasses) {
  for (double xv : {0.1, 0.5}) {
    const Overlap x(xv);
    const VerificationReport r = verify(singular_protocol(x), x);
    EXPECT_TRUE(r.passed()) << xv;
    EXPECT_LT(r.hc_max_dev, 1e-10);
  }
}

TEST(Verify, ConstantRecordsWithinSegments) {
  const Overlap x(0.4);
  const Protocol p({{0.8, 1.0}, {1.7, 0.3}, {1.1, -1.0}, {0.5, -0.6}}, "p");
  const VerificationReport r = verify(p, x);
  for (std::size_t k = 0; k < p.segments().size(); ++k) {
    double lo = 1e300;
    double hi = -1e300;
    for (const SwitchingRecord& rec : r.records) {
      if (p.segment_at(rec.t) != k) continue;
      lo = std::min(lo, rec.hc);
      hi = std::max(hi, rec.hc);
    }
    EXPECT_LT(hi - lo, 1e-10) << "segment " << k;
  }
}

TEST(Verify, EmptyProtocolPassesVacuously) {
  const VerificationReport r = verify(Protocol({}, "empty"), Overlap(0.5));
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.records.empty());
}

TEST(Verify, DegenerateWhenTargetAmplitudeVanishes) {
  // A Y bang of length a = arccos(1/3) carries |s> to a point on the orbit of
  // the X bang through the south pole; golden-section search finds when the
  // X bang reaches it.
  const Overlap x(0.5);
  const double a = std::acos(1.0 / 3.0);
  auto amp = [&](double b) {
    return std::abs(evolve_final(initial_state(x), Protocol({{a, 1.0}, {b, -1.0}}, "p"), x).c0);
  };
  double lo = 1e-3;
  double hi = 2.0 * kPi;
  const auto scan = oracle::brute_force_max([&](double b) { return -amp(b); }, lo, hi, 2001);
  lo = scan.arg - 0.01;
  hi = scan.arg + 0.01;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 0; i < 200; ++i) {
    const double m1 = hi - g * (hi - lo);
    const double m2 = lo + g * (hi - lo);
    if (amp(m1) < amp(m2)) hi = m2; else lo = m1;
  }
  const double b = 0.5 * (lo + hi);
  ASSERT_LT(amp(b), 1e-12);
  const VerificationReport r = verify(Protocol({{a, 1.0}, {b, -1.0}}, "p"), x);
  EXPECT_EQ(r.status, VerificationStatus::kDegenerate);
  EXPECT_FALSE(r.passed());
}

TEST(AdjointGradient, MatchesFiniteDifferences) {
  const Overlap x(0.5);
  const double dt = 1.3 * kPi / 50.0;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> u(50);
    for (double& v : u) v = dist(rng);
    const auto adj = adjoint_gradient(u, dt, x);
    const auto fd = oracle::fd_gradient(u, dt, 0.5);
    double scale = 0.0;
    for (double v : fd) scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < u.size(); ++k) {
      EXPECT_LT(std::abs(adj[k] - fd[k]) / std::max(std::abs(fd[k]), 1e-3 * scale), 1e-4)
          << "cell " << k;
    }
  }
}

TEST(AdjointGradient, SingularControlIsStationary) {
  const Overlap x(0.5);
  const std::vector<double> u(40, 0.0);
  const auto g = adjoint_gradient(u, kPi / 0.5 / 40.0, x);
  for (std::size_t k = 1; k + 1 < g.size(); ++k) EXPECT_LT(std::abs(g[k]), 1e-12);
}

TEST(AdjointGradient, RejectsBadInput) {
  const Overlap x(0.5);
  EXPECT_THROW((void)adjoint_gradient(std::vector<double>{0.0, 1.5}, 0.1, x), DomainError);
  EXPECT_THROW((void)adjoint_gradient(std::vector<double>{0.0}, 0.0, x), DomainError);
}

}  // namespace
}  // namespace grover_pmp
