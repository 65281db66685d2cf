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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "grover_pmp/bloch_geometric.hpp"
#include "grover_pmp/optimizer.hpp"
#include "grover_pmp/pmp_verifier.hpp"
#include "grover_pmp/protocols.hpp"
#include "grover_pmp/qubit_dynamics.hpp"
#include "support/geometry_check.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace grover_pmp;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (!failures_.empty()) failures_ += "; ";
      failures_ += what;
    }
  }
  void note(const std::string& s) {
    if (!notes_.empty()) notes_ += ", ";
    notes_ += s;
  }
  Outcome outcome() const { return {pass_, pass_ ? notes_ : failures_ + " | " + notes_}; }

 private:
  bool pass_ = true;
  std::string failures_;
  std::string notes_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Best-of-several wall time of `f` in seconds.
double time_best(const std::function<void()>& f, int reps = 5) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

Outcome closed_form_optima() {
  Check c;
  OptimalTimes half;
  OptimalTimes small;
  const Overlap x_half(0.5);
  const Overlap x_small(1.0 / std::sqrt(32.0));
  const double t_half = time_best([&] { half = optimal_times(x_half); });
  const double t_small = time_best([&] { small = optimal_times(x_small); });
  const double residual = std::abs(optimal_t1_residual(std::cos(half.t1), x_half));
  c.expect(std::abs(std::cos(half.t1) - 1.0 / 3.0) < 1e-15, "cos t1* != 1/3");
  c.expect(residual < 1e-12, "quadratic residual");
  c.expect(std::abs(half.t1 / kPi - 0.392699) <= 1e-3, "t1*(1/2)");
  c.expect(std::abs(half.t2 / kPi - 0.784) <= 1e-3, "t2*(1/2)");
  c.expect(std::abs(half.tf / kPi - 1.5673) <= 1e-3, "tf*(1/2)");
  c.expect(std::abs(small.t1 / kPi - 0.339) <= 1e-3, "t1*(1/sqrt32)");
  c.expect(std::abs(small.tf / kPi - 5.221) <= 1e-3, "tf*(1/sqrt32)");
  c.expect(t_half < 1e-3 && t_small < 1e-3, "runtime >= 1 ms");
  c.note(fmt::format("t1*={:.6f}pi t2*={:.6f}pi tf*={:.6f}pi; x=1/sqrt32: t1*={:.6f}pi tf*={:.6f}pi; "
                     "residual={:.1e}; {:.1f}us/{:.1f}us",
                     half.t1 / kPi, half.t2 / kPi, half.tf / kPi, small.t1 / kPi, small.tf / kPi,
                     residual, t_half * 1e6, t_small * 1e6));
  return c.outcome();
}

Outcome endpoint_fidelities() {
  Check c;
  double worst_singular = 0.0;
  double worst_bsb = 0.0;
  double slowest = 0.0;
  for (double xv : {0.05, 0.1, 0.25, 0.5}) {
    const Overlap x(xv);
    double fs = 0.0;
    double fb = 0.0;
    slowest = std::max(slowest, time_best([&] {
      fs = fidelity(evolve_final(initial_state(x), singular_protocol(x), x));
    }));
    slowest = std::max(slowest, time_best([&] {
      const OptimalTimes t = optimal_times(x);
      fb = fidelity(evolve_final(initial_state(x), bang_singular_bang(t.t1, t.t2), x));
    }));
    worst_singular = std::max(worst_singular, 1.0 - fs);
    worst_bsb = std::max(worst_bsb, 1.0 - fb);
  }
  c.expect(worst_singular <= 1e-9, "singular fidelity");
  c.expect(worst_bsb <= 1e-8, "bsb fidelity");
  c.expect(slowest < 1e-2, "runtime >= 10 ms");
  c.note(fmt::format("max infidelity singular={:.1e} bsb={:.1e}; slowest {:.1f}us", worst_singular,
                     worst_bsb, slowest * 1e6));
  return c.outcome();
}

Outcome sweep_asymptote() {
  Check c;
  std::vector<SweepRow> rows;
  const auto start = std::chrono::steady_clock::now();
  rows = sweep_times(1, 40);
  const double elapsed = seconds_since(start);
  const SweepRow& r30 = rows.at(29);
  const double gap = kPi / r30.x - r30.tf_optimal;
  c.expect(std::abs(gap / kPi - 0.436) <= 1e-3, "gap at n=30");
  c.expect(std::abs(gap - (2.0 * std::sqrt(3.0) - 2.0 * kPi / 3.0)) <= 1e-3 * kPi,
           "gap vs 2sqrt3 - 2pi/3");
  c.expect(rows.size() == 40, "row count");
  c.expect(elapsed < 5.0, "sweep runtime >= 5 s");
  c.note(fmt::format("n=30 gap={:.6f}pi; sweep {:.3f}s", gap / kPi, elapsed));
  return c.outcome();
}

Outcome fig2_dichotomy() {
  Check c;
  const Overlap x(0.5);
  const double tf = 1.3 * kPi;

  const double t1_bsb = optimize_t1_bsb(x, tf).best_param;
  const VerificationReport good = verify(bang_singular_bang(t1_bsb, tf - 2.0 * t1_bsb), x);
  c.expect(std::abs(t1_bsb / kPi - 0.3918) <= 5e-4, "bsb t1");
  c.expect(good.sign_condition_ok, "bsb sign condition");
  c.expect(good.hc_max_dev < 1e-6, "bsb hc constancy");
  c.expect(good.hc_mean <= 1e-6 && good.hc_nonpositive_ok, "bsb hc sign");
  c.expect(good.passed(), "bsb verification status");

  const double t1_mb = optimize_t1_multibang(x, tf, 2).best_param;
  const VerificationReport bad = verify(multiple_bang(t1_mb, 2, tf), x);
  c.expect(std::abs(t1_mb / kPi - 0.4446) <= 5e-4, "multibang t1");
  c.expect(!bad.passed() && !bad.sign_condition_ok, "multibang should fail the sign condition");
  int same_sign = 0;
  int inside = 0;
  double first = 1e300;
  double last = -1e300;
  for (const Violation& v : bad.violations) {
    if (v.kind != ViolationKind::kSameSign) continue;
    ++same_sign;
    first = std::min(first, v.t);
    last = std::max(last, v.t);
    if (v.t > 0.3 * kPi && v.t < 0.9 * kPi) ++inside;
  }
  c.expect(same_sign > 0, "no same-sign violations");
  c.expect(2 * inside > same_sign, "same-sign violations not concentrated in (0.3pi, 0.9pi)");
  c.note(fmt::format("bsb t1={:.5f}pi hc={:.6f} dev={:.1e}; multibang t1={:.5f}pi, "
                     "{} same-sign samples in [{:.3f}pi, {:.3f}pi], {} inside (0.3pi, 0.9pi)",
                     t1_bsb / kPi, good.hc_mean, good.hc_max_dev, t1_mb / kPi, same_sign,
                     first / kPi, last / kPi, inside));
  return c.outcome();
}

Outcome adjoint_gradient_check() {
  Check c;
  const Overlap x(0.5);
  const double dt = 1.3 * kPi / 50.0;
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  const auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> u(50);
    for (double& v : u) v = dist(rng);
    const auto adj = adjoint_gradient(u, dt, x);
    const auto fd = oracle::fd_gradient(u, dt, 0.5, 1e-5);
    double scale = 0.0;
    for (double v : fd) scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < u.size(); ++k)
      worst = std::max(worst, std::abs(adj[k] - fd[k]) / std::max(std::abs(fd[k]), 1e-3 * scale));
  }
  const double elapsed = seconds_since(start);
  c.expect(worst < 1e-4, "relative error");
  c.expect(elapsed < 1.0, "runtime >= 1 s");
  c.note(fmt::format("max relative error {:.2e}; {:.3f}s", worst, elapsed));
  return c.outcome();
}

Outcome geometric_layer() {
  Check c;
  // (a) bracket decomposition
  {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> th(0.15, kPi - 0.15);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> xs(0.05, 0.9);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Overlap x(xs(rng));
      BlochPoint p{th(rng), ph(rng)};
      while (std::abs(std::sin(p.phi)) < 0.1) p.phi = ph(rng);
      const oracle::Field f = [&](const BlochPoint& q) { return problem_fields(x, q).f; };
      const oracle::Field g = [&](const BlochPoint& q) { return problem_fields(x, q).g; };
      const TangentVector br = oracle::fd_bracket(f, g, p);
      const AlphaBeta ab = alpha_beta(x, p);
      const TangentVector rhs = ab.alpha * f(p) + ab.beta * g(p);
      worst = std::max({worst, std::abs(br.d_theta - rhs.d_theta), std::abs(br.d_phi - rhs.d_phi)});
    }
    c.expect(worst < 1e-5, "(a) bracket");
    c.note(fmt::format("(a) {:.1e}", worst));
  }
  // (b) Lie derivatives on the singular arc
  {
    double worst_l = 0.0;
    double worst_u = 0.0;
    for (double xv : {0.1, 0.25, 0.5}) {
      const Overlap x(xv);
      for (int i = 0; i < 20; ++i) {
        const double phi = 0.2 + (kPi - 0.4) * i / 19.0 + (i % 2 == 0 ? 0.0 : kPi);
        const ArcClassification a = classify_arc(x, BlochPoint{singular_arc_theta(phi, x), phi});
        worst_l = std::max({worst_l, std::abs(a.l_y_alpha - (1.0 - xv * xv)),
                            std::abs(a.l_x_alpha + (1.0 - xv * xv))});
        worst_u = std::max(worst_u, a.singular_u ? std::abs(*a.singular_u) : 1e300);
      }
    }
    c.expect(worst_l < 1e-5, "(b) Lie derivatives");
    c.expect(worst_u < 1e-8, "(b) singular control");
    c.note(fmt::format("(b) L {:.1e}, u {:.1e}", worst_l, worst_u));
  }
  // (c) X vanishes at the start
  {
    double worst = 0.0;
    for (double xv : {0.05, 0.1, 0.25, 0.5, 0.75}) {
      const Overlap x(xv);
      const TangentVector v = problem_fields(x, initial_bloch_point(x)).X;
      worst = std::max({worst, std::abs(v.d_theta), std::abs(v.d_phi)});
    }
    c.expect(worst < 1e-12, "(c) X at start");
    c.note(fmt::format("(c) {:.1e}", worst));
  }
  // (d) reduced versus projected full dynamics
  {
    const Overlap x(0.5);
    const OptimalTimes t = optimal_times(x);
    double worst = 0.0;
    std::string counts;
    for (const Protocol& p :
         {singular_protocol(x), bang_singular_bang(t.t1, t.t2), grover_protocol(x)}) {
      const oracle::ReducedComparison cmp = oracle::compare_reduced_to_full(p, x);
      worst = std::max({worst, cmp.max_theta_error, cmp.max_phi_error});
      c.expect(cmp.intervals >= 1, "(d) no comparison interval for " + p.label());
      counts += fmt::format(" {}:{}", p.label(), cmp.compared_samples);
    }
    c.expect(worst < 1e-6, "(d) reduced dynamics");
    c.note(fmt::format("(d) {:.1e} over samples{}", worst, counts));
  }
  return c.outcome();
}

Outcome grover_zigzag() {
  Check c;
  const double xv = 1.0 / std::sqrt(32.0);
  const Overlap x(xv);
  const Protocol cycle({{kPi, 1.0}, {kPi, -1.0}}, "cycle");
  const double before = state_to_bloch(initial_state(x)).theta;
  const double after = state_to_bloch(evolve_final(initial_state(x), cycle, x)).theta;
  const double predicted = 4.0 * xv * std::sqrt(1.0 - xv * xv);
  const double rel = std::abs((before - after) - predicted) / predicted;
  const int n = grover_iterations(x);
  const double fid = fidelity(evolve_final(initial_state(x), grover_protocol(x), x));
  c.expect(rel <= 0.05, "cycle theta drop");
  c.expect(n == 4, "iteration count");
  c.expect(fid > 0.99, "fidelity");
  c.note(fmt::format("drop={:.5f} predicted={:.5f} ({:.1f}%); N={} fidelity={:.6f}",
                     before - after, predicted, 100.0 * rel, n, fid));
  return c.outcome();
}

Outcome property_suite() {
  Check c;
  std::mt19937_64 rng(8675309);
  oracle::PropertyErrors worst;
  for (int i = 0; i < 100; ++i) {
    const oracle::PropertyErrors e = oracle::property_errors(oracle::random_case(rng));
    worst.norm = std::max(worst.norm, e.norm);
    worst.composition = std::max(worst.composition, e.composition);
    worst.reversibility = std::max(worst.reversibility, e.reversibility);
    worst.hc_constancy = std::max(worst.hc_constancy, e.hc_constancy);
    worst.rk4 = std::max(worst.rk4, e.rk4);
  }
  c.expect(worst.norm < 1e-10, "norm");
  c.expect(worst.composition < 1e-12 && worst.reversibility < 1e-12, "composition/reversibility");
  c.expect(worst.hc_constancy < 1e-10, "hc per segment");
  c.expect(worst.rk4 < 1e-8, "rk4 agreement");
  c.note(fmt::format("norm {:.1e}, compose {:.1e}, reverse {:.1e}, hc {:.1e}, rk4 {:.1e}",
                     worst.norm, worst.composition, worst.reversibility, worst.hc_constancy,
                     worst.rk4));
  return c.outcome();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"closed-form optimal times", closed_form_optima},
      {"protocol endpoint fidelities", endpoint_fidelities},
      {"singular-minus-optimal time asymptote", sweep_asymptote},
      {"bsb passes / multibang fails the necessary conditions", fig2_dichotomy},
      {"adjoint gradient vs finite differences", adjoint_gradient_check},
      {"geometric layer", geometric_layer},
      {"Grover zigzag", grover_zigzag},
      {"randomized property suite", property_suite},
  };
  int failed = 0;
  int index = 1;
  for (const Criterion& crit : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = crit.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(start);
    std::printf("[%s] %d. %s (%.3f s): %s\n", o.pass ? "PASS" : "FAIL", index, crit.name,
                elapsed, o.detail.c_str());
    failed += o.pass ? 0 : 1;
    ++index;
  }
  std::printf("%d/%d criteria passed\n", index - 1 - failed, index - 1);
  return failed == 0 ? 0 : 1;
}
