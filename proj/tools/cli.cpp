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

#include "cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "grover_pmp/bloch_geometric.hpp"
#include "grover_pmp/errors.hpp"
#include "grover_pmp/io.hpp"
#include "grover_pmp/optimizer.hpp"
#include "grover_pmp/pmp_verifier.hpp"
#include "grover_pmp/protocols.hpp"
#include "grover_pmp/qubit_dynamics.hpp"

namespace grover_pmp::cli {
namespace {

constexpr double kPi = std::numbers::pi;

struct GlobalOptions {
  std::optional<double> x;
  std::optional<int> n;
  std::string output = "-";
  std::optional<std::string> format;
};

struct ProtocolOptions {
  std::string kind = "bsb";
  std::optional<std::string> tf;
  std::optional<std::string> t1;
  int bangs = 2;
  std::string file;
};

Overlap resolve_overlap(const GlobalOptions& g) {
  if (g.x) return Overlap(*g.x);
  if (g.n) {
    if (*g.n < 1) throw DomainError("--n must be a positive integer");
    return Overlap::from_qubits(*g.n);
  }
  throw PreconditionError("one of --x or --n is required");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return buffer.str();
}

// Output sink: stdout when the path is "-", otherwise a file that must open.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path == "-") {
      stream_ = &fallback;
      return;
    }
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw IoError("cannot open '" + path + "' for writing");
    stream_ = &file_;
  }

  std::ostream& stream() { return *stream_; }

  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("error while writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

void write_to(const std::string& path, std::ostream& fallback,
              const std::function<void(std::ostream&)>& writer) {
  Sink sink(path, fallback);
  writer(sink.stream());
  sink.finish();
}

std::string derived_path(const std::string& output, const std::string& suffix) {
  if (output == "-") return {};
  const auto dot = output.rfind('.');
  const auto slash = output.find_last_of('/');
  const bool has_ext = dot != std::string::npos &&
                       (slash == std::string::npos || dot > slash);
  return (has_ext ? output.substr(0, dot) : output) + suffix;
}

Protocol build_protocol(const ProtocolOptions& p, Overlap x) {
  const std::optional<double> tf =
      p.tf ? std::optional<double>(parse_time(*p.tf)) : std::nullopt;
  const std::optional<double> t1 =
      p.t1 ? std::optional<double>(parse_time(*p.t1)) : std::nullopt;

  if (p.kind == "singular") {
    if (tf) return Protocol({{*tf, 0.0}}, "singular");
    return singular_protocol(x);
  }
  if (p.kind == "grover") return grover_protocol(x);
  if (p.kind == "bsb") {
    if (t1 && tf) {
      if (*tf - 2.0 * *t1 < 0.0)
        throw DomainError("bsb requires tf >= 2 t1");
      return bang_singular_bang(*t1, *tf - 2.0 * *t1);
    }
    if (t1) return bang_singular_bang(*t1, t2_of_t1(*t1, x));
    if (tf) {
      const double best = optimize_t1_bsb(x, *tf).best_param;
      return bang_singular_bang(best, std::max(0.0, *tf - 2.0 * best));
    }
    const OptimalTimes times = optimal_times(x);
    return bang_singular_bang(times.t1, times.t2);
  }
  if (p.kind == "multibang") {
    if (!tf) throw PreconditionError("multibang requires --tf");
    const double first =
        t1 ? *t1 : optimize_t1_multibang(x, *tf, p.bangs).best_param;
    return multiple_bang(first, p.bangs, *tf);
  }
  // custom
  if (p.file.empty()) throw PreconditionError("custom requires --protocol-file");
  return parse_protocol(read_file(p.file));
}

void add_protocol_options(CLI::App* cmd, ProtocolOptions& p) {
  cmd->add_option("--protocol", p.kind, "Control protocol")
      ->check(CLI::IsMember({"singular", "grover", "bsb", "multibang", "custom"}))
      ->capture_default_str();
  cmd->add_option("--tf", p.tf, "Final time (accepts a pi suffix, e.g. 1.3pi)");
  cmd->add_option("--t1", p.t1, "First switching time (accepts a pi suffix)");
  cmd->add_option("--N", p.bangs, "Bang pairs for the multibang protocol")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--protocol-file", p.file,
                  "JSON protocol file; implies --protocol custom when given");
}

std::string pi_units(double t) { return fmt::format("{:.6f}", t / kPi); }

int cmd_optimal_times(const GlobalOptions& g, std::ostream& out) {
  const Overlap x = resolve_overlap(g);
  const OptimalTimes times = optimal_times(x);
  const std::string format = g.format.value_or("csv");
  write_to(g.output, out, [&](std::ostream& os) {
    if (format == "json") {
      nlohmann::json j = {{"x", x.value()},
                          {"t1", times.t1},
                          {"t2", times.t2},
                          {"tf", times.tf},
                          {"t1_over_pi", pi_units(times.t1)},
                          {"t2_over_pi", pi_units(times.t2)},
                          {"tf_over_pi", pi_units(times.tf)}};
      os << j.dump(2) << '\n';
    } else {
      os << "x,t1_over_pi,t2_over_pi,tf_over_pi\n"
         << format_real(x.value()) << ',' << pi_units(times.t1) << ','
         << pi_units(times.t2) << ',' << pi_units(times.tf) << '\n';
    }
  });
  return kSuccess;
}

struct EvolveOptions {
  int samples = 100;
  bool with_arc = false;
  int arc_samples = 361;
  std::string bloch_output;
  std::string arc_output;
};

int cmd_evolve(const GlobalOptions& g, const ProtocolOptions& p,
               const EvolveOptions& e, std::ostream& out) {
  const Overlap x = resolve_overlap(g);
  const Protocol protocol = build_protocol(p, x);
  const Trajectory traj = evolve(initial_state(x), protocol, x, e.samples);
  const std::string format = g.format.value_or("csv");

  std::string bloch_path = e.bloch_output;
  if (bloch_path.empty()) bloch_path = derived_path(g.output, ".bloch.csv");
  std::string arc_path = e.arc_output;
  if (e.with_arc && arc_path.empty()) {
    arc_path = derived_path(g.output, ".arc.csv");
    if (arc_path.empty())
      throw PreconditionError("--with-arc on stdout needs --arc-output");
  }

  write_to(g.output, out, [&](std::ostream& os) {
    if (format == "json") {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const QubitState& s = traj.states[i];
        rows.push_back({{"t", traj.times[i]},
                        {"re0", s.c0.real()},
                        {"im0", s.c0.imag()},
                        {"re1", s.c1.real()},
                        {"im1", s.c1.imag()},
                        {"fidelity", fidelity(s)}});
      }
      nlohmann::json j = {{"x", x.value()},
                          {"protocol", protocol},
                          {"final_fidelity", fidelity(traj.states.back())},
                          {"trajectory", rows}};
      os << j.dump(2) << '\n';
    } else {
      write_trajectory_csv(os, traj);
    }
  });
  if (!bloch_path.empty()) {
    const BlochTrajectory bloch = project_trajectory(traj);
    write_to(bloch_path, out,
             [&](std::ostream& os) { write_bloch_csv(os, bloch); });
  }
  if (e.with_arc) {
    const auto arc = singular_arc_samples(x, e.arc_samples);
    write_to(arc_path, out, [&](std::ostream& os) { write_arc_csv(os, arc); });
  }
  return kSuccess;
}

struct VerifyOptions {
  int samples = 2000;
  double tol_phi = 1e-6;
  double tol_hc = 1e-6;
  std::string records_csv;
};

int cmd_verify(const GlobalOptions& g, const ProtocolOptions& p,
               const VerifyOptions& v, std::ostream& out, std::ostream& err) {
  const Overlap x = resolve_overlap(g);
  const Protocol protocol = build_protocol(p, x);
  PmpConfig config;
  config.samples = v.samples;
  config.tol_phi = v.tol_phi;
  config.tol_hc = v.tol_hc;
  const VerificationReport report = verify(protocol, x, config);
  const std::string format = g.format.value_or("json");

  write_to(g.output, out, [&](std::ostream& os) {
    if (format == "json") {
      nlohmann::json j = report;
      j["x"] = x.value();
      j["protocol"] = protocol;
      os << j.dump(2) << '\n';
    } else {
      write_records_csv(os, report);
    }
  });
  if (!v.records_csv.empty()) {
    write_to(v.records_csv, out,
             [&](std::ostream& os) { write_records_csv(os, report); });
  }
  if (report.passed()) return kSuccess;
  err << "verification " << to_string(report.status) << ": "
      << report.violations.size() << " violation(s)\n";
  return kVerificationFailed;
}

struct SweepOptions {
  int n_min = 1;
  int n_max = 40;
  bool pi_units = false;
};

int cmd_sweep(const GlobalOptions& g, const SweepOptions& s, std::ostream& out) {
  const std::vector<SweepRow> rows = sweep_times(s.n_min, s.n_max);
  const std::string format = g.format.value_or("csv");
  write_to(g.output, out, [&](std::ostream& os) {
    if (format == "json") {
      os << nlohmann::json(rows).dump(2) << '\n';
    } else {
      write_sweep_csv(os, rows, s.pi_units);
    }
  });
  return kSuccess;
}

struct GradOptions {
  std::optional<std::string> tf;
  int cells = 200;
  int max_iter = 500;
};

int cmd_grad_opt(const GlobalOptions& g, const GradOptions& o, std::ostream& out) {
  const Overlap x = resolve_overlap(g);
  const double tf = o.tf ? parse_time(*o.tf) : optimal_times(x).tf;
  GradientOptions options;
  options.max_iter = o.max_iter;
  const GradOptResult result = gradient_descent(x, tf, o.cells, options);
  const double dt = tf / o.cells;
  const std::string format = g.format.value_or("json");
  write_to(g.output, out, [&](std::ostream& os) {
    if (format == "json") {
      nlohmann::json j = result;
      j["x"] = x.value();
      j["tf"] = tf;
      j["cells"] = o.cells;
      j["dt"] = dt;
      j["final_fidelity"] = result.fidelity_history.back();
      os << j.dump(2) << '\n';
    } else {
      os << "cell,t,u\n";
      for (std::size_t k = 0; k < result.u_grid.size(); ++k) {
        os << k << ',' << format_real(dt * static_cast<double>(k)) << ','
           << format_real(result.u_grid[k]) << '\n';
      }
    }
  });
  return kSuccess;
}

int cmd_bloch_arc(const GlobalOptions& g, int samples, std::ostream& out) {
  const Overlap x = resolve_overlap(g);
  const auto arc = singular_arc_samples(x, samples);
  const std::string format = g.format.value_or("csv");
  write_to(g.output, out, [&](std::ostream& os) {
    if (format == "json") {
      nlohmann::json rows = nlohmann::json::array();
      for (const ArcSample& a : arc) rows.push_back({{"phi", a.phi}, {"theta", a.theta}});
      os << rows.dump(2) << '\n';
    } else {
      write_arc_csv(os, arc);
    }
  });
  return kSuccess;
}

}  // namespace

double parse_time(const std::string& text) {
  std::string body = text;
  double scale = 1.0;
  for (const std::string suffix : {"pi", "PI", "Pi", "\xCF\x80"}) {
    if (body.size() >= suffix.size() &&
        body.compare(body.size() - suffix.size(), suffix.size(), suffix) == 0) {
      body.erase(body.size() - suffix.size());
      scale = kPi;
      break;
    }
  }
  if (body.empty() || body == "+") {
    if (scale == kPi) return kPi;
    throw DomainError("malformed time value '" + text + "'");
  }
  if (body == "-" && scale == kPi) return -kPi;
  if (scale == kPi && body.back() == '*') body.pop_back();
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(body.c_str(), &end);
  if (end == body.c_str() || *end != '\0' || errno == ERANGE ||
      !std::isfinite(value)) {
    throw DomainError("malformed time value '" + text + "'");
  }
  return value * scale;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Time-optimal Grover search: dynamics, optimal protocols and "
               "Pontryagin verification"};
  app.name("grover-pmp");
  app.require_subcommand(1);

  GlobalOptions g;
  auto* opt_x = app.add_option("--x", g.x, "Overlap x = <psi0|target>, 0 < x < 1");
  auto* opt_n = app.add_option("--n", g.n, "Qubit count; sets x = 2^(-n/2)");
  opt_x->excludes(opt_n);
  app.add_option("--output", g.output, "Output path, '-' for stdout")
      ->capture_default_str();
  app.add_option("--format", g.format, "Output format (csv or json)")
      ->check(CLI::IsMember({"csv", "json"}));

  ProtocolOptions evolve_protocol;
  ProtocolOptions verify_protocol;
  EvolveOptions evolve_opts;
  VerifyOptions verify_opts;
  SweepOptions sweep_opts;
  GradOptions grad_opts;
  int arc_samples = 361;

  auto* optimal = app.add_subcommand("optimal-times",
                                     "Closed-form bang-singular-bang times");
  auto* evolve_cmd = app.add_subcommand("evolve", "Evolve a protocol and write CSV");
  add_protocol_options(evolve_cmd, evolve_protocol);
  evolve_cmd->add_option("--samples", evolve_opts.samples, "Samples per segment")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evolve_cmd->add_option("--bloch-output", evolve_opts.bloch_output,
                         "Bloch-angle CSV path");
  evolve_cmd->add_flag("--with-arc", evolve_opts.with_arc,
                       "Also write singular-arc samples");
  evolve_cmd->add_option("--arc-output", evolve_opts.arc_output,
                         "Singular-arc CSV path");
  evolve_cmd->add_option("--arc-samples", evolve_opts.arc_samples,
                         "Number of singular-arc samples")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "Check Pontryagin's conditions");
  add_protocol_options(verify_cmd, verify_protocol);
  verify_cmd->add_option("--samples", verify_opts.samples, "Verification grid size")
      ->capture_default_str();
  verify_cmd->add_option("--tol-phi", verify_opts.tol_phi,
                         "Switching-function tolerance")
      ->capture_default_str();
  verify_cmd->add_option("--tol-hc", verify_opts.tol_hc,
                         "Pontryagin-Hamiltonian tolerance")
      ->capture_default_str();
  verify_cmd->add_option("--records-csv", verify_opts.records_csv,
                         "Also write t,u,phi,hc records here");

  auto* sweep_cmd = app.add_subcommand("sweep", "Optimal, singular and Grover times");
  sweep_cmd->add_option("--n-min", sweep_opts.n_min, "Smallest qubit count")
      ->capture_default_str();
  sweep_cmd->add_option("--n-max", sweep_opts.n_max, "Largest qubit count")
      ->capture_default_str();
  sweep_cmd->add_flag("--pi-units", sweep_opts.pi_units, "Report times over pi");

  auto* grad_cmd = app.add_subcommand("grad-opt", "Projected gradient ascent");
  grad_cmd->add_option("--tf", grad_opts.tf, "Final time (accepts a pi suffix)");
  grad_cmd->add_option("--cells", grad_opts.cells, "Control cells")
      ->capture_default_str();
  grad_cmd->add_option("--max-iter", grad_opts.max_iter, "Iteration limit")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* arc_cmd = app.add_subcommand("bloch-arc", "Sample the singular arc");
  arc_cmd->add_option("--samples", arc_samples, "Number of samples")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();

  for (CLI::App* sub : {optimal, evolve_cmd, verify_cmd, sweep_cmd, grad_cmd, arc_cmd})
    sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  auto with_custom = [](ProtocolOptions p) {
    if (!p.file.empty()) p.kind = "custom";
    return p;
  };

  try {
    if (optimal->parsed()) return cmd_optimal_times(g, out);
    if (evolve_cmd->parsed())
      return cmd_evolve(g, with_custom(evolve_protocol), evolve_opts, out);
    if (verify_cmd->parsed())
      return cmd_verify(g, with_custom(verify_protocol), verify_opts, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(g, sweep_opts, out);
    if (grad_cmd->parsed()) return cmd_grad_opt(g, grad_opts, out);
    return cmd_bloch_arc(g, arc_samples, out);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const nlohmann::json::exception& e) {
    err << "protocol file error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace grover_pmp::cli
