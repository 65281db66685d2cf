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

#include "grover_pmp/io.hpp"

#include <algorithm>
#include <cctype>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

namespace grover_pmp {

using nlohmann::json;

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,re0,im0,re1,im1,fidelity\n";
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    const QubitState& s = trajectory.states[i];
    out << format_real(trajectory.times[i]) << ',' << format_real(s.c0.real())
        << ',' << format_real(s.c0.imag()) << ',' << format_real(s.c1.real())
        << ',' << format_real(s.c1.imag()) << ',' << format_real(fidelity(s))
        << '\n';
  }
}

void write_bloch_csv(std::ostream& out, const BlochTrajectory& trajectory) {
  out << "t,theta,phi\n";
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    out << format_real(trajectory.times[i]) << ','
        << format_real(trajectory.theta[i]) << ','
        << format_real(trajectory.phi[i]) << '\n';
  }
}

void write_arc_csv(std::ostream& out, const std::vector<ArcSample>& samples) {
  out << "phi,theta\n";
  for (const ArcSample& s : samples) {
    out << format_real(s.phi) << ',' << format_real(s.theta) << '\n';
  }
}

void write_records_csv(std::ostream& out, const VerificationReport& report) {
  out << "t,u,phi,hc\n";
  for (const SwitchingRecord& r : report.records) {
    out << format_real(r.t) << ',' << format_real(r.u) << ','
        << format_real(r.phi) << ',' << format_real(r.hc) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     bool pi_units) {
  const double scale = pi_units ? 1.0 / std::numbers::pi : 1.0;
  out << "n,x,tf_optimal,tf_singular,tf_grover,diff\n";
  for (const SweepRow& r : rows) {
    out << r.n << ',' << format_real(r.x) << ','
        << format_real(r.tf_optimal * scale) << ','
        << format_real(r.tf_singular * scale) << ','
        << format_real(r.tf_grover * scale) << ','
        << format_real(r.diff * scale) << '\n';
  }
}

void to_json(json& j, const Protocol& protocol) {
  json segs = json::array();
  for (const Segment& s : protocol.segments()) {
    segs.push_back({{"duration", s.duration}, {"u", s.u}});
  }
  j = json{{"label", protocol.label()}, {"segments", std::move(segs)}};
}

void from_json(const json& j, Protocol& protocol) {
  std::vector<Segment> segs;
  for (const json& s : j.at("segments")) {
    segs.push_back({s.at("duration").get<double>(), s.at("u").get<double>()});
  }
  protocol = Protocol(std::move(segs), j.value("label", std::string{}));
}

void to_json(json& j, const VerificationReport& report) {
  json records = json::array();
  for (const SwitchingRecord& r : report.records) {
    records.push_back({{"t", r.t}, {"u", r.u}, {"phi", r.phi}, {"hc", r.hc}});
  }
  json violations = json::array();
  for (const Violation& v : report.violations) {
    violations.push_back({{"t", v.t}, {"reason", to_string(v.kind)}});
  }
  j = json{{"status", to_string(report.status)},
           {"sign_condition_ok", report.sign_condition_ok},
           {"hc_constant_ok", report.hc_constant_ok},
           {"hc_nonpositive_ok", report.hc_nonpositive_ok},
           {"hc_mean", report.hc_mean},
           {"hc_max_dev", report.hc_max_dev},
           {"config",
            {{"lambda0", report.config.lambda0},
             {"tol_phi", report.config.tol_phi},
             {"tol_hc", report.config.tol_hc},
             {"samples", report.config.samples}}},
           {"violations", std::move(violations)},
           {"records", std::move(records)}};
}

void to_json(json& j, const GradOptResult& result) {
  j = json{{"u_grid", result.u_grid},
           {"fidelity_history", result.fidelity_history},
           {"iterations", result.iterations},
           {"projected_gradient_norm", result.projected_gradient_norm}};
}

void from_json(const json& j, GradOptResult& result) {
  j.at("u_grid").get_to(result.u_grid);
  j.at("fidelity_history").get_to(result.fidelity_history);
  j.at("iterations").get_to(result.iterations);
  j.at("projected_gradient_norm").get_to(result.projected_gradient_norm);
}

void to_json(json& j, const SweepRow& row) {
  j = json{{"n", row.n},
           {"x", row.x},
           {"tf_optimal", row.tf_optimal},
           {"tf_singular", row.tf_singular},
           {"tf_grover", row.tf_grover},
           {"diff", row.diff},
           {"grover_fidelity", row.grover_fidelity}};
}

Protocol parse_protocol(const std::string& text) {
  const bool blank = std::all_of(text.begin(), text.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
  if (blank) return Protocol{};
  return json::parse(text).get<Protocol>();
}

}  // namespace grover_pmp
