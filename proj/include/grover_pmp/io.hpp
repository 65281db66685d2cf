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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "grover_pmp/bloch_geometric.hpp"
#include "grover_pmp/optimizer.hpp"
#include "grover_pmp/pmp_verifier.hpp"
#include "grover_pmp/protocols.hpp"
#include "grover_pmp/qubit_dynamics.hpp"

namespace grover_pmp {

/// Shortest-exact formatting used in every CSV: 17 significant digits.
[[nodiscard]] std::string format_real(double v);

/// t,re0,im0,re1,im1,fidelity
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
/// t,theta,phi
void write_bloch_csv(std::ostream& out, const BlochTrajectory& trajectory);
/// phi,theta
void write_arc_csv(std::ostream& out, const std::vector<ArcSample>& samples);
/// t,u,phi,hc
void write_records_csv(std::ostream& out, const VerificationReport& report);
/// n,x,tf_optimal,tf_singular,tf_grover,diff
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     bool pi_units);

/// Protocol throws through the Protocol constructor on invalid segments.
void to_json(nlohmann::json& j, const Protocol& protocol);
void from_json(const nlohmann::json& j, Protocol& protocol);

void to_json(nlohmann::json& j, const VerificationReport& report);

void to_json(nlohmann::json& j, const GradOptResult& result);
void from_json(const nlohmann::json& j, GradOptResult& result);

void to_json(nlohmann::json& j, const SweepRow& row);

/// Reads {label, segments: [{duration, u}]}. An empty or whitespace-only
/// document is the empty protocol.
[[nodiscard]] Protocol parse_protocol(const std::string& text);

}  // namespace grover_pmp
