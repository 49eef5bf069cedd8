// Copyright 2026 The ACES Toolkit Authors
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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "aces/protocol.hpp"

namespace aces::io {

using nlohmann::json;

// Gate sets: {"gates": [{name, arity, table: {label: {sign, label}}}]}.
json gateset_to_json(const GateSet& gs);
GateSet gateset_from_json(const json& j);

// Circuits: {n_qubits, moments: [[{gate, qubits: [...]}, ...], ...],
// metadata}.
json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

// Channels: {k, probs: {label: value}}.
json channel_to_json(const PauliChannel& ch);
PauliChannel channel_from_json(const json& j);

// Noise models: [{gate, qubits, channel}].
json noise_model_to_json(const NoiseModel& nm);
NoiseModel noise_model_from_json(const json& j);

// Counts: {job_id, circuit_id, twirl_id, prep_id, measured_qubits,
// counts: {bitstring: n}} — the same schema for simulator output and
// hardware ingestion.
json counts_to_json(const CountsTable& t);
CountsTable counts_from_json(const json& j);

json config_to_json(const RunConfig& c);
RunConfig config_from_json(const json& j);

json plan_to_json(const ExperimentPlan& plan);
ExperimentPlan plan_from_json(const json& j);

json estimates_to_json(const EigenvalueEstimates& est);
EigenvalueEstimates estimates_from_json(const json& j);

json report_to_json(const SolveReport& report);

/// Eigenstate label for a prepared qubit: "0", "1", "+", "-", "+i", "-i".
std::string prep_state_label(std::uint8_t basis, bool negative);

json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const json& j);

/// Plot-data CSVs next to the report: estimated eigenvalues and error rates
/// per parameter, plus absolute-error and per-gate TVD files when the report
/// carries ground truth.
void write_report_csvs(const SolveReport& report,
                       const std::filesystem::path& dir);

}  // namespace aces::io
