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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aces/channels.hpp"
#include "aces/circuit.hpp"

namespace aces {

/// One twirl insertion at a gate location: P_a chosen uniformly before the
/// gate, P_a' = G P_a G^dag after it, with the conjugation sign recorded.
/// Insertions are noiseless frame data, not extra noisy gate locations.
struct TwirlInsertion {
  std::uint32_t moment = 0;
  std::uint32_t app_index = 0;  // position within the moment
  std::uint8_t pauli_in = 0;    // P_a, support code
  std::uint8_t pauli_out = 0;   // P_a', support code
  std::int8_t sign = +1;        // sign of G P_a G^dag
};

struct TwirledCircuit {
  Circuit base;
  std::vector<TwirlInsertion> insertions;  // one per gate location, in order
};

/// Per-qubit eigenstate preparation. basis[q] is the Pauli digit whose
/// eigenstate is prepared (0 means an identity qubit, pinned to |0>);
/// negative[q] selects the -1 eigenstate. sign is the product of the chosen
/// single-qubit eigenvalues.
struct PrepSpec {
  std::vector<std::uint8_t> basis;
  std::vector<std::uint8_t> negative;
  int sign = +1;
};

struct ShotJob {
  std::string id;
  std::uint32_t circuit_id = 0;
  std::uint32_t twirl_id = 0;
  std::uint32_t prep_id = 0;
  PauliString probe;          // P_j, the circuit-input Pauli
  PrepSpec prep;
  PauliString measured_pauli; // C(P_j) with sign +1
  int propagation_sign = +1;
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;     // fully derived stream key
};

struct CountsTable {
  std::string job_id;
  std::uint32_t circuit_id = 0;
  std::uint32_t twirl_id = 0;
  std::uint32_t prep_id = 0;
  std::vector<std::uint32_t> measured_qubits;
  std::map<std::string, std::uint64_t> counts;  // bitstring -> count

  std::uint64_t total_shots() const;
  /// Mean of (-1)^{popcount(bitstring)} over shots.
  double parity_expectation() const;
};

/// Exact circuit eigenvalue: propagates p, multiplies the channel eigenvalue
/// of each trace step's location at the step's input support Pauli. The
/// Clifford sign is returned separately from the noise product. Throws when
/// the model misses a traversed location.
struct AnalyticEigenvalue {
  int sign = +1;
  double lambda = 1.0;
};
AnalyticEigenvalue analytic_circuit_eigenvalue(const Circuit& c,
                                               const GateSet& gs,
                                               const NoiseModel& nm,
                                               const PauliString& p);

/// Same quantity evaluated on a twirled circuit, with the insertion Paulis
/// contributing their conjugation signs. Under Pauli noise this equals the
/// base circuit's value.
AnalyticEigenvalue analytic_circuit_eigenvalue(const TwirledCircuit& tc,
                                               const GateSet& gs,
                                               const NoiseModel& nm,
                                               const PauliString& p);

/// Independently uniform P_a per gate location, P_a' from the conjugation
/// table.
TwirledCircuit twirl_circuit(const Circuit& c, const GateSet& gs, Rng rng);

/// Pauli-frame Monte Carlo: per shot, walks the circuit composing one fault
/// per gate location into the frame before conjugating the frame through the
/// gate (the noise acts ahead of the ideal gate), then flips the ideal parity
/// iff the final frame anticommutes with measured_pauli. Emitted bitstrings
/// are uniform among those of the required parity over the measured qubits.
/// Deterministic given job.seed.
CountsTable sample_shots(const Circuit& c, const GateSet& gs,
                         const NoiseModel& nm, const ShotJob& job);
CountsTable sample_shots(const TwirledCircuit& tc, const GateSet& gs,
                         const NoiseModel& nm, const ShotJob& job);

/// n_twirls twirls of c with the shot budget floor-divided, remainder going
/// to the leading twirls so totals match exactly.
std::vector<std::pair<TwirledCircuit, std::uint64_t>> ensemble_plan(
    const Circuit& c, const GateSet& gs, std::uint32_t n_twirls,
    std::uint64_t shots_per_circuit, Rng rng);

}  // namespace aces
