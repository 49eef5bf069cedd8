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
#include <optional>
#include <string>
#include <vector>

#include "aces/gates.hpp"
#include "aces/pauli.hpp"
#include "aces/rng.hpp"

namespace aces {

struct GateApp {
  std::string gate;
  std::vector<std::uint32_t> qubits;

  bool operator==(const GateApp& o) const {
    return gate == o.gate && qubits == o.qubits;
  }
};

/// One moment: gate applications on pairwise-disjoint qubit tuples.
using Moment = std::vector<GateApp>;

struct CircuitMetadata {
  std::uint32_t m_half = 0;
  std::uint32_t m_prime = 0;
  std::uint64_t seed = 0;
};

/// An ordered list of moments over a fixed register. Immutable after
/// construction in practice; propagation and generation never mutate inputs.
struct Circuit {
  std::uint32_t n_qubits = 0;
  std::vector<Moment> moments;
  std::optional<CircuitMetadata> metadata;

  std::size_t depth() const { return moments.size(); }

  /// Throws std::invalid_argument on out-of-range qubits or a qubit reused
  /// within a moment.
  void validate(const GateSet& gs) const;

  bool operator==(const Circuit& o) const {
    return n_qubits == o.n_qubits && moments == o.moments;
  }
};

/// One recorded conjugation step: a gate location whose input restriction was
/// not the identity.
struct TraceStep {
  std::string gate;
  std::vector<std::uint32_t> qubits;
  std::uint8_t input_code = 0;  // support code of the Pauli entering the gate
  std::int8_t sign = +1;

  LocationKey location() const { return {gate, qubits}; }
};

struct PropagationTrace {
  PauliString input;
  std::vector<TraceStep> steps;
  PauliString output;  // sign folded into net_sign; output.sign() == +1
  int net_sign = +1;
};

/// Conjugates p through the circuit moment by moment. Gates whose input
/// restriction is the identity contribute nothing and are not recorded.
PropagationTrace propagate(const Circuit& c, const GateSet& gs,
                           const PauliString& p);

/// Reversed moment order with each gate replaced by its inverse sequence.
/// A moment whose inverse needs several applications (S^-1 = S.S.S) expands
/// into that many moments, gates with shorter sequences occupying the leading
/// ones.
std::vector<Moment> invert_circuit_section(const std::vector<Moment>& section,
                                           const GateSet& gs);

/// Builds the mirror+random structure: m_half moments alternating one-qubit
/// layers (a random gate on every qubit) with two-qubit layers (a random
/// maximal disjoint matching of the line, a random two-qubit gate per pair),
/// followed by their inverse, then m_prime moments of randomly chosen layer
/// type. Mirror layers draw only from the self-inverse gates of the set so
/// the mirror occupies exactly 2*m_half moments; the random section draws
/// from the full set. Deterministic given the rng stream.
Circuit generate_circuit(std::uint32_t n_qubits, std::uint32_t m_half,
                         std::uint32_t m_prime, const GateSet& gs, Rng rng);

}  // namespace aces
