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
#include <string>
#include <vector>

#include "aces/pauli.hpp"

namespace aces {

/// One conjugation-table entry: G P G^dag = sign * (Pauli with code `pauli`).
struct TableEntry {
  std::int8_t sign = +1;
  std::uint8_t pauli = 0;
};

/// A Clifford gate represented purely by its action on support Paulis under
/// conjugation. Tables are bijections on the 4^arity support codes, fix the
/// identity, and preserve commutation; validate() enforces all three.
struct CliffordGate {
  std::string name;
  unsigned arity = 1;  // 1 or 2
  std::vector<TableEntry> table;  // indexed by support code, size 4^arity

  /// Throws std::invalid_argument if any table invariant fails.
  void validate() const;

  /// Conjugation table lookup. Throws std::invalid_argument when the code is
  /// out of range for the gate's arity.
  TableEntry conjugate(unsigned code) const;
};

/// Table of the composite "apply g first, then h". Arities must match.
CliffordGate compose_tables(const CliffordGate& g, const CliffordGate& h);

/// True when applying the gate twice is the identity map with all +1 signs.
bool is_self_inverse(const CliffordGate& g);

struct GateSet {
  std::vector<CliffordGate> one_qubit;
  std::vector<CliffordGate> two_qubit;

  const CliffordGate* find(const std::string& name) const;
  void validate() const;  // unique names, each gate valid
};

/// The default set: {I, X, Y, Z, H, S} on one qubit plus CZ. Tables match
/// textbook conjugation rules, e.g. H: X->Z(+), Z->X(+), Y->Y(-).
GateSet builtin_gateset();

/// Shortest realization of g^-1 as a sequence of gate names from gs: a
/// single set gate whose table inverts g when one exists, otherwise repeated
/// applications of g itself (S^-1 = S.S.S for the builtin set). Throws
/// std::invalid_argument when no inverse is expressible.
std::vector<std::string> inverse_sequence(const GateSet& gs,
                                          const CliffordGate& g);

/// A gate location: a named gate pinned to an ordered qubit tuple.
struct LocationKey {
  std::string gate;
  std::vector<std::uint32_t> qubits;

  bool operator==(const LocationKey& o) const {
    return gate == o.gate && qubits == o.qubits;
  }
  bool operator<(const LocationKey& o) const {
    if (gate != o.gate) return gate < o.gate;
    return qubits < o.qubits;
  }
  std::string str() const;
};

/// Every location of a gate set on n qubits with nearest-neighbour linear
/// connectivity: each one-qubit gate on each qubit, then each two-qubit gate
/// on each adjacent pair (i, i+1). Order is gate-major within each arity.
std::vector<LocationKey> linear_locations(const GateSet& gs,
                                          std::uint32_t n_qubits);

}  // namespace aces
