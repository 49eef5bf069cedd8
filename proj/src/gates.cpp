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

#include "aces/gates.hpp"

#include <stdexcept>

namespace aces {

namespace {

bool is_identity_table(const CliffordGate& g) {
  for (unsigned p = 0; p < g.table.size(); ++p) {
    if (g.table[p].pauli != p || g.table[p].sign != +1) return false;
  }
  return true;
}

CliffordGate make_1q(const std::string& name,
                     std::initializer_list<TableEntry> entries) {
  CliffordGate g;
  g.name = name;
  g.arity = 1;
  g.table.assign(entries);
  return g;
}

}  // namespace

void CliffordGate::validate() const {
  unsigned dim = 1u << (2 * arity);
  if (arity != 1 && arity != 2) {
    throw std::invalid_argument("gate " + name + ": arity must be 1 or 2");
  }
  if (table.size() != dim) {
    throw std::invalid_argument("gate " + name + ": table has wrong size");
  }
  if (table[0].pauli != 0 || table[0].sign != +1) {
    throw std::invalid_argument("gate " + name + ": identity not fixed");
  }
  std::vector<bool> seen(dim, false);
  for (unsigned p = 0; p < dim; ++p) {
    unsigned q = table[p].pauli;
    if (q >= dim || seen[q]) {
      throw std::invalid_argument("gate " + name + ": table not a bijection");
    }
    if (table[p].sign != +1 && table[p].sign != -1) {
      throw std::invalid_argument("gate " + name + ": bad sign");
    }
    seen[q] = true;
  }
  for (unsigned p = 0; p < dim; ++p) {
    for (unsigned q = 0; q < dim; ++q) {
      if (support_symplectic_inner(table[p].pauli, table[q].pauli, arity) !=
          support_symplectic_inner(p, q, arity)) {
        throw std::invalid_argument("gate " + name +
                                    ": conjugation breaks commutation");
      }
    }
  }
}

TableEntry CliffordGate::conjugate(unsigned code) const {
  if (code >= table.size()) {
    throw std::invalid_argument("gate " + name + ": support code " +
                                std::to_string(code) + " out of range");
  }
  return table[code];
}

CliffordGate compose_tables(const CliffordGate& g, const CliffordGate& h) {
  if (g.arity != h.arity) {
    throw std::invalid_argument("compose_tables: arity mismatch");
  }
  CliffordGate out;
  out.name = g.name + ";" + h.name;
  out.arity = g.arity;
  out.table.resize(g.table.size());
  for (unsigned p = 0; p < g.table.size(); ++p) {
    TableEntry a = g.table[p];
    TableEntry b = h.table[a.pauli];
    out.table[p] = {static_cast<std::int8_t>(a.sign * b.sign), b.pauli};
  }
  return out;
}

bool is_self_inverse(const CliffordGate& g) {
  return is_identity_table(compose_tables(g, g));
}

const CliffordGate* GateSet::find(const std::string& name) const {
  for (const auto& g : one_qubit) {
    if (g.name == name) return &g;
  }
  for (const auto& g : two_qubit) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

void GateSet::validate() const {
  std::vector<std::string> names;
  auto check = [&](const CliffordGate& g, unsigned arity) {
    if (g.arity != arity) {
      throw std::invalid_argument("gate " + g.name + ": wrong arity list");
    }
    g.validate();
    for (const auto& n : names) {
      if (n == g.name) {
        throw std::invalid_argument("duplicate gate name " + g.name);
      }
    }
    names.push_back(g.name);
  };
  for (const auto& g : one_qubit) check(g, 1);
  for (const auto& g : two_qubit) check(g, 2);
}

GateSet builtin_gateset() {
  GateSet gs;
  // Digit order I,X,Y,Z.
  gs.one_qubit.push_back(make_1q("I", {{+1, 0}, {+1, 1}, {+1, 2}, {+1, 3}}));
  gs.one_qubit.push_back(make_1q("X", {{+1, 0}, {+1, 1}, {-1, 2}, {-1, 3}}));
  gs.one_qubit.push_back(make_1q("Y", {{+1, 0}, {-1, 1}, {+1, 2}, {-1, 3}}));
  gs.one_qubit.push_back(make_1q("Z", {{+1, 0}, {-1, 1}, {-1, 2}, {+1, 3}}));
  gs.one_qubit.push_back(make_1q("H", {{+1, 0}, {+1, 3}, {-1, 2}, {+1, 1}}));
  gs.one_qubit.push_back(make_1q("S", {{+1, 0}, {+1, 2}, {-1, 1}, {+1, 3}}));

  // CZ from the symplectic update z1 ^= x2, z2 ^= x1 with a sign flip iff
  // x1 & x2 & (z1 ^ z2).
  CliffordGate cz;
  cz.name = "CZ";
  cz.arity = 2;
  cz.table.resize(16);
  for (unsigned code = 0; code < 16; ++code) {
    unsigned d0 = support_digit(code, 2, 0);
    unsigned d1 = support_digit(code, 2, 1);
    bool x1 = digit_x_bit(d0), z1 = digit_z_bit(d0);
    bool x2 = digit_x_bit(d1), z2 = digit_z_bit(d1);
    bool flip = x1 && x2 && (z1 ^ z2);
    unsigned nd0 = digit_from_bits(x1, z1 ^ x2);
    unsigned nd1 = digit_from_bits(x2, z2 ^ x1);
    cz.table[code] = {static_cast<std::int8_t>(flip ? -1 : +1),
                      static_cast<std::uint8_t>(nd0 * 4 + nd1)};
  }
  gs.two_qubit.push_back(cz);

  gs.validate();
  return gs;
}

std::vector<std::string> inverse_sequence(const GateSet& gs,
                                          const CliffordGate& g) {
  const auto& pool = g.arity == 1 ? gs.one_qubit : gs.two_qubit;
  for (const auto& h : pool) {
    if (is_identity_table(compose_tables(g, h))) return {h.name};
  }
  CliffordGate acc = g;
  for (unsigned r = 2; r <= 64; ++r) {
    acc = compose_tables(acc, g);
    if (is_identity_table(acc)) {
      return std::vector<std::string>(r - 1, g.name);
    }
  }
  throw std::invalid_argument("gate " + g.name + ": no expressible inverse");
}

std::string LocationKey::str() const {
  std::string s = gate + "@(";
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(qubits[i]);
  }
  return s + ")";
}

std::vector<LocationKey> linear_locations(const GateSet& gs,
                                          std::uint32_t n_qubits) {
  std::vector<LocationKey> locs;
  for (const auto& g : gs.one_qubit) {
    for (std::uint32_t q = 0; q < n_qubits; ++q) {
      locs.push_back({g.name, {q}});
    }
  }
  for (const auto& g : gs.two_qubit) {
    for (std::uint32_t q = 0; q + 1 < n_qubits; ++q) {
      locs.push_back({g.name, {q, q + 1}});
    }
  }
  return locs;
}

}  // namespace aces
