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

#include <doctest.h>

#include <stdexcept>

#include "aces/gates.hpp"
#include "oracles.hpp"

using namespace aces;

namespace {

void check_entry(const CliffordGate& g, const char* in, int sign,
                 const char* out) {
  TableEntry e = g.conjugate(parse_support_label(in, g.arity));
  CHECK(e.sign == sign);
  CHECK(support_label(e.pauli, g.arity) == out);
}

}  // namespace

TEST_CASE("builtin gateset shape and validity") {
  GateSet gs = builtin_gateset();
  CHECK(gs.one_qubit.size() == 6);
  CHECK(gs.two_qubit.size() == 1);
  CHECK_NOTHROW(gs.validate());
  CHECK(gs.find("H") != nullptr);
  CHECK(gs.find("CZ") != nullptr);
  CHECK(gs.find("T") == nullptr);
}

TEST_CASE("builtin conjugation table examples") {
  GateSet gs = builtin_gateset();
  const CliffordGate& h = *gs.find("H");
  check_entry(h, "X", +1, "Z");
  check_entry(h, "Z", +1, "X");
  check_entry(h, "Y", -1, "Y");
  check_entry(h, "I", +1, "I");

  const CliffordGate& s = *gs.find("S");
  check_entry(s, "X", +1, "Y");
  check_entry(s, "Y", -1, "X");
  check_entry(s, "Z", +1, "Z");

  const CliffordGate& z = *gs.find("Z");
  check_entry(z, "X", -1, "X");

  const CliffordGate& cz = *gs.find("CZ");
  check_entry(cz, "XI", +1, "XZ");
  check_entry(cz, "IX", +1, "ZX");
  check_entry(cz, "ZI", +1, "ZI");
  check_entry(cz, "XX", +1, "YY");

  CHECK_THROWS_AS(h.conjugate(4), std::invalid_argument);
}

TEST_CASE("every builtin table entry matches dense conjugation") {
  GateSet gs = builtin_gateset();
  auto check_gate = [](const CliffordGate& g) {
    test::Mat u = test::gate_unitary(g.name);
    for (unsigned code = 0; code < g.table.size(); ++code) {
      auto [sign, pauli] = test::conjugate_oracle(u, code, g.arity);
      TableEntry e = g.conjugate(code);
      CHECK(e.sign == sign);
      CHECK(e.pauli == pauli);
    }
  };
  for (const auto& g : gs.one_qubit) check_gate(g);
  for (const auto& g : gs.two_qubit) check_gate(g);
}

TEST_CASE("table validation rejects broken tables") {
  GateSet gs = builtin_gateset();
  CliffordGate g = *gs.find("H");

  CliffordGate not_bijective = g;
  not_bijective.table[1] = not_bijective.table[2];
  CHECK_THROWS_AS(not_bijective.validate(), std::invalid_argument);

  CliffordGate moves_identity = g;
  moves_identity.table[0] = {+1, 1};
  moves_identity.table[1] = {+1, 0};
  CHECK_THROWS_AS(moves_identity.validate(), std::invalid_argument);

  // Swapping IX <-> XX in an otherwise-identity two-qubit table keeps the
  // bijection but breaks commutation against ZI.
  CliffordGate swapped = *gs.find("CZ");
  unsigned ix = parse_support_label("IX", 2);
  unsigned xx = parse_support_label("XX", 2);
  for (unsigned c = 0; c < 16; ++c) {
    swapped.table[c] = {+1, static_cast<std::uint8_t>(c)};
  }
  swapped.table[ix] = {+1, static_cast<std::uint8_t>(xx)};
  swapped.table[xx] = {+1, static_cast<std::uint8_t>(ix)};
  CHECK_THROWS_AS(swapped.validate(), std::invalid_argument);
}

TEST_CASE("conjugating by a gate then its inverse is the identity map") {
  GateSet gs = builtin_gateset();
  auto check_gate = [&](const CliffordGate& g) {
    std::vector<std::string> inv = inverse_sequence(gs, g);
    for (unsigned code = 0; code < g.table.size(); ++code) {
      TableEntry e = g.conjugate(code);
      int sign = e.sign;
      unsigned p = e.pauli;
      for (const auto& name : inv) {
        TableEntry e2 = gs.find(name)->conjugate(p);
        sign *= e2.sign;
        p = e2.pauli;
      }
      CHECK(p == code);
      CHECK(sign == +1);
    }
  };
  for (const auto& g : gs.one_qubit) check_gate(g);
  for (const auto& g : gs.two_qubit) check_gate(g);
}

TEST_CASE("compose and self-inverse") {
  GateSet gs = builtin_gateset();
  const CliffordGate& h = *gs.find("H");
  const CliffordGate& s = *gs.find("S");

  CliffordGate hh = compose_tables(h, h);
  for (unsigned c = 0; c < 4; ++c) {
    CHECK(hh.conjugate(c).pauli == c);
    CHECK(hh.conjugate(c).sign == +1);
  }
  CHECK(is_self_inverse(h));
  CHECK(is_self_inverse(*gs.find("X")));
  CHECK(is_self_inverse(*gs.find("CZ")));
  CHECK_FALSE(is_self_inverse(s));

  CHECK(inverse_sequence(gs, h) == std::vector<std::string>{"H"});
  CHECK(inverse_sequence(gs, s) == std::vector<std::string>{"S", "S", "S"});
}

TEST_CASE("linear locations enumerate gate-major, one-qubit first") {
  GateSet gs = builtin_gateset();
  std::vector<LocationKey> locs = linear_locations(gs, 3);
  // 6 one-qubit gates x 3 qubits + CZ x 2 adjacent pairs.
  REQUIRE(locs.size() == 20);
  CHECK(locs[0].gate == "I");
  CHECK(locs[0].qubits == std::vector<std::uint32_t>{0});
  CHECK(locs[2].qubits == std::vector<std::uint32_t>{2});
  CHECK(locs[3].gate == "X");
  CHECK(locs[18].gate == "CZ");
  CHECK(locs[18].qubits == std::vector<std::uint32_t>{0, 1});
  CHECK(locs[19].qubits == std::vector<std::uint32_t>{1, 2});
}
