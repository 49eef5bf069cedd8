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

#include "aces/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace aces {

void Circuit::validate(const GateSet& gs) const {
  for (const auto& moment : moments) {
    std::vector<bool> used(n_qubits, false);
    for (const auto& app : moment) {
      const CliffordGate* g = gs.find(app.gate);
      if (g == nullptr) {
        throw std::invalid_argument("unknown gate " + app.gate);
      }
      if (app.qubits.size() != g->arity) {
        throw std::invalid_argument("gate " + app.gate + ": wrong qubit count");
      }
      for (auto q : app.qubits) {
        if (q >= n_qubits) {
          throw std::invalid_argument("qubit index out of range");
        }
        if (used[q]) {
          throw std::invalid_argument("qubit reused within a moment");
        }
        used[q] = true;
      }
    }
  }
}

PropagationTrace propagate(const Circuit& c, const GateSet& gs,
                           const PauliString& p) {
  if (p.n_qubits() != c.n_qubits) {
    throw std::invalid_argument("propagate: qubit count mismatch");
  }
  PropagationTrace trace;
  trace.input = p;
  trace.net_sign = p.sign();

  PauliString cur = p;
  cur.set_sign(+1);
  for (const auto& moment : c.moments) {
    for (const auto& app : moment) {
      const CliffordGate* g = gs.find(app.gate);
      if (g == nullptr) {
        throw std::invalid_argument("unknown gate " + app.gate);
      }
      unsigned code = 0;
      for (unsigned i = 0; i < g->arity; ++i) {
        code = support_with_digit(code, g->arity, i,
                                  cur.pauli_code(app.qubits[i]));
      }
      if (code == 0) continue;  // lambda_{G,I} = 1, nothing to record
      TableEntry e = g->table[code];
      trace.steps.push_back({app.gate, app.qubits,
                             static_cast<std::uint8_t>(code), e.sign});
      trace.net_sign *= e.sign;
      for (unsigned i = 0; i < g->arity; ++i) {
        cur.set_pauli_code(app.qubits[i], support_digit(e.pauli, g->arity, i));
      }
    }
  }
  trace.output = cur;
  return trace;
}

std::vector<Moment> invert_circuit_section(const std::vector<Moment>& section,
                                           const GateSet& gs) {
  std::vector<Moment> out;
  for (auto it = section.rbegin(); it != section.rend(); ++it) {
    std::vector<std::vector<std::string>> seqs;
    std::size_t longest = 0;
    for (const auto& app : *it) {
      const CliffordGate* g = gs.find(app.gate);
      if (g == nullptr) {
        throw std::invalid_argument("unknown gate " + app.gate);
      }
      seqs.push_back(inverse_sequence(gs, *g));
      longest = std::max(longest, seqs.back().size());
    }
    for (std::size_t t = 0; t < longest; ++t) {
      Moment m;
      for (std::size_t i = 0; i < it->size(); ++i) {
        if (t < seqs[i].size()) {
          m.push_back({seqs[i][t], (*it)[i].qubits});
        }
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

namespace {

Moment one_qubit_layer(std::uint32_t n, const std::vector<const CliffordGate*>& pool,
                       Rng& rng) {
  Moment m;
  for (std::uint32_t q = 0; q < n; ++q) {
    m.push_back({pool[rng.next_below(pool.size())]->name, {q}});
  }
  return m;
}

Moment two_qubit_layer(std::uint32_t n, const std::vector<const CliffordGate*>& pool,
                       Rng& rng) {
  Moment m;
  if (pool.empty() || n < 2) return m;
  // Random maximal disjoint matching on the line: add uniformly-chosen
  // available edges until none remains.
  std::vector<bool> taken(n, false);
  while (true) {
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t q = 0; q + 1 < n; ++q) {
      if (!taken[q] && !taken[q + 1]) candidates.push_back(q);
    }
    if (candidates.empty()) break;
    std::uint32_t q = candidates[rng.next_below(candidates.size())];
    taken[q] = taken[q + 1] = true;
    m.push_back({pool[rng.next_below(pool.size())]->name, {q, q + 1}});
  }
  std::sort(m.begin(), m.end(),
            [](const GateApp& a, const GateApp& b) { return a.qubits < b.qubits; });
  return m;
}

std::vector<const CliffordGate*> gate_pool(const std::vector<CliffordGate>& gates,
                                           bool self_inverse_only) {
  std::vector<const CliffordGate*> pool;
  for (const auto& g : gates) {
    if (!self_inverse_only || is_self_inverse(g)) pool.push_back(&g);
  }
  return pool;
}

}  // namespace

Circuit generate_circuit(std::uint32_t n_qubits, std::uint32_t m_half,
                         std::uint32_t m_prime, const GateSet& gs, Rng rng) {
  if (n_qubits < 1) {
    throw std::invalid_argument("generate_circuit: need at least one qubit");
  }
  auto pool1_all = gate_pool(gs.one_qubit, false);
  auto pool2_all = gate_pool(gs.two_qubit, false);
  // Mirror layers use only self-inverse gates so the inverse half is a
  // moment-for-moment reversal and the mirror spans exactly 2*m_half moments.
  auto pool1_mirror = gate_pool(gs.one_qubit, true);
  auto pool2_mirror = gate_pool(gs.two_qubit, true);
  if (pool1_all.empty()) {
    throw std::invalid_argument("generate_circuit: no one-qubit gates");
  }
  if (m_half > 0 && pool1_mirror.empty()) {
    throw std::invalid_argument(
        "generate_circuit: no self-inverse one-qubit gates for the mirror");
  }

  Circuit c;
  c.n_qubits = n_qubits;

  std::vector<Moment> mirror;
  for (std::uint32_t j = 0; j < m_half; ++j) {
    if (j % 2 == 0) {
      mirror.push_back(one_qubit_layer(n_qubits, pool1_mirror, rng));
    } else {
      mirror.push_back(two_qubit_layer(n_qubits, pool2_mirror, rng));
    }
  }
  c.moments = mirror;
  auto inverse = invert_circuit_section(mirror, gs);
  c.moments.insert(c.moments.end(), inverse.begin(), inverse.end());

  for (std::uint32_t j = 0; j < m_prime; ++j) {
    bool two = !pool2_all.empty() && n_qubits >= 2 && rng.next_bool();
    if (two) {
      c.moments.push_back(two_qubit_layer(n_qubits, pool2_all, rng));
    } else {
      c.moments.push_back(one_qubit_layer(n_qubits, pool1_all, rng));
    }
  }

  c.metadata = CircuitMetadata{m_half, m_prime, rng.seed()};
  return c;
}

}  // namespace aces
