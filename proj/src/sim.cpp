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

#include "aces/sim.hpp"

#include <bit>
#include <stdexcept>

namespace aces {

namespace {

class EigenvalueCache {
 public:
  explicit EigenvalueCache(const NoiseModel& nm) : nm_(nm) {}

  double lambda(const LocationKey& loc, unsigned code) {
    auto it = cache_.find(loc);
    if (it == cache_.end()) {
      it = cache_.emplace(loc, rates_to_eigenvalues(nm_.at(loc))).first;
    }
    return it->second.lambdas[code];
  }

 private:
  const NoiseModel& nm_;
  std::map<LocationKey, EigenvalueVector> cache_;
};

unsigned packed_from_digit(unsigned digit_code, unsigned arity) {
  unsigned packed = 0;
  for (unsigned i = 0; i < arity; ++i) {
    unsigned d = support_digit(digit_code, arity, i);
    packed |= static_cast<unsigned>(digit_x_bit(d)) << i;
    packed |= static_cast<unsigned>(digit_z_bit(d)) << (arity + i);
  }
  return packed;
}

unsigned digit_from_packed(unsigned packed, unsigned arity) {
  unsigned code = 0;
  for (unsigned i = 0; i < arity; ++i) {
    bool x = (packed >> i) & 1;
    bool z = (packed >> (arity + i)) & 1;
    code = support_with_digit(code, arity, i, digit_from_bits(x, z));
  }
  return code;
}

// Flattened gate location prepared for the shot loop: conjugation over
// packed (x|z) codes plus the location's fault CDF.
struct CompiledLoc {
  unsigned arity;
  std::uint32_t q0, q1;
  std::vector<std::uint8_t> table_packed;  // packed -> packed
  std::vector<double> cdf;                 // over digit codes
  std::vector<std::uint8_t> fault_packed;  // digit code -> packed
};

std::vector<CompiledLoc> compile_circuit(const Circuit& c, const GateSet& gs,
                                         const NoiseModel& nm) {
  std::vector<CompiledLoc> locs;
  for (const auto& moment : c.moments) {
    for (const auto& app : moment) {
      const CliffordGate* g = gs.find(app.gate);
      if (g == nullptr) {
        throw std::invalid_argument("unknown gate " + app.gate);
      }
      const PauliChannel& ch = nm.at({app.gate, app.qubits});
      unsigned dim = 1u << (2 * g->arity);
      CompiledLoc cl;
      cl.arity = g->arity;
      cl.q0 = app.qubits[0];
      cl.q1 = g->arity == 2 ? app.qubits[1] : 0;
      cl.table_packed.resize(dim);
      cl.fault_packed.resize(dim);
      cl.cdf.resize(dim);
      double acc = 0.0;
      for (unsigned p = 0; p < dim; ++p) {
        unsigned digit_in = digit_from_packed(p, g->arity);
        cl.table_packed[p] = static_cast<std::uint8_t>(
            packed_from_digit(g->table[digit_in].pauli, g->arity));
        cl.fault_packed[p] = static_cast<std::uint8_t>(
            packed_from_digit(p, g->arity));
        acc += ch.probs[p];
        cl.cdf[p] = acc;
      }
      cl.cdf[dim - 1] = 1.0;  // guard against rounding in the scan
      locs.push_back(std::move(cl));
    }
  }
  return locs;
}

}  // namespace

std::uint64_t CountsTable::total_shots() const {
  std::uint64_t total = 0;
  for (const auto& [bits, n] : counts) total += n;
  return total;
}

double CountsTable::parity_expectation() const {
  std::uint64_t total = 0;
  std::int64_t signed_sum = 0;
  for (const auto& [bits, n] : counts) {
    unsigned ones = 0;
    for (char ch : bits) ones += ch == '1';
    signed_sum += (ones & 1) ? -static_cast<std::int64_t>(n)
                             : static_cast<std::int64_t>(n);
    total += n;
  }
  if (total == 0) {
    throw std::invalid_argument("counts table has zero shots");
  }
  return static_cast<double>(signed_sum) / static_cast<double>(total);
}

AnalyticEigenvalue analytic_circuit_eigenvalue(const Circuit& c,
                                               const GateSet& gs,
                                               const NoiseModel& nm,
                                               const PauliString& p) {
  PropagationTrace trace = propagate(c, gs, p);
  EigenvalueCache cache(nm);
  AnalyticEigenvalue out;
  out.sign = trace.net_sign;
  for (const auto& step : trace.steps) {
    out.lambda *= cache.lambda(step.location(), step.input_code);
  }
  return out;
}

AnalyticEigenvalue analytic_circuit_eigenvalue(const TwirledCircuit& tc,
                                               const GateSet& gs,
                                               const NoiseModel& nm,
                                               const PauliString& p) {
  if (p.n_qubits() != tc.base.n_qubits) {
    throw std::invalid_argument("probe qubit count mismatch");
  }
  EigenvalueCache cache(nm);
  AnalyticEigenvalue out;
  out.sign = p.sign();

  PauliString cur = p;
  cur.set_sign(+1);
  std::size_t loc_index = 0;
  for (std::uint32_t mi = 0; mi < tc.base.moments.size(); ++mi) {
    const Moment& moment = tc.base.moments[mi];
    for (std::uint32_t ai = 0; ai < moment.size(); ++ai, ++loc_index) {
      const GateApp& app = moment[ai];
      const CliffordGate* g = gs.find(app.gate);
      if (g == nullptr) {
        throw std::invalid_argument("unknown gate " + app.gate);
      }
      const TwirlInsertion& ins = tc.insertions.at(loc_index);
      if (ins.moment != mi || ins.app_index != ai) {
        throw std::invalid_argument("twirl insertions out of order");
      }
      unsigned code = 0;
      for (unsigned i = 0; i < g->arity; ++i) {
        code = support_with_digit(code, g->arity, i,
                                  cur.pauli_code(app.qubits[i]));
      }
      if (support_symplectic_inner(ins.pauli_in, code, g->arity)) {
        out.sign = -out.sign;
      }
      TableEntry e = g->table[code];
      if (code != 0) {
        out.lambda *= cache.lambda({app.gate, app.qubits}, code);
        out.sign *= e.sign;
        for (unsigned i = 0; i < g->arity; ++i) {
          cur.set_pauli_code(app.qubits[i],
                             support_digit(e.pauli, g->arity, i));
        }
      }
      unsigned out_code = 0;
      for (unsigned i = 0; i < g->arity; ++i) {
        out_code = support_with_digit(out_code, g->arity, i,
                                      cur.pauli_code(app.qubits[i]));
      }
      if (support_symplectic_inner(ins.pauli_out, out_code, g->arity)) {
        out.sign = -out.sign;
      }
    }
  }
  return out;
}

TwirledCircuit twirl_circuit(const Circuit& c, const GateSet& gs, Rng rng) {
  TwirledCircuit tc;
  tc.base = c;
  for (std::uint32_t mi = 0; mi < c.moments.size(); ++mi) {
    const Moment& moment = c.moments[mi];
    for (std::uint32_t ai = 0; ai < moment.size(); ++ai) {
      const CliffordGate* g = gs.find(moment[ai].gate);
      if (g == nullptr) {
        throw std::invalid_argument("unknown gate " + moment[ai].gate);
      }
      unsigned dim = 1u << (2 * g->arity);
      unsigned a = static_cast<unsigned>(rng.next_below(dim));
      TableEntry e = g->table[a];
      tc.insertions.push_back({mi, ai, static_cast<std::uint8_t>(a), e.pauli,
                               e.sign});
    }
  }
  return tc;
}

CountsTable sample_shots(const Circuit& c, const GateSet& gs,
                         const NoiseModel& nm, const ShotJob& job) {
  if (job.shots < 1) {
    throw std::invalid_argument("job needs at least one shot");
  }
  if (job.measured_pauli.n_qubits() != c.n_qubits) {
    throw std::invalid_argument("measured Pauli qubit count mismatch");
  }
  auto locs = compile_circuit(c, gs, nm);
  Rng rng(job.seed);

  std::size_t words = (c.n_qubits + 63) / 64;
  std::vector<std::uint64_t> fx(words), fz(words);
  const auto& mx = job.measured_pauli.x_words();
  const auto& mz = job.measured_pauli.z_words();

  std::vector<std::uint32_t> measured;
  for (std::uint32_t q = 0; q < c.n_qubits; ++q) {
    if (job.measured_pauli.pauli_code(q) != 0) measured.push_back(q);
  }
  unsigned w = static_cast<unsigned>(measured.size());
  if (w == 0 || w > 16) {
    throw std::invalid_argument("measured Pauli weight must be in [1, 16]");
  }

  unsigned b0 = (job.prep.sign * job.propagation_sign) < 0 ? 1u : 0u;
  std::vector<std::uint64_t> hist(std::size_t(1) << w, 0);

  for (std::uint64_t shot = 0; shot < job.shots; ++shot) {
    for (auto& word : fx) word = 0;
    for (auto& word : fz) word = 0;
    for (const auto& loc : locs) {
      // Fault first (the noise precedes the ideal gate), then conjugate.
      double u = rng.next_double();
      unsigned fault_digit = 0;
      while (loc.cdf[fault_digit] <= u) ++fault_digit;
      unsigned packed = loc.fault_packed[fault_digit];

      std::uint32_t q0 = loc.q0;
      packed ^= ((fx[q0 >> 6] >> (q0 & 63)) & 1)
                | (((fz[q0 >> 6] >> (q0 & 63)) & 1) << loc.arity);
      if (loc.arity == 2) {
        std::uint32_t q1 = loc.q1;
        packed ^= (((fx[q1 >> 6] >> (q1 & 63)) & 1) << 1)
                  | (((fz[q1 >> 6] >> (q1 & 63)) & 1) << 3);
      }
      packed = loc.table_packed[packed];
      std::uint64_t m0 = std::uint64_t(1) << (q0 & 63);
      fx[q0 >> 6] = (fx[q0 >> 6] & ~m0) | (std::uint64_t(packed & 1) << (q0 & 63));
      fz[q0 >> 6] = (fz[q0 >> 6] & ~m0) |
                    (std::uint64_t((packed >> loc.arity) & 1) << (q0 & 63));
      if (loc.arity == 2) {
        std::uint32_t q1 = loc.q1;
        std::uint64_t m1 = std::uint64_t(1) << (q1 & 63);
        fx[q1 >> 6] = (fx[q1 >> 6] & ~m1) |
                      (std::uint64_t((packed >> 1) & 1) << (q1 & 63));
        fz[q1 >> 6] = (fz[q1 >> 6] & ~m1) |
                      (std::uint64_t((packed >> 3) & 1) << (q1 & 63));
      }
    }

    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words; ++i) {
      acc ^= std::popcount(fx[i] & mz[i]) ^ std::popcount(fz[i] & mx[i]);
    }
    unsigned b = b0 ^ static_cast<unsigned>(acc & 1);

    // Uniform bitstring over the measured qubits with total parity b.
    std::uint64_t bits = 0;
    if (w > 1) bits = rng.next_u64() & ((std::uint64_t(1) << (w - 1)) - 1);
    unsigned par = static_cast<unsigned>(std::popcount(bits)) & 1;
    bits |= std::uint64_t(par ^ b) << (w - 1);
    ++hist[bits];
  }

  CountsTable out;
  out.job_id = job.id;
  out.circuit_id = job.circuit_id;
  out.twirl_id = job.twirl_id;
  out.prep_id = job.prep_id;
  out.measured_qubits = measured;
  for (std::size_t idx = 0; idx < hist.size(); ++idx) {
    if (hist[idx] == 0) continue;
    std::string key(w, '0');
    for (unsigned j = 0; j < w; ++j) {
      if ((idx >> j) & 1) key[j] = '1';
    }
    out.counts.emplace(std::move(key), hist[idx]);
  }
  return out;
}

CountsTable sample_shots(const TwirledCircuit& tc, const GateSet& gs,
                         const NoiseModel& nm, const ShotJob& job) {
  // Twirl insertions are Paulis; conjugating a frame by a Pauli is the
  // identity modulo phase, so the frame dynamics match the base circuit.
  return sample_shots(tc.base, gs, nm, job);
}

std::vector<std::pair<TwirledCircuit, std::uint64_t>> ensemble_plan(
    const Circuit& c, const GateSet& gs, std::uint32_t n_twirls,
    std::uint64_t shots_per_circuit, Rng rng) {
  if (n_twirls < 1) {
    throw std::invalid_argument("ensemble_plan: need at least one twirl");
  }
  std::vector<std::pair<TwirledCircuit, std::uint64_t>> out;
  std::uint64_t base = shots_per_circuit / n_twirls;
  std::uint64_t rem = shots_per_circuit % n_twirls;
  for (std::uint32_t t = 0; t < n_twirls; ++t) {
    out.emplace_back(twirl_circuit(c, gs, rng.child({0x7769726Cull, t})),
                     base + (t < rem ? 1 : 0));
  }
  return out;
}

}  // namespace aces
