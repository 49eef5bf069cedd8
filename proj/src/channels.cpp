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

#include "aces/channels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace aces {

PauliChannel PauliChannel::identity(unsigned k) {
  PauliChannel ch;
  ch.k = k;
  ch.probs.assign(1u << (2 * k), 0.0);
  ch.probs[0] = 1.0;
  return ch;
}

void PauliChannel::validate() const {
  if (probs.size() != (1u << (2 * k))) {
    throw std::invalid_argument("channel probability vector has wrong size");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("negative channel probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("channel probabilities do not sum to 1");
  }
}

EigenvalueVector rates_to_eigenvalues(const PauliChannel& ch) {
  unsigned dim = 1u << (2 * ch.k);
  EigenvalueVector ev;
  ev.k = ch.k;
  ev.lambdas.assign(dim, 0.0);
  for (unsigned b = 0; b < dim; ++b) {
    double acc = 0.0;
    for (unsigned a = 0; a < dim; ++a) {
      acc += support_symplectic_inner(a, b, ch.k) ? -ch.probs[a] : ch.probs[a];
    }
    ev.lambdas[b] = acc;
  }
  return ev;
}

PauliChannel eigenvalues_to_rates(const EigenvalueVector& ev) {
  unsigned dim = 1u << (2 * ev.k);
  PauliChannel ch;
  ch.k = ev.k;
  ch.probs.assign(dim, 0.0);
  double norm = 1.0 / static_cast<double>(dim);
  for (unsigned a = 0; a < dim; ++a) {
    double acc = 0.0;
    for (unsigned b = 0; b < dim; ++b) {
      acc += support_symplectic_inner(a, b, ev.k) ? -ev.lambdas[b]
                                                  : ev.lambdas[b];
    }
    ch.probs[a] = acc * norm;
  }
  return ch;
}

double tvd(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("tvd: length mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += std::abs(p[i] - q[i]);
  }
  return 0.5 * acc;
}

double process_infidelity(const PauliChannel& ch) { return 1.0 - ch.probs[0]; }

const PauliChannel& NoiseModel::at(const LocationKey& loc) const {
  auto it = channels.find(loc);
  if (it == channels.end()) {
    throw std::invalid_argument("noise model missing location " + loc.str());
  }
  return it->second;
}

NoiseModel random_noise_model(const GateSet& gs,
                              const std::vector<LocationKey>& locations,
                              double strength, Rng rng) {
  if (strength < 0.0 || strength >= 0.5) {
    throw std::invalid_argument("noise strength must be in [0, 0.5)");
  }
  NoiseModel nm;
  for (const auto& loc : locations) {
    const CliffordGate* g = gs.find(loc.gate);
    if (g == nullptr) {
      throw std::invalid_argument("unknown gate " + loc.gate);
    }
    unsigned dim = 1u << (2 * g->arity);
    PauliChannel ch;
    ch.k = g->arity;
    ch.probs.assign(dim, 0.0);
    if (strength == 0.0) {
      ch.probs[0] = 1.0;
    } else {
      double total = (0.5 + rng.next_double()) * strength;
      double sum = 0.0;
      for (unsigned a = 1; a < dim; ++a) {
        ch.probs[a] = rng.next_double();
        sum += ch.probs[a];
      }
      for (unsigned a = 1; a < dim; ++a) {
        ch.probs[a] *= total / sum;
      }
      ch.probs[0] = 1.0 - total;
    }
    nm.channels.emplace(loc, std::move(ch));
  }
  return nm;
}

}  // namespace aces
