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
#include <vector>

#include "aces/gates.hpp"
#include "aces/rng.hpp"

namespace aces {

/// A Pauli channel on a gate support: probability vector over the 4^k support
/// Paulis (identity first), summing to 1.
struct PauliChannel {
  unsigned k = 1;
  std::vector<double> probs;  // size 4^k

  static PauliChannel identity(unsigned k);
  /// Throws std::invalid_argument when entries are negative or the sum is off
  /// by more than 1e-12.
  void validate() const;
};

/// The dual description: lambda_b per support Pauli, lambda_I == 1 for any
/// valid channel, every entry in [-1, 1]. Estimated vectors may fall outside
/// those bounds; the transforms do not clip.
struct EigenvalueVector {
  unsigned k = 1;
  std::vector<double> lambdas;  // size 4^k
};

/// lambda_b = sum_a (-1)^{<a,b>} p_a.
EigenvalueVector rates_to_eigenvalues(const PauliChannel& ch);

/// p_a = 4^{-k} sum_b (-1)^{<a,b>} lambda_b. Exact inverse of
/// rates_to_eigenvalues; noisy inputs may yield small negative entries, which
/// are kept and reported rather than clipped.
PauliChannel eigenvalues_to_rates(const EigenvalueVector& ev);

/// Total variation distance: half the L1 distance. Throws on length mismatch.
double tvd(const std::vector<double>& p, const std::vector<double>& q);

/// Total non-identity error probability, 1 - p_I.
double process_infidelity(const PauliChannel& ch);

/// Per-location noise: every gate location maps to a channel of matching
/// support size.
struct NoiseModel {
  std::map<LocationKey, PauliChannel> channels;

  const PauliChannel& at(const LocationKey& loc) const;  // throws if missing
};

/// Draws a channel per location: non-identity rates proportional to
/// independent uniform(0,1) draws, scaled so their sum is a
/// uniform(0.5*strength, 1.5*strength) draw. strength in [0, 0.5);
/// strength 0 gives identity channels. Deterministic per rng stream.
NoiseModel random_noise_model(const GateSet& gs,
                              const std::vector<LocationKey>& locations,
                              double strength, Rng rng);

}  // namespace aces
