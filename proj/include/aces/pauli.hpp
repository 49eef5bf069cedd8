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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace aces {

/// An n-qubit Pauli operator in symplectic bit representation with a {+1,-1}
/// sign. Qubit i carries X iff x_bit(i), Z iff z_bit(i), Y iff both. Signs are
/// restricted to +-1; +-i never arises because only Hermitian Paulis are
/// tracked. Immutable value semantics; safe to share across threads.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n);

  static PauliString identity(std::size_t n) { return PauliString(n); }

  /// Parses a text label `[+-]?[IXYZ]+` with qubit 0 as the leftmost
  /// character. Throws std::invalid_argument on an empty body or an invalid
  /// character.
  static PauliString parse(const std::string& label);

  /// Inverse of parse: '-' prefix iff the sign is negative.
  std::string label() const;

  std::size_t n_qubits() const { return n_; }
  int sign() const { return sign_; }
  void set_sign(int s) { sign_ = s < 0 ? -1 : 1; }

  bool x_bit(std::size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
  bool z_bit(std::size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }
  void set_x_bit(std::size_t q, bool v);
  void set_z_bit(std::size_t q, bool v);

  /// Per-qubit Pauli digit: 0=I, 1=X, 2=Y, 3=Z.
  unsigned pauli_code(std::size_t q) const;
  void set_pauli_code(std::size_t q, unsigned code);

  /// Number of qubits carrying a non-identity Pauli.
  std::size_t weight() const;
  bool is_identity() const;

  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }

  bool operator==(const PauliString& other) const;
  bool operator!=(const PauliString& other) const { return !(*this == other); }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_, z_;
  int sign_ = +1;
};

/// The symplectic form <a,b> = (a.x . b.z + a.z . b.x) mod 2. Zero exactly
/// when the operators commute. Throws std::invalid_argument on a length
/// mismatch.
int symplectic_inner(const PauliString& a, const PauliString& b);

/// Frame product: bitwise XOR of the symplectic vectors with the sign fixed
/// to +1. Frames are tracked modulo phase because only commutation with the
/// measured Pauli is observable. Throws std::invalid_argument on a length
/// mismatch.
PauliString multiply_frames(const PauliString& a, const PauliString& b);

// -------------------------------------------------------------------------
// Support-Pauli codes: an arity-k Pauli (k <= 2) packed into an integer in
// [0, 4^k) with digit order I,X,Y,Z and qubit 0 as the most significant
// digit, so "II" = 0 and labels sort lexicographically.

/// Digit at position pos (0 = leftmost qubit) of a support code.
unsigned support_digit(unsigned code, unsigned arity, unsigned pos);

/// Support code with the digit at pos replaced.
unsigned support_with_digit(unsigned code, unsigned arity, unsigned pos,
                            unsigned digit);

/// Text label of a support code, e.g. support_label(6, 2) == "XY".
std::string support_label(unsigned code, unsigned arity);

/// Inverse of support_label. Throws std::invalid_argument on bad input.
unsigned parse_support_label(const std::string& label, unsigned arity);

/// Per-qubit digit from symplectic bits.
inline unsigned digit_from_bits(bool x, bool z) {
  return x ? (z ? 2u : 1u) : (z ? 3u : 0u);
}
inline bool digit_x_bit(unsigned d) { return d == 1 || d == 2; }
inline bool digit_z_bit(unsigned d) { return d == 2 || d == 3; }

/// Symplectic form between two support codes of the same arity.
int support_symplectic_inner(unsigned a, unsigned b, unsigned arity);

}  // namespace aces
