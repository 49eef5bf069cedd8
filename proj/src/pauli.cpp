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

#include "aces/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace aces {

namespace {
std::size_t words_for(std::size_t n) { return (n + 63) / 64; }
}  // namespace

PauliString::PauliString(std::size_t n)
    : n_(n), x_(words_for(n), 0), z_(words_for(n), 0) {}

PauliString PauliString::parse(const std::string& label) {
  std::size_t start = 0;
  int sign = +1;
  if (!label.empty() && (label[0] == '+' || label[0] == '-')) {
    sign = label[0] == '-' ? -1 : +1;
    start = 1;
  }
  if (label.size() == start) {
    throw std::invalid_argument("empty Pauli label");
  }
  PauliString p(label.size() - start);
  p.sign_ = sign;
  for (std::size_t i = start; i < label.size(); ++i) {
    std::size_t q = i - start;
    switch (label[i]) {
      case 'I': break;
      case 'X': p.set_x_bit(q, true); break;
      case 'Y': p.set_x_bit(q, true); p.set_z_bit(q, true); break;
      case 'Z': p.set_z_bit(q, true); break;
      default:
        throw std::invalid_argument(std::string("invalid Pauli character '") +
                                    label[i] + "'");
    }
  }
  return p;
}

std::string PauliString::label() const {
  std::string s;
  if (sign_ < 0) s += '-';
  for (std::size_t q = 0; q < n_; ++q) {
    s += "IXYZ"[pauli_code(q)];
  }
  return s;
}

void PauliString::set_x_bit(std::size_t q, bool v) {
  std::uint64_t mask = std::uint64_t(1) << (q & 63);
  if (v) x_[q >> 6] |= mask; else x_[q >> 6] &= ~mask;
}

void PauliString::set_z_bit(std::size_t q, bool v) {
  std::uint64_t mask = std::uint64_t(1) << (q & 63);
  if (v) z_[q >> 6] |= mask; else z_[q >> 6] &= ~mask;
}

unsigned PauliString::pauli_code(std::size_t q) const {
  return digit_from_bits(x_bit(q), z_bit(q));
}

void PauliString::set_pauli_code(std::size_t q, unsigned code) {
  set_x_bit(q, digit_x_bit(code));
  set_z_bit(q, digit_z_bit(code));
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    w += std::popcount(x_[i] | z_[i]);
  }
  return w;
}

bool PauliString::is_identity() const {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (x_[i] | z_[i]) return false;
  }
  return true;
}

bool PauliString::operator==(const PauliString& other) const {
  return n_ == other.n_ && sign_ == other.sign_ && x_ == other.x_ &&
         z_ == other.z_;
}

int symplectic_inner(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("symplectic_inner: length mismatch");
  }
  std::uint64_t acc = 0;
  const auto& ax = a.x_words();
  const auto& az = a.z_words();
  const auto& bx = b.x_words();
  const auto& bz = b.z_words();
  for (std::size_t i = 0; i < ax.size(); ++i) {
    acc ^= std::popcount(ax[i] & bz[i]) ^ std::popcount(az[i] & bx[i]);
  }
  return static_cast<int>(acc & 1);
}

PauliString multiply_frames(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("multiply_frames: length mismatch");
  }
  PauliString out(a.n_qubits());
  for (std::size_t q = 0; q < a.n_qubits(); ++q) {
    out.set_x_bit(q, a.x_bit(q) ^ b.x_bit(q));
    out.set_z_bit(q, a.z_bit(q) ^ b.z_bit(q));
  }
  return out;
}

unsigned support_digit(unsigned code, unsigned arity, unsigned pos) {
  unsigned shift = 2 * (arity - 1 - pos);
  return (code >> shift) & 3u;
}

unsigned support_with_digit(unsigned code, unsigned arity, unsigned pos,
                            unsigned digit) {
  unsigned shift = 2 * (arity - 1 - pos);
  return (code & ~(3u << shift)) | (digit << shift);
}

std::string support_label(unsigned code, unsigned arity) {
  std::string s;
  for (unsigned i = 0; i < arity; ++i) {
    s += "IXYZ"[support_digit(code, arity, i)];
  }
  return s;
}

unsigned parse_support_label(const std::string& label, unsigned arity) {
  if (label.size() != arity) {
    throw std::invalid_argument("support label has wrong length: " + label);
  }
  unsigned code = 0;
  for (unsigned i = 0; i < arity; ++i) {
    unsigned d;
    switch (label[i]) {
      case 'I': d = 0; break;
      case 'X': d = 1; break;
      case 'Y': d = 2; break;
      case 'Z': d = 3; break;
      default:
        throw std::invalid_argument("invalid support label: " + label);
    }
    code = support_with_digit(code, arity, i, d);
  }
  return code;
}

int support_symplectic_inner(unsigned a, unsigned b, unsigned arity) {
  int acc = 0;
  for (unsigned i = 0; i < arity; ++i) {
    unsigned da = support_digit(a, arity, i);
    unsigned db = support_digit(b, arity, i);
    acc ^= (digit_x_bit(da) & digit_z_bit(db)) ^
           (digit_z_bit(da) & digit_x_bit(db));
  }
  return acc;
}

}  // namespace aces
