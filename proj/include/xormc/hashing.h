/*
 xormc -- hashing-based approximate model counting and almost-uniform sampling

 Copyright (c) 2026, the xormc authors. All rights reserved.

 Permission is hereby granted, free of charge, to any person obtaining a copy
 of this software and associated documentation files (the "Software"), to deal
 in the Software without restriction, including without limitation the rights
 to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
 copies of the Software, and to permit persons to whom the Software is
 furnished to do so, subject to the following conditions:

 The above copyright notice and this permission notice shall be included in
 all copies or substantial portions of the Software.

 THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
 IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
 FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
 AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
 LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
 OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
 THE SOFTWARE.
 */

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xormc/formula.h"
#include "xormc/rng.h"
#include "xormc/solver.h"

namespace xormc {

/// Member of the GF(2)-affine hash family mapping n bits to m bits:
/// output bit i is offset(i) XOR the parity of the selected input bits.
/// The family obtained by drawing every coefficient uniformly is 3-universal.
///
/// Rows are stored in machine words so application is a word-parallel
/// AND + parity; bit k of row i (0 <= k <= n) holds the coefficient a[i][k],
/// with column 0 the affine offset.
class XorHash {
 public:
  XorHash(uint32_t n, uint32_t m)
      : n_(n), m_(m), words_per_row_((n + 1) / 64 + 1), rows_(size_t(m) * words_per_row_, 0) {}

  /// Builds a hash from an explicit bit matrix: bits[i][k] for row i
  /// (0-based), column k in 0..n. Intended for tests and family enumeration.
  static XorHash from_bits(uint32_t n, uint32_t m,
                           const std::vector<std::vector<int>>& bits);

  uint32_t n() const { return n_; }
  uint32_t m() const { return m_; }

  bool bit(uint32_t row, uint32_t col) const {  // row in [0,m), col in [0,n]
    return (rows_[size_t(row) * words_per_row_ + col / 64] >> (col % 64)) & 1u;
  }
  void set_bit(uint32_t row, uint32_t col, bool value) {
    uint64_t& w = rows_[size_t(row) * words_per_row_ + col / 64];
    const uint64_t mask = 1ULL << (col % 64);
    w = value ? (w | mask) : (w & ~mask);
  }

  std::span<const uint64_t> row_words(uint32_t row) const {
    return {rows_.data() + size_t(row) * words_per_row_, words_per_row_};
  }
  uint32_t words_per_row() const { return words_per_row_; }

 private:
  uint32_t n_, m_, words_per_row_;
  std::vector<uint64_t> rows_;
};

/// Target cell: the m-bit value alpha a hashed point must map to.
struct CellTarget {
  std::vector<uint8_t> alpha;  // one bit per entry
};

/// Random member of the family: every one of the m*(n+1) matrix bits is an
/// independent fair coin flip, drawn row by row, column 0 first.
XorHash draw_hash(uint32_t n, uint32_t m, Rng& rng);

/// Uniform cell target of width m (bits drawn in order 0..m-1).
CellTarget draw_target(uint32_t m, Rng& rng);

/// h(y): component i = a[i][0] XOR parity of the selected bits of y.
std::vector<uint8_t> apply_hash(const XorHash& h, std::span<const uint8_t> y);

/// Translates "h(sigma restricted to S) == alpha" into XOR constraints over
/// the ordered variable list S: constraint i ranges over the variables whose
/// coefficient bit is set and has parity alpha[i] XOR a[i][0].
std::vector<XorConstraint> hash_to_constraints(const XorHash& h, const CellTarget& alpha,
                                               std::span<const Var> s);

}  // namespace xormc
