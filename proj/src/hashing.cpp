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

#include "xormc/hashing.h"

#include <algorithm>
#include <bit>

namespace xormc {

XorHash XorHash::from_bits(uint32_t n, uint32_t m,
                           const std::vector<std::vector<int>>& bits) {
  if (bits.size() != m) throw Error("bit matrix has wrong row count");
  XorHash h(n, m);
  for (uint32_t i = 0; i < m; ++i) {
    if (bits[i].size() != n + 1) throw Error("bit matrix row has wrong width");
    for (uint32_t k = 0; k <= n; ++k) h.set_bit(i, k, bits[i][k] != 0);
  }
  return h;
}

XorHash draw_hash(uint32_t n, uint32_t m, Rng& rng) {
  XorHash h(n, m);
  for (uint32_t i = 0; i < m; ++i) {
    for (uint32_t k = 0; k <= n; ++k) h.set_bit(i, k, rng.coin());
  }
  return h;
}

CellTarget draw_target(uint32_t m, Rng& rng) {
  CellTarget t;
  t.alpha.resize(m);
  for (uint32_t i = 0; i < m; ++i) t.alpha[i] = rng.coin() ? 1 : 0;
  return t;
}

std::vector<uint8_t> apply_hash(const XorHash& h, std::span<const uint8_t> y) {
  if (y.size() != h.n()) throw Error("hash input has wrong length");
  // Pack y at bit positions 1..n with bit 0 forced to 1, so the affine offset
  // a[i][0] falls out of the same AND+parity as the coefficients.
  std::vector<uint64_t> packed(h.words_per_row(), 0);
  packed[0] = 1;
  for (uint32_t k = 0; k < h.n(); ++k) {
    if (y[k]) packed[(k + 1) / 64] |= 1ULL << ((k + 1) % 64);
  }
  std::vector<uint8_t> out(h.m());
  for (uint32_t i = 0; i < h.m(); ++i) {
    const auto row = h.row_words(i);
    uint64_t acc = 0;
    for (uint32_t w = 0; w < row.size(); ++w) acc ^= row[w] & packed[w];
    out[i] = static_cast<uint8_t>(std::popcount(acc) & 1);
  }
  return out;
}

std::vector<XorConstraint> hash_to_constraints(const XorHash& h, const CellTarget& alpha,
                                               std::span<const Var> s) {
  if (s.size() != h.n()) throw Error("variable list length does not match hash width");
  if (alpha.alpha.size() != h.m()) throw Error("target length does not match hash output width");
  std::vector<XorConstraint> out;
  out.reserve(h.m());
  for (uint32_t i = 0; i < h.m(); ++i) {
    XorConstraint c;
    for (uint32_t k = 1; k <= h.n(); ++k) {
      if (h.bit(i, k)) c.vars.push_back(s[k - 1]);
    }
    std::sort(c.vars.begin(), c.vars.end());
    c.parity = (alpha.alpha[i] != 0) ^ h.bit(i, 0);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace xormc
