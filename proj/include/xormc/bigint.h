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

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace xormc {

/// Unsigned arbitrary-precision integer. Counts of the form cells * 2^m can
/// exceed 64 bits once m grows past ~55, so estimates are kept exact here
/// rather than in floating point. Only the handful of operations the counters
/// need are provided.
class BigUint {
 public:
  BigUint() = default;
  BigUint(uint64_t v) {  // NOLINT: implicit by design, mirrors integer use
    if (v != 0) limbs_.push_back(v);
  }

  static BigUint pow2(uint32_t exponent);

  bool is_zero() const { return limbs_.empty(); }

  BigUint& operator+=(const BigUint& other);
  friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }

  BigUint& operator<<=(uint32_t bits);
  friend BigUint operator<<(BigUint a, uint32_t bits) { return a <<= bits; }

  BigUint& mul_u64(uint64_t factor);
  friend BigUint operator*(BigUint a, uint64_t factor) { return a.mul_u64(factor); }

  /// In-place division by a small divisor; returns the remainder.
  uint64_t divmod_u64(uint64_t divisor);

  std::strong_ordering operator<=>(const BigUint& other) const;
  bool operator==(const BigUint& other) const = default;

  bool fits_u64() const { return limbs_.size() <= 1; }
  uint64_t to_u64() const;  // saturates at UINT64_MAX if too large

  /// Number of significant bits (0 for the value 0).
  uint32_t bit_length() const;

  double to_double() const;
  double log2d() const;  // -inf for 0

  std::string to_string() const;  // decimal

 private:
  void trim();
  std::vector<uint64_t> limbs_;  // little-endian, no trailing zero limbs
};

/// Exact dyadic rational num / 2^log2_den. All weights in the weighted
/// counting pipeline are dyadic, so this represents weighted counts exactly.
struct Dyadic {
  BigUint num;
  uint32_t log2_den = 0;

  /// Strips common powers of two from numerator and denominator.
  void normalize();

  double to_double() const;
  /// Exact finite decimal expansion, e.g. 3/2^2 -> "0.75".
  std::string to_decimal_string() const;
};

}  // namespace xormc
