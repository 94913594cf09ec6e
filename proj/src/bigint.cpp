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

#include "xormc/bigint.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>

namespace xormc {

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::pow2(uint32_t exponent) {
  BigUint r;
  r.limbs_.assign(exponent / 64 + 1, 0);
  r.limbs_.back() = 1ULL << (exponent % 64);
  return r;
}

BigUint& BigUint::operator+=(const BigUint& other) {
  if (other.limbs_.size() > limbs_.size()) limbs_.resize(other.limbs_.size(), 0);
  unsigned __int128 carry = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    carry += limbs_[i];
    if (i < other.limbs_.size()) carry += other.limbs_[i];
    limbs_[i] = static_cast<uint64_t>(carry);
    carry >>= 64;
  }
  if (carry != 0) limbs_.push_back(static_cast<uint64_t>(carry));
  return *this;
}

BigUint& BigUint::operator<<=(uint32_t bits) {
  if (is_zero() || bits == 0) return *this;
  const uint32_t limb_shift = bits / 64;
  const uint32_t bit_shift = bits % 64;
  limbs_.insert(limbs_.begin(), limb_shift, 0);
  if (bit_shift != 0) {
    uint64_t carry = 0;
    for (size_t i = limb_shift; i < limbs_.size(); ++i) {
      const uint64_t next_carry = limbs_[i] >> (64 - bit_shift);
      limbs_[i] = (limbs_[i] << bit_shift) | carry;
      carry = next_carry;
    }
    if (carry != 0) limbs_.push_back(carry);
  }
  return *this;
}

BigUint& BigUint::mul_u64(uint64_t factor) {
  if (factor == 0) {
    limbs_.clear();
    return *this;
  }
  unsigned __int128 carry = 0;
  for (auto& limb : limbs_) {
    carry += static_cast<unsigned __int128>(limb) * factor;
    limb = static_cast<uint64_t>(carry);
    carry >>= 64;
  }
  if (carry != 0) limbs_.push_back(static_cast<uint64_t>(carry));
  return *this;
}

uint64_t BigUint::divmod_u64(uint64_t divisor) {
  assert(divisor != 0);
  unsigned __int128 rem = 0;
  for (size_t i = limbs_.size(); i-- > 0;) {
    const unsigned __int128 cur = (rem << 64) | limbs_[i];
    limbs_[i] = static_cast<uint64_t>(cur / divisor);
    rem = cur % divisor;
  }
  trim();
  return static_cast<uint64_t>(rem);
}

std::strong_ordering BigUint::operator<=>(const BigUint& other) const {
  if (limbs_.size() != other.limbs_.size())
    return limbs_.size() <=> other.limbs_.size();
  for (size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != other.limbs_[i]) return limbs_[i] <=> other.limbs_[i];
  }
  return std::strong_ordering::equal;
}

uint64_t BigUint::to_u64() const {
  if (limbs_.empty()) return 0;
  if (limbs_.size() > 1) return std::numeric_limits<uint64_t>::max();
  return limbs_[0];
}

uint32_t BigUint::bit_length() const {
  if (limbs_.empty()) return 0;
  const uint64_t top = limbs_.back();
  return static_cast<uint32_t>((limbs_.size() - 1) * 64 + (64 - __builtin_clzll(top)));
}

double BigUint::to_double() const {
  double r = 0.0;
  for (size_t i = limbs_.size(); i-- > 0;) r = r * 18446744073709551616.0 + static_cast<double>(limbs_[i]);
  return r;
}

double BigUint::log2d() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  const uint32_t len = bit_length();
  if (len <= 63) return std::log2(to_double());
  // Keep the top 63 bits as the mantissa and account for the rest in the exponent.
  const uint32_t drop = len - 63;
  const uint32_t limb_drop = drop / 64;
  const uint32_t bit_drop = drop % 64;
  std::vector<uint64_t> limbs(limbs_.begin() + limb_drop, limbs_.end());
  if (bit_drop != 0) {
    for (size_t i = 0; i + 1 < limbs.size(); ++i)
      limbs[i] = (limbs[i] >> bit_drop) | (limbs[i + 1] << (64 - bit_drop));
    limbs.back() >>= bit_drop;
  }
  double mant = 0.0;
  for (size_t i = limbs.size(); i-- > 0;) mant = mant * 18446744073709551616.0 + static_cast<double>(limbs[i]);
  return std::log2(mant) + static_cast<double>(drop);
}

std::string BigUint::to_string() const {
  if (is_zero()) return "0";
  BigUint tmp = *this;
  std::string out;
  while (!tmp.is_zero()) {
    const uint64_t chunk = tmp.divmod_u64(10000000000000000000ULL);  // 10^19
    char buf[24];
    if (tmp.is_zero()) {
      snprintf(buf, sizeof(buf), "%llu", static_cast<unsigned long long>(chunk));
    } else {
      snprintf(buf, sizeof(buf), "%019llu", static_cast<unsigned long long>(chunk));
    }
    out.insert(0, buf);
  }
  return out;
}

void Dyadic::normalize() {
  if (num.is_zero()) {
    log2_den = 0;
    return;
  }
  while (log2_den > 0) {
    BigUint half = num;
    if (half.divmod_u64(2) != 0) break;
    num = half;
    --log2_den;
  }
}

double Dyadic::to_double() const {
  return std::ldexp(num.to_double(), -static_cast<int>(log2_den));
}

std::string Dyadic::to_decimal_string() const {
  if (log2_den == 0) return num.to_string();
  // num / 2^k == num * 5^k / 10^k: exact finite decimal.
  BigUint scaled = num;
  for (uint32_t i = 0; i < log2_den; ++i) scaled.mul_u64(5);
  std::string digits = scaled.to_string();
  if (digits.size() <= log2_den) digits.insert(0, log2_den + 1 - digits.size(), '0');
  digits.insert(digits.size() - log2_den, ".");
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  return digits;
}

}  // namespace xormc
