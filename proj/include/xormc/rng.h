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

#include <cassert>
#include <cstdint>
#include <random>

namespace xormc {

/// Deterministic random source. All randomness in the library flows through
/// explicit Rng instances; there is no global generator. Draws are specified
/// directly on the raw 64-bit output of mt19937_64, so a given seed yields
/// the same stream on every platform and compiler (std::*_distribution is
/// deliberately avoided, as its mapping is implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// One fair coin flip. Bits are taken LSB-first from buffered 64-bit words.
  bool coin() {
    if (bits_left_ == 0) {
      bit_buf_ = engine_();
      bits_left_ = 64;
    }
    const bool b = bit_buf_ & 1u;
    bit_buf_ >>= 1;
    --bits_left_;
    return b;
  }

  /// Unbiased integer in [0, n) via rejection sampling.
  uint64_t below(uint64_t n) {
    assert(n > 0);
    const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

  /// Fixed mixing function used to derive independent child streams
  /// (per-round worker seeds in the parallel sampler). SplitMix64 finalizer
  /// applied to master + (index+1) * golden-gamma.
  static uint64_t derive(uint64_t master, uint64_t index) {
    uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
  uint64_t bit_buf_ = 0;
  int bits_left_ = 0;
};

}  // namespace xormc
