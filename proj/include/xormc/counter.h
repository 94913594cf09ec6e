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
#include <optional>
#include <span>
#include <vector>

#include "xormc/bigint.h"
#include "xormc/formula.h"
#include "xormc/rng.h"

namespace xormc {

/// Knobs of the (epsilon, delta) counter, fixed from the requested tolerance
/// and confidence:
///   pivot  = 2 * ceil(3*sqrt(e) * (1 + 1/epsilon)^2)
///   rounds = smallest odd integer >= 35 * log2(3 / delta)
/// Any larger pivot or round count preserves the guarantee.
struct CounterParams {
  double epsilon = 0.0;
  double delta = 0.0;
  uint64_t pivot = 0;
  uint32_t rounds = 0;
};

CounterParams compute_params(double epsilon, double delta);

/// One successful measurement: a cell at scale m holding cell_count
/// projections, yielding the estimate cell_count * 2^m.
struct RoundOutcome {
  uint32_t m = 0;
  uint64_t cell_count = 0;
};

struct CountEstimate {
  BigUint value;
  bool exact = false;
  std::vector<std::optional<RoundOutcome>> round_outcomes;  // nullopt = failed round
  CounterParams params;

  uint32_t failed_rounds() const {
    uint32_t n = 0;
    for (const auto& r : round_outcomes) {
      if (!r) ++n;
    }
    return n;
  }
};

class AllRoundsFailedError : public Error {
 public:
  using Error::Error;
};

/// One randomized measurement round: walks m upward from 1, drawing a fresh
/// hash and target per m and measuring the chosen cell up to pivot+1, until
/// the cell size lands in [1, pivot]. Consumes rng in a fixed order (hash
/// matrix row-major, then target bits), so runs replay from the seed.
std::optional<RoundOutcome> count_round(const CnfFormula& f, std::span<const Var> s,
                                        uint64_t pivot, Rng& rng);

/// (epsilon, delta) approximate count of the solutions projected onto s.
/// If the projected count is at most pivot it is returned exactly (exact flag
/// set); otherwise the median of the per-round estimates is returned. For the
/// result to estimate the unprojected count, s must be an independent
/// support. Throws AllRoundsFailedError when no round succeeds.
CountEstimate approx_count(const CnfFormula& f, std::span<const Var> s, double epsilon,
                           double delta, Rng& rng);

}  // namespace xormc
