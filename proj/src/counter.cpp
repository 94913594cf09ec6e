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

#include "xormc/counter.h"

#include <algorithm>
#include <cmath>

#include "xormc/hashing.h"
#include "xormc/solver.h"

namespace xormc {

CounterParams compute_params(double epsilon, double delta) {
  if (!(epsilon > 0.0)) throw Error("tolerance must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw Error("confidence complement must lie in (0,1)");
  CounterParams p;
  p.epsilon = epsilon;
  p.delta = delta;
  const double base = 3.0 * std::sqrt(std::exp(1.0)) * (1.0 + 1.0 / epsilon) * (1.0 + 1.0 / epsilon);
  p.pivot = 2 * static_cast<uint64_t>(std::ceil(base));
  const double r = 35.0 * std::log2(3.0 / delta);
  uint32_t rounds = static_cast<uint32_t>(std::ceil(r));
  if (rounds % 2 == 0) ++rounds;
  p.rounds = rounds;
  return p;
}

std::optional<RoundOutcome> count_round(const CnfFormula& f, std::span<const Var> s,
                                        uint64_t pivot, Rng& rng) {
  const uint32_t n = static_cast<uint32_t>(s.size());
  for (uint32_t m = 1; m + 1 <= n; ++m) {
    const XorHash h = draw_hash(n, m, rng);
    const CellTarget alpha = draw_target(m, rng);
    const auto xors = hash_to_constraints(h, alpha, s);
    const SolutionSet cell = bounded_enumerate(f, xors, s, pivot + 1);
    if (cell.size() >= 1 && cell.size() <= pivot)
      return RoundOutcome{m, cell.size()};
  }
  return std::nullopt;
}

CountEstimate approx_count(const CnfFormula& f, std::span<const Var> s, double epsilon,
                           double delta, Rng& rng) {
  for (const Var v : s) {
    if (v < 1 || v > f.num_vars)
      throw Error("sampling set is not a subset of the formula's support");
  }
  CountEstimate est;
  est.params = compute_params(epsilon, delta);

  const SolutionSet initial = bounded_enumerate(f, {}, s, est.params.pivot + 1);
  if (initial.size() <= est.params.pivot) {
    est.value = BigUint(initial.size());
    est.exact = true;
    return est;
  }

  est.round_outcomes.reserve(est.params.rounds);
  std::vector<BigUint> estimates;
  for (uint32_t r = 0; r < est.params.rounds; ++r) {
    const auto outcome = count_round(f, s, est.params.pivot, rng);
    est.round_outcomes.push_back(outcome);
    if (outcome) estimates.push_back(BigUint(outcome->cell_count) << outcome->m);
  }
  if (estimates.empty())
    throw AllRoundsFailedError("every measurement round failed across " +
                               std::to_string(est.params.rounds) + " rounds");
  std::sort(estimates.begin(), estimates.end());
  est.value = estimates[estimates.size() / 2];
  est.exact = false;
  return est;
}

}  // namespace xormc
