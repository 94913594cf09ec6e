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

#include "xormc/sampler.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "xormc/counter.h"
#include "xormc/hashing.h"
#include "xormc/solver.h"

namespace xormc {

namespace {

constexpr double preprocess_epsilon = 0.8;
constexpr double preprocess_delta = 0.2;
constexpr uint32_t failure_budget = 10;  // consecutive all-window failures

double epsilon_of_kappa(double kappa) {
  return (1.0 + kappa) * (7.44 + 0.392 / ((1.0 - kappa) * (1.0 - kappa))) - 1.0;
}

}  // namespace

double kappa_from_epsilon(double epsilon) {
  if (!(epsilon >= sampler_min_epsilon))
    throw Error("tolerance below the supported minimum of " +
                std::to_string(sampler_min_epsilon));
  double lo = 0.0, hi = 1.0 - 1e-9;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (epsilon_of_kappa(mid) <= epsilon) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

SamplerParams params_from_kappa(double epsilon, double kappa) {
  SamplerParams p;
  p.epsilon = epsilon;
  p.kappa = kappa;
  const double root2 = std::sqrt(2.0);
  p.pivot = static_cast<uint64_t>(std::ceil(4.03 * (1.0 + 1.0 / kappa) * (1.0 + 1.0 / kappa)));
  p.hi_thresh =
      static_cast<uint64_t>(std::ceil(1.0 + root2 * (1.0 + kappa) * static_cast<double>(p.pivot)));
  p.lo_thresh = static_cast<uint64_t>(
      std::floor(static_cast<double>(p.pivot) / (root2 * (1.0 + kappa))));
  if (p.lo_thresh < 1) p.lo_thresh = 1;
  return p;
}

SamplerParams sampler_params(double epsilon) {
  return params_from_kappa(epsilon, kappa_from_epsilon(epsilon));
}

std::optional<CellSample> sample_round(const CnfFormula& f, std::span<const Var> s,
                                       uint32_t m, const SamplerParams& params, Rng& rng,
                                       SampleMode mode) {
  const uint32_t n = static_cast<uint32_t>(s.size());
  const XorHash h = draw_hash(n, m, rng);
  const CellTarget alpha = draw_target(m, rng);
  const auto xors = hash_to_constraints(h, alpha, s);
  const SolutionSet cell = bounded_enumerate(f, xors, s, params.hi_thresh + 1);
  const uint64_t count = cell.size();
  if (count < params.lo_thresh || count > params.hi_thresh) return std::nullopt;

  CellSample out;
  out.diag = {m, count};
  if (mode == SampleMode::single) {
    out.witnesses.push_back(cell[rng.below(count)]);
  } else {
    // loThresh distinct solutions, uniform without replacement
    // (partial Fisher-Yates over the cell's canonical order).
    std::vector<uint64_t> idx(count);
    for (uint64_t i = 0; i < count; ++i) idx[i] = i;
    const uint64_t take = std::min<uint64_t>(params.lo_thresh, count);
    for (uint64_t j = 0; j < take; ++j) std::swap(idx[j], idx[j + rng.below(count - j)]);
    out.witnesses.reserve(take);
    for (uint64_t j = 0; j < take; ++j) out.witnesses.push_back(cell[idx[j]]);
  }
  return out;
}

namespace {

struct RoundResult {
  std::optional<SampleRoundDiag> diag;
  std::vector<ProjectedWitness> witnesses;
};

// One full round: walk the window until a cell is accepted.
RoundResult run_round(const CnfFormula& f, std::span<const Var> s,
                      const std::vector<uint32_t>& window, const SamplerParams& params,
                      Rng& rng, SampleMode mode) {
  RoundResult out;
  for (const uint32_t m : window) {
    auto picked = sample_round(f, s, m, params, rng, mode);
    if (picked) {
      out.diag = picked->diag;
      out.witnesses = std::move(picked->witnesses);
      return out;
    }
  }
  return out;
}

SampleBatch run_sampling(const CnfFormula& f, std::span<const Var> s, double epsilon,
                         uint64_t num_samples, uint32_t workers, uint64_t base_seed,
                         SampleMode mode) {
  if (num_samples == 0) throw Error("requested sample count must be positive");
  if (workers == 0) throw Error("worker count must be positive");
  for (const Var v : s) {
    if (v < 1 || v > f.num_vars)
      throw Error("sampling set is not a subset of the formula's support");
  }
  const SamplerParams params = sampler_params(epsilon);
  SampleBatch batch;
  batch.requested = num_samples;
  batch.sampling_set.assign(s.begin(), s.end());
  std::sort(batch.sampling_set.begin(), batch.sampling_set.end());

  // Sequential preprocessing: satisfiability check and a coarse count to
  // center the window.
  Rng pre(Rng::derive(base_seed, 0));
  {
    Solver sat_check(f);
    if (!sat_check.solve().sat) throw UnsatisfiableError("formula is unsatisfiable");
  }
  const CountEstimate count =
      approx_count(f, s, preprocess_epsilon, preprocess_delta, pre);

  double log2c = count.value.log2d();
  if (count.value <= BigUint(params.hi_thresh)) {
    // The whole projected solution space is small: enumerate it and sample
    // exactly uniformly. The cutoff leaves room for the count's tolerance;
    // if enumeration still truncates, the estimate was bad and the hashing
    // path below runs with the measured lower bound instead.
    const uint64_t cushion = static_cast<uint64_t>(
        std::ceil((1.0 + preprocess_epsilon) * count.value.to_double()));
    const uint64_t cutoff = std::max(params.hi_thresh, cushion) + 1;
    const SolutionSet all = bounded_enumerate(f, {}, s, cutoff);
    if (all.size() < cutoff) {
      batch.exact_mode = true;
      batch.witnesses.reserve(num_samples);
      for (uint64_t i = 0; i < num_samples; ++i)
        batch.witnesses.push_back(all[pre.below(all.size())]);
      return batch;
    }
    log2c = std::log2(static_cast<double>(all.size()));
  }

  // Window around q = ceil(log2 C - log2 targetCell), clamped to [0, |S|-1];
  // walk order q, q-1, q+1, q+2 (overshooting m gives small cheap cells).
  const double target_cell =
      std::sqrt(static_cast<double>(params.lo_thresh) * static_cast<double>(params.hi_thresh));
  const long q_raw = static_cast<long>(std::ceil(log2c - std::log2(target_cell)));
  const long m_max = s.empty() ? 0 : static_cast<long>(s.size()) - 1;
  std::vector<uint32_t> window;
  for (const long cand : {q_raw, q_raw - 1, q_raw + 1, q_raw + 2}) {
    const long clamped = std::clamp(cand, 0L, m_max);
    if (std::find(window.begin(), window.end(), static_cast<uint32_t>(clamped)) == window.end())
      window.push_back(static_cast<uint32_t>(clamped));
  }
  batch.window = window;

  const uint64_t per_round = (mode == SampleMode::multi) ? params.lo_thresh : 1;
  const uint64_t rounds_goal = (num_samples + per_round - 1) / per_round;

  // Rounds are processed in blocks; each round has its own derived stream, so
  // any scheduling of a block yields the same outcomes. After each block the
  // ordered prefix decides completion and the failure budget exactly as a
  // sequential run would. Blocks are sized by the remaining goal (capped) so
  // thread spawns amortize on long runs without much speculative overshoot.
  std::vector<RoundResult> results;
  uint64_t next_round = 0;
  uint64_t successes = 0;
  uint32_t consecutive_failures = 0;
  uint64_t scanned = 0;
  bool done = false;

  while (!done) {
    const uint64_t floor_block = std::max<uint64_t>(uint64_t(workers) * 4, 8);
    const uint64_t remaining = rounds_goal - successes + uint64_t(workers) * 2;
    const uint64_t block = std::clamp<uint64_t>(remaining, floor_block, 4096);
    const uint64_t begin = next_round;
    const uint64_t end = begin + block;
    results.resize(end);
    auto work = [&](uint64_t round_index) {
      Rng rr(Rng::derive(base_seed, 1 + round_index));
      results[round_index] = run_round(f, s, window, params, rr, mode);
    };
    if (workers == 1) {
      for (uint64_t r = begin; r < end; ++r) work(r);
    } else {
      // Contiguous chunks per worker keep result writes cache-friendly.
      const uint64_t chunk = (block + workers - 1) / workers;
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (uint32_t wkr = 0; wkr < workers; ++wkr) {
        const uint64_t lo = begin + wkr * chunk;
        const uint64_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi]() {
          for (uint64_t r = lo; r < hi; ++r) work(r);
        });
      }
      for (auto& t : pool) t.join();
    }
    next_round = end;

    for (; scanned < end && !done; ++scanned) {
      const RoundResult& rr = results[scanned];
      if (rr.diag) {
        consecutive_failures = 0;
        ++successes;
        if (successes == rounds_goal) done = true;
      } else {
        ++consecutive_failures;
        if (consecutive_failures >= failure_budget) {
          throw FailureBudgetError(
              std::to_string(failure_budget) +
              " consecutive rounds failed every window position (window base m=" +
              std::to_string(window.empty() ? 0 : window[0]) + ")");
        }
      }
    }
  }

  for (uint64_t r = 0; r < scanned; ++r) {
    RoundResult& rr = results[r];
    batch.per_round.push_back(rr.diag);
    if (rr.diag) {
      for (auto& w : rr.witnesses) batch.witnesses.push_back(std::move(w));
    } else {
      ++batch.failed_rounds;
    }
  }
  return batch;
}

}  // namespace

SampleBatch sample(const CnfFormula& f, std::span<const Var> s, double epsilon,
                   uint64_t num_samples, Rng& rng, SampleMode mode) {
  return run_sampling(f, s, epsilon, num_samples, 1, rng.next_u64(), mode);
}

SampleBatch sample_parallel(const CnfFormula& f, std::span<const Var> s, double epsilon,
                            uint64_t num_samples, uint32_t workers, uint64_t master_seed,
                            SampleMode mode) {
  Rng master(master_seed);
  return run_sampling(f, s, epsilon, num_samples, workers, master.next_u64(), mode);
}

Witness extend_witness(const CnfFormula& f, const ProjectedWitness& pw) {
  Solver solver(f);
  const SolveResult res = solver.solve(pw.lits);
  if (!res.sat) throw Error("projected witness does not extend to a model");
  return *res.witness;
}

}  // namespace xormc
