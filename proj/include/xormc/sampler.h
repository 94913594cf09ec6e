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

#include "xormc/formula.h"
#include "xormc/rng.h"

namespace xormc {

/// Smallest tolerance for which the kappa equation below has a root.
inline constexpr double sampler_min_epsilon = 6.84;

/// Cell-size thresholds of the sampler, derived from the tolerance:
///   epsilon  = (1+kappa)*(7.44 + 0.392/(1-kappa)^2) - 1   (kappa solved)
///   pivot    = ceil(4.03 * (1 + 1/kappa)^2)
///   hiThresh = ceil(1 + sqrt(2)*(1+kappa)*pivot)
///   loThresh = max(1, floor(pivot / (sqrt(2)*(1+kappa))))
/// A round accepts a cell whose size lies in [loThresh, hiThresh].
struct SamplerParams {
  double epsilon = 0.0;
  double kappa = 0.0;
  uint64_t pivot = 0;
  uint64_t lo_thresh = 0;
  uint64_t hi_thresh = 0;
};

double kappa_from_epsilon(double epsilon);  // throws below sampler_min_epsilon
SamplerParams params_from_kappa(double epsilon, double kappa);
SamplerParams sampler_params(double epsilon);

enum class SampleMode {
  single,  // one independent sample per successful round
  multi,   // loThresh distinct samples per successful round
};

struct SampleRoundDiag {
  uint32_t m = 0;
  uint64_t cell_count = 0;
};

/// Accepted cell: the chosen solutions plus the measurement they came from.
struct CellSample {
  std::vector<ProjectedWitness> witnesses;
  SampleRoundDiag diag;
};

struct SampleBatch {
  std::vector<ProjectedWitness> witnesses;
  std::vector<std::optional<SampleRoundDiag>> per_round;  // nullopt = failed round
  uint64_t failed_rounds = 0;
  uint64_t requested = 0;
  bool exact_mode = false;        // solution space was small enough to enumerate
  std::vector<uint32_t> window;   // m values each round walked, in order
  std::vector<Var> sampling_set;
};

class UnsatisfiableError : public Error {
 public:
  using Error::Error;
};

class FailureBudgetError : public Error {
 public:
  using Error::Error;
};

/// One sampling probe at scale m: draws a hash and target, enumerates the
/// selected cell up to hiThresh+1, and accepts iff the cell size lies in
/// [loThresh, hiThresh]. On acceptance returns one uniformly chosen solution
/// (single mode) or loThresh distinct solutions chosen uniformly without
/// replacement (multi mode), along with the measured cell size.
std::optional<CellSample> sample_round(const CnfFormula& f, std::span<const Var> s,
                                       uint32_t m, const SamplerParams& params, Rng& rng,
                                       SampleMode mode);

/// Almost-uniform sampling over the projections onto s.
///
/// Preprocessing runs one coarse approximate count (epsilon 0.8, delta 0.2)
/// to center the cell-scale search window {q, q-1, q+1, q+2} around
/// q = ceil(log2 C - log2 sqrt(loThresh*hiThresh)); if the count is at most
/// hiThresh the solution set is enumerated outright and sampled exactly
/// uniformly. Rounds repeat until numSamples are collected (a multi-mode
/// batch may overshoot; the full final round is returned) or until 10
/// consecutive rounds fail every window position (FailureBudgetError).
///
/// Each round draws from its own stream derived from the caller's rng, so
/// the output is identical no matter how rounds are scheduled.
SampleBatch sample(const CnfFormula& f, std::span<const Var> s, double epsilon,
                   uint64_t num_samples, Rng& rng, SampleMode mode = SampleMode::single);

/// Same sampling process executed on `workers` threads. The per-round seed
/// schedule depends only on master_seed, so the output (order included) is
/// identical for every worker count; workers=1 matches sample() seeded with
/// Rng(master_seed) exactly.
SampleBatch sample_parallel(const CnfFormula& f, std::span<const Var> s, double epsilon,
                            uint64_t num_samples, uint32_t workers, uint64_t master_seed,
                            SampleMode mode = SampleMode::single);

/// Extends a projected sample to a full witness of f (one solve with the
/// projection as assumptions).
Witness extend_witness(const CnfFormula& f, const ProjectedWitness& pw);

}  // namespace xormc
