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
#include <map>
#include <span>
#include <vector>

#include "xormc/bigint.h"
#include "xormc/formula.h"
#include "xormc/rng.h"
#include "xormc/weighted.h"

namespace xormc {

/// Ground-truth routines: exact counting, exact-uniform sampling and exact
/// weighted sums by enumeration with unit-propagation pruning, plus the
/// statistical report used to compare sample histograms. Deliberately
/// independent of the CDCL solver so the two can check each other.

inline constexpr uint32_t default_oracle_cap = 20;

class CapExceededError : public Error {
 public:
  using Error::Error;
};

/// Exact |solutions of f projected onto s|. Throws if the support exceeds
/// `cap` variables (enumeration budget guard).
uint64_t exact_count(const CnfFormula& f, std::span<const Var> s,
                     uint32_t cap = default_oracle_cap);

/// All distinct projections onto s, in canonical (sorted) order.
SolutionSet enumerate_projections(const CnfFormula& f, std::span<const Var> s,
                                  uint32_t cap = default_oracle_cap);

/// Enumerates the projected solution set once, then draws `count` samples
/// uniformly with replacement. Throws on an unsatisfiable formula.
std::vector<ProjectedWitness> exact_uniform_sample(const CnfFormula& f,
                                                   std::span<const Var> s, Rng& rng,
                                                   uint64_t count,
                                                   uint32_t cap = default_oracle_cap);

/// Exact weighted model count: sum over all solutions of the product of
/// satisfied-literal weights, as an exact dyadic rational.
Dyadic exact_weighted_count(const WeightedCnf& w, uint32_t cap = default_oracle_cap);

/// Exact tilt: max assignment weight / min assignment weight over the
/// solutions. `infinite` flags a zero-weight solution. Throws if unsat.
TiltBound exact_tilt(const WeightedCnf& w, uint32_t cap = default_oracle_cap);

struct ChiSquare {
  double statistic = 0.0;
  uint32_t dof = 0;
  double p_value = 1.0;
};

/// Upper tail of the chi-square distribution: P(X > statistic) with `dof`
/// degrees of freedom (regularized incomplete gamma Q(dof/2, stat/2)).
double chi_square_p_value(double statistic, uint32_t dof);

struct UniformityReport {
  std::map<ProjectedWitness, uint64_t> histogram;
  ChiSquare chi2;
  double freq_ratio = 1.0;   // max/min nonzero frequency
  bool ratio_infinite = false;  // some reference solution never sampled
  uint64_t sample_count = 0;
};

/// Goodness-of-fit of the samples against the uniform distribution over the
/// reference solutions. A sample outside the reference set indicates a
/// soundness bug upstream and throws.
UniformityReport uniformity_report(std::span<const ProjectedWitness> samples,
                                   const SolutionSet& reference);

/// Two-sample chi-square comparing two histograms over a shared key space.
/// Bins empty in both histograms are skipped; with equal totals the degrees
/// of freedom are (used bins - 1).
ChiSquare two_sample_chi_square(const std::map<ProjectedWitness, uint64_t>& a,
                                const std::map<ProjectedWitness, uint64_t>& b);

}  // namespace xormc
