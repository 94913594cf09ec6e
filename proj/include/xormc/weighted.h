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
#include "xormc/counter.h"
#include "xormc/formula.h"
#include "xormc/rng.h"
#include "xormc/sampler.h"

namespace xormc {

/// Literal weight k / 2^m, kept normalized (k odd, or the constants 0 and 1
/// as k=0,m=0 and k=1,m=0). Weights live in [0, 1].
struct DyadicWeight {
  uint64_t k = 1;
  uint32_t m = 0;

  static DyadicWeight make(uint64_t k, uint32_t m);  // normalizes
  /// Nearest dyadic with at most `precision_bits` fractional bits; the
  /// rounding error is returned so callers can surface it.
  static DyadicWeight from_decimal(double w, uint32_t precision_bits,
                                   double* rounding_error = nullptr);

  double to_double() const;
  bool is_zero() const { return k == 0; }
  bool is_one() const { return k == 1 && m == 0; }
  DyadicWeight complement() const;  // 1 - k/2^m
  /// Numerator after lifting to precision target_m >= m.
  uint64_t lifted_k(uint32_t target_m) const { return k << (target_m - m); }

  bool operator==(const DyadicWeight&) const = default;
};

/// CNF formula plus a literal -> dyadic weight map; a literal absent from the
/// map has weight 1. The weight of an assignment is the product of the
/// weights of the literals it satisfies. Parsed from `c p weight <lit> <w> 0`
/// annotation lines; when only one literal of a variable carries a weight the
/// other defaults to the complement.
struct WeightedCnf {
  CnfFormula formula;
  std::map<Lit, DyadicWeight> weights;
  std::map<Lit, double> rounding_errors;  // nonzero entries only

  static WeightedCnf from_formula(const CnfFormula& f, uint32_t precision_bits = 8);

  DyadicWeight weight_of(Lit l) const {
    const auto it = weights.find(l);
    return it == weights.end() ? DyadicWeight{} : it->second;
  }
  std::vector<Var> weighted_vars() const;
};

/// CNF over m fresh variables 1..m with exactly k satisfying assignments,
/// linear in m. Variable j carries place value 2^(j-1); the models are the
/// assignments whose value is below k.
CnfFormula chain_formula(uint64_t k, uint32_t m);

/// Result of rewriting a weighted formula as plain CNF: the model count of
/// `formula` equals 2^scale_log2 times the weighted count of the input,
/// exactly. Gadget blocks realize the weight multiplicities, so they belong
/// in any sampling set used downstream.
struct ReductionResult {
  CnfFormula formula;
  uint32_t scale_log2 = 0;
  std::vector<Var> original_vars;
  std::vector<Var> gadget_vars;
};

ReductionResult reduce_wmc_to_umc(const WeightedCnf& w);

/// Upper bound on the tilt (max/min assignment weight over the solutions):
/// the product over weighted variables of max(w+, w-) / min(w+, w-).
struct TiltBound {
  BigUint num;
  BigUint den;
  bool infinite = false;  // some variable has a zero-weight literal

  double to_double() const;
};

TiltBound tilt_bound(const WeightedCnf& w);

struct WeightedEstimate {
  Dyadic value;        // estimate of the weighted count
  uint32_t scale_log2 = 0;
  CountEstimate raw;   // unweighted estimate on the reduced formula
};

/// (epsilon, delta) estimate of the weighted count: counts the reduced
/// formula over base_sampling (original support by default) united with the
/// gadget blocks, then divides by 2^scale_log2. Inherits the counter's
/// guarantee for the weighted count.
WeightedEstimate weighted_count(const WeightedCnf& w, double epsilon, double delta, Rng& rng,
                                std::span<const Var> base_sampling = {});

/// Almost-uniform weighted sampling: samples the reduced formula over all of
/// its variables and projects onto the original support. Each original model
/// has exactly 2^scale_log2 * weight extensions, so the induced distribution
/// is proportional to assignment weight within the sampler's tolerance band.
SampleBatch weighted_sample(const WeightedCnf& w, double epsilon, uint64_t num_samples,
                            Rng& rng, SampleMode mode = SampleMode::single);

}  // namespace xormc
