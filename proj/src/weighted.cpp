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

#include "xormc/weighted.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace xormc {

DyadicWeight DyadicWeight::make(uint64_t k, uint32_t m) {
  DyadicWeight w{k, m};
  if (w.k == 0) {
    w.m = 0;
    return w;
  }
  while (w.m > 0 && (w.k & 1) == 0) {
    w.k >>= 1;
    --w.m;
  }
  return w;
}

DyadicWeight DyadicWeight::from_decimal(double w, uint32_t precision_bits,
                                        double* rounding_error) {
  if (!(w >= 0.0 && w <= 1.0)) throw Error("literal weight must lie in [0, 1]");
  if (precision_bits > 62) throw Error("dyadic precision above 62 bits is unsupported");
  const double scaled = std::ldexp(w, static_cast<int>(precision_bits));
  uint64_t k = static_cast<uint64_t>(std::llround(scaled));
  const uint64_t full = 1ULL << precision_bits;
  if (k > full) k = full;
  const DyadicWeight dw = make(k, precision_bits);
  if (rounding_error) *rounding_error = std::fabs(w - dw.to_double());
  return dw;
}

double DyadicWeight::to_double() const {
  return std::ldexp(static_cast<double>(k), -static_cast<int>(m));
}

DyadicWeight DyadicWeight::complement() const {
  return make((1ULL << m) - k, m);
}

WeightedCnf WeightedCnf::from_formula(const CnfFormula& f, uint32_t precision_bits) {
  WeightedCnf w;
  w.formula = f;
  for (const std::string& line : f.comments) {
    std::istringstream ls(line);
    std::string c, p, kw;
    if (!(ls >> c >> p >> kw)) continue;
    if (c != "c" || p != "p" || kw != "weight") continue;
    long long lit = 0;
    double value = 0.0;
    long long terminator = -1;
    if (!(ls >> lit >> value >> terminator) || lit == 0 || terminator != 0)
      throw Error("malformed weight line: " + line);
    const Var v = static_cast<Var>(lit > 0 ? lit : -lit);
    if (v > f.num_vars)
      throw Error("weight line references variable outside the support: " + line);
    const Lit l = Lit::from_dimacs(static_cast<int>(lit));
    if (w.weights.count(l)) throw Error("duplicate weight for literal: " + line);
    double err = 0.0;
    w.weights[l] = DyadicWeight::from_decimal(value, precision_bits, &err);
    if (err != 0.0) w.rounding_errors[l] = err;
  }
  // A variable with only one weighted literal gets the complement by default.
  std::vector<Var> vars = w.weighted_vars();
  for (const Var v : vars) {
    const Lit pos(v, true), neg(v, false);
    const bool has_pos = w.weights.count(pos) != 0;
    const bool has_neg = w.weights.count(neg) != 0;
    if (has_pos && !has_neg) w.weights[neg] = w.weights[pos].complement();
    if (has_neg && !has_pos) w.weights[pos] = w.weights[neg].complement();
  }
  return w;
}

std::vector<Var> WeightedCnf::weighted_vars() const {
  std::vector<Var> out;
  for (const auto& [lit, weight] : weights) out.push_back(lit.var());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Clauses of [value(vars) < k] over m block variables starting at base+1,
// where variable base+1+j carries place value 2^j. One clause per zero bit
// of k-1: if every higher one-bit variable is set, that zero-bit variable
// must be clear. Each clause gets the guard literal appended (the reduction
// activates a chain only for one polarity of its weighted variable).
void emit_chain(uint64_t k, uint32_t m, Var base, std::optional<Lit> guard,
                std::vector<Clause>& out) {
  const uint64_t full = (m >= 64) ? 0 : (1ULL << m);
  if (m < 64 && k == full) return;  // TRUE: every assignment counts
  Clause prefix;
  if (guard) prefix.push_back(*guard);
  if (k == 0) {
    out.push_back(prefix);  // FALSE
    return;
  }
  const uint64_t bound = k - 1;  // models are exactly {y : y <= k-1}
  for (uint32_t j = 0; j < m; ++j) {
    if ((bound >> j) & 1) continue;
    Clause c = prefix;
    c.emplace_back(base + 1 + j, false);
    for (uint32_t i = j + 1; i < m; ++i) {
      if ((bound >> i) & 1) c.emplace_back(base + 1 + i, false);
    }
    out.push_back(std::move(c));
  }
}

}  // namespace

CnfFormula chain_formula(uint64_t k, uint32_t m) {
  if (m >= 63) throw Error("chain width above 62 bits is unsupported");
  if (k > (1ULL << m)) throw Error("chain target exceeds 2^m");
  CnfFormula f;
  f.num_vars = m;
  emit_chain(k, m, 0, std::nullopt, f.clauses);
  return f;
}

ReductionResult reduce_wmc_to_umc(const WeightedCnf& w) {
  ReductionResult res;
  res.formula.num_vars = w.formula.num_vars;
  res.formula.clauses = w.formula.clauses;
  res.original_vars = w.formula.support();

  for (const Var v : w.weighted_vars()) {
    DyadicWeight wp = w.weight_of(Lit(v, true));
    DyadicWeight wn = w.weight_of(Lit(v, false));
    if (wp.is_zero() && wn.is_zero())
      throw Error("variable " + std::to_string(v) + " has weight 0 on both literals");
    const uint32_t mv = std::max(wp.m, wn.m);
    if (mv == 0) {
      // Both weights are 0 or 1. Weight 1 on both sides needs no gadget;
      // a zero side forces the literal's complement.
      if (wp.is_zero()) res.formula.clauses.push_back({Lit(v, false)});
      if (wn.is_zero()) res.formula.clauses.push_back({Lit(v, true)});
      continue;
    }
    const uint64_t kp = wp.lifted_k(mv);
    const uint64_t kn = wn.lifted_k(mv);
    const Var base = res.formula.num_vars;
    res.formula.num_vars += mv;
    for (uint32_t j = 1; j <= mv; ++j) res.gadget_vars.push_back(base + j);
    // v -> chain(kp), ~v -> chain(kn): the number of block assignments
    // compatible with a model is exactly the lifted numerator of its literal.
    emit_chain(kp, mv, base, Lit(v, false), res.formula.clauses);
    emit_chain(kn, mv, base, Lit(v, true), res.formula.clauses);
    res.scale_log2 += mv;
  }
  return res;
}

TiltBound tilt_bound(const WeightedCnf& w) {
  TiltBound t;
  t.num = BigUint(1);
  t.den = BigUint(1);
  for (const Var v : w.weighted_vars()) {
    const DyadicWeight wp = w.weight_of(Lit(v, true));
    const DyadicWeight wn = w.weight_of(Lit(v, false));
    const uint32_t mv = std::max(wp.m, wn.m);
    const uint64_t kp = wp.lifted_k(mv);
    const uint64_t kn = wn.lifted_k(mv);
    t.num.mul_u64(std::max(kp, kn));
    const uint64_t lo = std::min(kp, kn);
    if (lo == 0) {
      t.infinite = true;
    } else {
      t.den.mul_u64(lo);
    }
  }
  return t;
}

double TiltBound::to_double() const {
  if (infinite) return std::numeric_limits<double>::infinity();
  return num.to_double() / den.to_double();
}

WeightedEstimate weighted_count(const WeightedCnf& w, double epsilon, double delta, Rng& rng,
                                std::span<const Var> base_sampling) {
  const ReductionResult red = reduce_wmc_to_umc(w);
  std::vector<Var> s = base_sampling.empty()
                           ? w.formula.sampling_or_support()
                           : std::vector<Var>(base_sampling.begin(), base_sampling.end());
  s.insert(s.end(), red.gadget_vars.begin(), red.gadget_vars.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());

  WeightedEstimate out;
  out.raw = approx_count(red.formula, s, epsilon, delta, rng);
  out.scale_log2 = red.scale_log2;
  out.value = Dyadic{out.raw.value, red.scale_log2};
  return out;
}

SampleBatch weighted_sample(const WeightedCnf& w, double epsilon, uint64_t num_samples,
                            Rng& rng, SampleMode mode) {
  const ReductionResult red = reduce_wmc_to_umc(w);
  const std::vector<Var> s = red.formula.support();
  SampleBatch batch = sample(red.formula, s, epsilon, num_samples, rng, mode);
  for (auto& pw : batch.witnesses) pw = project(pw, red.original_vars);
  batch.sampling_set = red.original_vars;
  return batch;
}

}  // namespace xormc
