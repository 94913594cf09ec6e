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

#include "xormc/oracle.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>

namespace xormc {

namespace {

// Backtracking enumerator shared by the oracle entry points. Branches on the
// projection variables in ascending order with unit propagation and
// dead-clause pruning; everything is undone through an explicit trail, and
// the visitor decides what to do with each group of projected solutions.
class Enumerator {
 public:
  // visit(free_s_count, values): called once per projection group; the group
  // covers every completion of the still-unassigned S variables (all clauses
  // are satisfied at that point), i.e. 2^free_s_count projections.
  using Visitor = std::function<void(uint32_t, const std::vector<int8_t>&)>;

  Enumerator(const CnfFormula& f, std::span<const Var> s) : f_(f) {
    values_.assign(f.num_vars + 1, 0);
    std::vector<uint8_t> in_s(f.num_vars + 1, 0);
    s_vars_.assign(s.begin(), s.end());
    std::sort(s_vars_.begin(), s_vars_.end());
    s_vars_.erase(std::unique(s_vars_.begin(), s_vars_.end()), s_vars_.end());
    for (const Var v : s_vars_) {
      if (v < 1 || v > f.num_vars)
        throw Error("projection set is not a subset of the support");
      in_s[v] = 1;
    }
    for (Var v = 1; v <= f.num_vars; ++v) {
      if (!in_s[v]) rest_vars_.push_back(v);
    }
  }

  void run(const Visitor& visit) {
    visit_ = &visit;
    recurse_s(0);
    visit_ = nullptr;
  }

  const std::vector<Var>& s_vars() const { return s_vars_; }

 private:
  int lit_val(Lit l) const {
    const int8_t v = values_[l.var()];
    return l.positive() ? v : -v;
  }

  void push(Var v, bool val, std::vector<Var>& trail) {
    values_[v] = val ? 1 : -1;
    trail.push_back(v);
  }

  void undo(std::vector<Var>& trail) {
    for (const Var v : trail) values_[v] = 0;
    trail.clear();
  }

  // Unit propagation to fixpoint. Returns false on conflict; sets
  // all_satisfied when every clause already holds.
  bool propagate(std::vector<Var>& trail, bool& all_satisfied) {
    bool changed = true;
    while (changed) {
      changed = false;
      all_satisfied = true;
      for (const Clause& c : f_.clauses) {
        bool satisfied = false;
        int unassigned = 0;
        Lit unit;
        for (const Lit l : c) {
          const int v = lit_val(l);
          if (v > 0) {
            satisfied = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            unit = l;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        all_satisfied = false;
        if (unassigned == 1) {
          push(unit.var(), unit.positive(), trail);
          changed = true;
        }
      }
    }
    return true;
  }

  void recurse_s(size_t next_s) {
    std::vector<Var> trail;
    bool all_satisfied = false;
    if (!propagate(trail, all_satisfied)) {
      undo(trail);
      return;
    }
    if (all_satisfied) {
      uint32_t free_s = 0;
      for (const Var v : s_vars_) {
        if (values_[v] == 0) ++free_s;
      }
      (*visit_)(free_s, values_);
      undo(trail);
      return;
    }
    Var branch = 0;
    size_t branch_next = next_s;
    for (size_t i = next_s; i < s_vars_.size(); ++i) {
      if (values_[s_vars_[i]] == 0) {
        branch = s_vars_[i];
        branch_next = i + 1;
        break;
      }
    }
    if (branch == 0) {
      // S fully assigned but some clause undecided: one projection iff an
      // extension over the remaining variables exists.
      if (extension_exists(0)) (*visit_)(0, values_);
      undo(trail);
      return;
    }
    std::vector<Var> decision;
    push(branch, false, decision);
    recurse_s(branch_next);
    undo(decision);
    push(branch, true, decision);
    recurse_s(branch_next);
    undo(decision);
    undo(trail);
  }

  bool extension_exists(size_t next_rest) {
    std::vector<Var> trail;
    bool all_satisfied = false;
    if (!propagate(trail, all_satisfied)) {
      undo(trail);
      return false;
    }
    if (all_satisfied) {
      undo(trail);
      return true;
    }
    Var branch = 0;
    size_t branch_next = next_rest;
    for (size_t i = next_rest; i < rest_vars_.size(); ++i) {
      if (values_[rest_vars_[i]] == 0) {
        branch = rest_vars_[i];
        branch_next = i + 1;
        break;
      }
    }
    if (branch == 0) {
      undo(trail);
      return false;
    }
    std::vector<Var> decision;
    push(branch, false, decision);
    bool found = extension_exists(branch_next);
    undo(decision);
    if (!found) {
      push(branch, true, decision);
      found = extension_exists(branch_next);
      undo(decision);
    }
    undo(trail);
    return found;
  }

  const CnfFormula& f_;
  std::vector<int8_t> values_;
  std::vector<Var> s_vars_;
  std::vector<Var> rest_vars_;
  const Visitor* visit_ = nullptr;
};

void check_cap(const CnfFormula& f, uint32_t cap) {
  if (f.num_vars > cap)
    throw CapExceededError("support of " + std::to_string(f.num_vars) +
                           " variables exceeds the enumeration cap of " +
                           std::to_string(cap));
}

}  // namespace

uint64_t exact_count(const CnfFormula& f, std::span<const Var> s, uint32_t cap) {
  check_cap(f, cap);
  Enumerator e(f, s);
  uint64_t total = 0;
  e.run([&](uint32_t free_s, const std::vector<int8_t>&) { total += 1ULL << free_s; });
  return total;
}

SolutionSet enumerate_projections(const CnfFormula& f, std::span<const Var> s,
                                  uint32_t cap) {
  check_cap(f, cap);
  Enumerator e(f, s);
  SolutionSet out(e.s_vars());
  const auto& s_vars = e.s_vars();
  e.run([&](uint32_t, const std::vector<int8_t>& values) {
    std::vector<Var> free_vars;
    for (const Var v : s_vars) {
      if (values[v] == 0) free_vars.push_back(v);
    }
    const uint64_t combos = 1ULL << free_vars.size();
    for (uint64_t mask = 0; mask < combos; ++mask) {
      ProjectedWitness pw;
      pw.lits.reserve(s_vars.size());
      size_t free_at = 0;
      for (const Var v : s_vars) {
        if (values[v] != 0) {
          pw.lits.emplace_back(v, values[v] > 0);
        } else {
          pw.lits.emplace_back(v, ((mask >> free_at) & 1) != 0);
          ++free_at;
        }
      }
      out.insert(std::move(pw));
    }
  });
  return out;
}

std::vector<ProjectedWitness> exact_uniform_sample(const CnfFormula& f,
                                                   std::span<const Var> s, Rng& rng,
                                                   uint64_t count, uint32_t cap) {
  const SolutionSet all = enumerate_projections(f, s, cap);
  if (all.empty()) throw Error("formula is unsatisfiable");
  std::vector<ProjectedWitness> out;
  out.reserve(count);
  for (uint64_t i = 0; i < count; ++i) out.push_back(all[rng.below(all.size())]);
  return out;
}

Dyadic exact_weighted_count(const WeightedCnf& w, uint32_t cap) {
  check_cap(w.formula, cap);
  // Common denominator 2^total_bits across the weighted variables; every
  // model contributes the product of its lifted literal numerators.
  const std::vector<Var> weighted = w.weighted_vars();
  std::vector<uint32_t> bits(w.formula.num_vars + 1, 0);
  std::vector<uint8_t> is_weighted(w.formula.num_vars + 1, 0);
  uint32_t total_bits = 0;
  for (const Var v : weighted) {
    bits[v] = std::max(w.weight_of(Lit(v, true)).m, w.weight_of(Lit(v, false)).m);
    is_weighted[v] = 1;
    total_bits += bits[v];
  }
  Enumerator e(w.formula, w.formula.support());
  BigUint sum;
  e.run([&](uint32_t, const std::vector<int8_t>& values) {
    // Free unweighted variables double the contribution; free weighted
    // variables contribute the sum of both literal numerators.
    BigUint contrib(1);
    for (Var v = 1; v <= w.formula.num_vars; ++v) {
      if (is_weighted[v]) {
        const uint64_t kp = w.weight_of(Lit(v, true)).lifted_k(bits[v]);
        const uint64_t kn = w.weight_of(Lit(v, false)).lifted_k(bits[v]);
        if (values[v] == 0) {
          contrib.mul_u64(kp + kn);
        } else {
          contrib.mul_u64(values[v] > 0 ? kp : kn);
        }
      } else if (values[v] == 0) {
        contrib.mul_u64(2);
      }
    }
    sum += contrib;
    return;
  });
  return Dyadic{sum, total_bits};
}

TiltBound exact_tilt(const WeightedCnf& w, uint32_t cap) {
  check_cap(w.formula, cap);
  const std::vector<Var> weighted = w.weighted_vars();
  std::vector<uint32_t> bits(w.formula.num_vars + 1, 0);
  for (const Var v : weighted)
    bits[v] = std::max(w.weight_of(Lit(v, true)).m, w.weight_of(Lit(v, false)).m);

  bool any = false;
  BigUint best_max, best_min;
  Enumerator e(w.formula, w.formula.support());
  e.run([&](uint32_t, const std::vector<int8_t>& values) {
    // Expand free weighted variables: the group mixes different weights.
    std::vector<Var> free_weighted;
    for (const Var v : weighted) {
      if (values[v] == 0) free_weighted.push_back(v);
    }
    const uint64_t combos = 1ULL << free_weighted.size();
    for (uint64_t mask = 0; mask < combos; ++mask) {
      BigUint prod(1);
      for (const Var v : weighted) {
        bool val;
        if (values[v] != 0) {
          val = values[v] > 0;
        } else {
          const size_t at =
              static_cast<size_t>(std::find(free_weighted.begin(), free_weighted.end(), v) -
                                  free_weighted.begin());
          val = ((mask >> at) & 1) != 0;
        }
        prod.mul_u64(w.weight_of(Lit(v, val)).lifted_k(bits[v]));
      }
      if (!any || prod > best_max) best_max = prod;
      if (!any || prod < best_min) best_min = prod;
      any = true;
    }
  });
  if (!any) throw Error("formula is unsatisfiable");
  TiltBound t;
  t.num = best_max;
  t.den = best_min;
  t.infinite = best_min.is_zero();
  return t;
}

// Regularized upper incomplete gamma Q(a, x): series expansion of P for
// x < a+1, continued fraction (modified Lentz) for Q otherwise.
namespace {

double gamma_q(double a, double x) {
  if (x <= 0.0) return 1.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - lg);
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - lg) * h;
}

}  // namespace

double chi_square_p_value(double statistic, uint32_t dof) {
  if (dof == 0) return 1.0;
  return gamma_q(dof / 2.0, statistic / 2.0);
}

UniformityReport uniformity_report(std::span<const ProjectedWitness> samples,
                                   const SolutionSet& reference) {
  if (reference.empty()) throw Error("reference solution set is empty");
  UniformityReport rep;
  for (const auto& ref : reference) rep.histogram[ref] = 0;
  for (const auto& s : samples) {
    const auto it = rep.histogram.find(s);
    if (it == rep.histogram.end())
      throw Error("sample outside the reference solution set: " + s.to_dimacs_string());
    ++it->second;
    ++rep.sample_count;
  }

  const double expected =
      static_cast<double>(rep.sample_count) / static_cast<double>(reference.size());
  double stat = 0.0;
  uint64_t max_freq = 0;
  uint64_t min_freq = UINT64_MAX;
  uint64_t min_nonzero = UINT64_MAX;
  for (const auto& [key, cnt] : rep.histogram) {
    const double d = static_cast<double>(cnt) - expected;
    stat += d * d / expected;
    max_freq = std::max(max_freq, cnt);
    min_freq = std::min(min_freq, cnt);
    if (cnt > 0) min_nonzero = std::min(min_nonzero, cnt);
  }
  rep.chi2.statistic = stat;
  rep.chi2.dof = static_cast<uint32_t>(reference.size() - 1);
  rep.chi2.p_value = chi_square_p_value(stat, rep.chi2.dof);
  rep.ratio_infinite = (min_freq == 0);
  const uint64_t denom = rep.ratio_infinite ? min_nonzero : min_freq;
  rep.freq_ratio = (denom == UINT64_MAX || denom == 0)
                       ? 0.0
                       : static_cast<double>(max_freq) / static_cast<double>(denom);
  return rep;
}

ChiSquare two_sample_chi_square(const std::map<ProjectedWitness, uint64_t>& a,
                                const std::map<ProjectedWitness, uint64_t>& b) {
  uint64_t na = 0, nb = 0;
  for (const auto& [k, v] : a) na += v;
  for (const auto& [k, v] : b) nb += v;
  if (na == 0 || nb == 0) throw Error("empty histogram in two-sample comparison");
  const double k1 = std::sqrt(static_cast<double>(nb) / static_cast<double>(na));
  const double k2 = std::sqrt(static_cast<double>(na) / static_cast<double>(nb));

  std::map<ProjectedWitness, std::pair<uint64_t, uint64_t>> joined;
  for (const auto& [k, v] : a) joined[k].first = v;
  for (const auto& [k, v] : b) joined[k].second = v;

  ChiSquare out;
  uint32_t used = 0;
  double stat = 0.0;
  for (const auto& [key, counts] : joined) {
    const auto [ca, cb] = counts;
    if (ca == 0 && cb == 0) continue;
    ++used;
    const double d = k1 * static_cast<double>(ca) - k2 * static_cast<double>(cb);
    stat += d * d / static_cast<double>(ca + cb);
  }
  out.statistic = stat;
  out.dof = used - (na == nb ? 1 : 0);
  out.p_value = chi_square_p_value(stat, out.dof);
  return out;
}

}  // namespace xormc
