// Shared helpers for the test suites: formula construction from integer
// literals, seeded corpus generators, and naive brute-force reference
// implementations that stay independent of the library's code paths.

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "xormc/formula.h"
#include "xormc/rng.h"
#include "xormc/solver.h"
#include "xormc/weighted.h"

namespace xormc::test {

inline CnfFormula make_formula(uint32_t num_vars, const std::vector<std::vector<int>>& clauses) {
  CnfFormula f;
  f.num_vars = num_vars;
  for (const auto& c : clauses) {
    Clause cl;
    for (const int l : c) cl.push_back(Lit::from_dimacs(l));
    f.clauses.push_back(std::move(cl));
  }
  return f;
}

// Mask-based clause check, written against the DIMACS meaning directly so it
// shares no code with evaluate(). Bit v-1 of `bits` is the value of var v.
inline bool naive_satisfies(const CnfFormula& f, uint64_t bits) {
  for (const Clause& c : f.clauses) {
    bool sat = false;
    for (const Lit l : c) {
      const bool val = (bits >> (l.var() - 1)) & 1;
      if (val == l.positive()) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

inline uint64_t naive_model_count(const CnfFormula& f) {
  uint64_t count = 0;
  for (uint64_t bits = 0; bits < (1ULL << f.num_vars); ++bits) {
    if (naive_satisfies(f, bits)) ++count;
  }
  return count;
}

// Distinct projections onto s among all satisfying assignments.
inline uint64_t naive_projected_count(const CnfFormula& f, const std::vector<Var>& s) {
  std::set<uint64_t> keys;
  for (uint64_t bits = 0; bits < (1ULL << f.num_vars); ++bits) {
    if (!naive_satisfies(f, bits)) continue;
    uint64_t key = 0;
    for (size_t i = 0; i < s.size(); ++i) {
      if ((bits >> (s[i] - 1)) & 1) key |= 1ULL << i;
    }
    keys.insert(key);
  }
  return keys.size();
}

inline Witness witness_from_bits(uint32_t num_vars, uint64_t bits) {
  Witness w(num_vars);
  for (Var v = 1; v <= num_vars; ++v) w.set(v, (bits >> (v - 1)) & 1);
  return w;
}

// Random 3-CNF: every clause has three distinct variables and random signs.
inline CnfFormula random_3cnf(uint32_t num_vars, uint32_t num_clauses, Rng& rng) {
  CnfFormula f;
  f.num_vars = num_vars;
  for (uint32_t i = 0; i < num_clauses; ++i) {
    std::vector<Var> vars;
    while (vars.size() < 3) {
      const Var v = static_cast<Var>(rng.below(num_vars) + 1);
      bool dup = false;
      for (const Var u : vars) dup |= (u == v);
      if (!dup) vars.push_back(v);
    }
    Clause c;
    for (const Var v : vars) c.emplace_back(v, rng.coin());
    f.clauses.push_back(std::move(c));
  }
  return f;
}

// Formula with planted functional dependencies: the first num_inputs
// variables are free, each remaining variable is defined as the AND or OR of
// two distinct inputs. The input set is an independent support and the gate
// outputs are always droppable; when gates share inputs, outputs can jointly
// determine an input, so minimization may land on a different minimal set.
inline CnfFormula planted_dependency_formula(uint32_t num_inputs, uint32_t num_outputs,
                                             Rng& rng) {
  CnfFormula f;
  f.num_vars = num_inputs + num_outputs;
  for (uint32_t i = 0; i < num_outputs; ++i) {
    const Var o = num_inputs + i + 1;
    const Var a = static_cast<Var>(rng.below(num_inputs) + 1);
    Var b = a;
    while (b == a) b = static_cast<Var>(rng.below(num_inputs) + 1);
    if (rng.coin()) {
      // o <-> (a AND b)
      f.clauses.push_back({Lit(o, false), Lit(a, true)});
      f.clauses.push_back({Lit(o, false), Lit(b, true)});
      f.clauses.push_back({Lit(o, true), Lit(a, false), Lit(b, false)});
    } else {
      // o <-> (a OR b)
      f.clauses.push_back({Lit(o, true), Lit(a, false)});
      f.clauses.push_back({Lit(o, true), Lit(b, false)});
      f.clauses.push_back({Lit(o, false), Lit(a, true), Lit(b, true)});
    }
  }
  return f;
}

// Small weighted instance: a random 3-CNF with dyadic weights on a few
// variables (positive literal weighted; the negative side defaults to the
// complement), occasionally an explicit non-complementary pair.
inline WeightedCnf random_weighted_instance(uint32_t num_vars, uint32_t num_clauses,
                                            uint32_t num_weighted, uint32_t precision,
                                            Rng& rng) {
  CnfFormula f = random_3cnf(num_vars, num_clauses, rng);
  for (uint32_t i = 0; i < num_weighted && i < num_vars; ++i) {
    const Var v = i + 1;
    const uint64_t denom = 1ULL << precision;
    const uint64_t k = rng.below(denom - 1) + 1;  // in [1, 2^p - 1]
    f.comments.push_back("c p weight " + std::to_string(v) + " " +
                         std::to_string(static_cast<double>(k) / static_cast<double>(denom)) +
                         " 0");
    if (rng.coin()) {
      const uint64_t k2 = rng.below(denom - 1) + 1;
      f.comments.push_back("c p weight -" + std::to_string(v) + " " +
                           std::to_string(static_cast<double>(k2) / static_cast<double>(denom)) +
                           " 0");
    }
  }
  return WeightedCnf::from_formula(f, precision);
}

}  // namespace xormc::test
