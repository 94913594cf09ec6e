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

namespace xormc {

/// Parity constraint over a set of variables: XOR of their values must equal
/// `parity`. An empty constraint with parity=true is unsatisfiable.
struct XorConstraint {
  std::vector<Var> vars;  // sorted, unique
  bool parity = false;
};

bool xor_satisfied(const XorConstraint& x, const Witness& w);

struct SolveResult {
  bool sat = false;
  std::optional<Witness> witness;  // present iff sat
};

enum class SolveStatus { sat, unsat, unknown };

/// CNF encoding of one XOR constraint: the parity chain is cut into pieces of
/// width at most 3 linked through fresh auxiliary variables, and each piece is
/// expanded into its forbidden-parity clauses. The encoding's solutions
/// projected onto the original variables are exactly the solutions of the
/// constraint, and each projection extends uniquely to the auxiliaries.
struct XorEncoding {
  std::vector<Clause> clauses;
  std::vector<Var> aux_vars;  // freshVarStart, freshVarStart+1, ...
};

XorEncoding encode_xor(const XorConstraint& x, Var fresh_var_start);

/// Conflict-driven clause-learning solver with two-watched-literal
/// propagation and geometric restarts. The decision heuristic is fixed:
/// lowest-index unassigned variable first, phase false, which makes every run
/// deterministic for identical input and call sequences.
///
/// An instance is single-threaded and stateful; distinct instances may run
/// concurrently. Clauses (including XOR encodings and blocking clauses) can
/// be added between solve calls; learnt clauses persist across calls, which
/// is sound because the clause set only ever grows.
class Solver {
 public:
  explicit Solver(const CnfFormula& f);
  Solver(const CnfFormula& f, std::span<const XorConstraint> xors);

  Var new_var();
  uint32_t num_vars() const { return num_vars_; }

  /// Adds a clause at the root level. Returns false once the instance is
  /// known unsatisfiable (immediately contradictory addition included).
  bool add_clause(Clause lits);
  void add_xor(const XorConstraint& x);

  bool ok() const { return ok_; }

  SolveResult solve(std::span<const Lit> assumptions = {});
  /// Budgeted variant: gives up with `unknown` after max_conflicts conflicts.
  SolveStatus solve_limited(std::span<const Lit> assumptions, uint64_t max_conflicts);

  /// Model restricted to variables 1..up_to_vars; valid after a sat result.
  Witness model(uint32_t up_to_vars) const;

  uint64_t decisions() const { return decisions_; }
  uint64_t conflicts() const { return conflicts_; }
  uint64_t propagations() const { return propagations_; }

 private:
  using ClauseRef = uint32_t;
  static constexpr ClauseRef kNoClause = UINT32_MAX;

  struct Watch {
    ClauseRef cref;
    Lit blocker;
  };

  int lit_value(Lit l) const {
    const int8_t v = values_[l.var()];
    return l.positive() ? v : -v;
  }
  uint32_t decision_level() const { return static_cast<uint32_t>(trail_lim_.size()); }

  ClauseRef alloc_clause(std::span<const Lit> lits);
  void attach_clause(ClauseRef cref);
  void enqueue(Lit l, ClauseRef reason);
  ClauseRef propagate();
  void analyze(ClauseRef conflict, Clause& out_learnt, uint32_t& out_btlevel);
  void backtrack(uint32_t level);
  void new_decision_level() { trail_lim_.push_back(static_cast<uint32_t>(trail_.size())); }
  SolveStatus search(std::span<const Lit> assumptions, uint64_t max_conflicts);

  uint32_t clause_size(ClauseRef c) const { return arena_[c]; }
  Lit* clause_lits(ClauseRef c) { return reinterpret_cast<Lit*>(&arena_[c + 1]); }
  const Lit* clause_lits(ClauseRef c) const {
    return reinterpret_cast<const Lit*>(&arena_[c + 1]);
  }

  uint32_t num_vars_ = 0;
  bool ok_ = true;
  std::vector<uint32_t> arena_;
  std::vector<std::vector<Watch>> watches_;  // indexed by Lit::index()
  std::vector<int8_t> values_;               // per var: 0 undef, 1 true, -1 false
  std::vector<uint32_t> level_;
  std::vector<ClauseRef> reason_;
  std::vector<Lit> trail_;
  std::vector<uint32_t> trail_lim_;
  uint32_t qhead_ = 0;
  std::vector<uint8_t> seen_;   // analyze scratch
  std::vector<int8_t> model_;   // last satisfying assignment
  Var decide_hint_ = 1;

  uint64_t decisions_ = 0;
  uint64_t conflicts_ = 0;
  uint64_t propagations_ = 0;
};

/// Enumerates distinct projections of the solutions of F /\ xors onto S, up
/// to `cutoff` of them, by iterated solving with blocking clauses expressed
/// over S only. A result smaller than the cutoff is the exact projected count
/// of the cell. S must lie inside F's support (never inside XOR auxiliaries).
SolutionSet bounded_enumerate(const CnfFormula& f, std::span<const XorConstraint> xors,
                              std::span<const Var> s, uint64_t cutoff);

}  // namespace xormc
