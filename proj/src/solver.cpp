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

#include "xormc/solver.h"

#include <algorithm>
#include <cassert>

namespace xormc {

bool xor_satisfied(const XorConstraint& x, const Witness& w) {
  bool acc = false;
  for (const Var v : x.vars) acc ^= w.value(v);
  return acc == x.parity;
}

namespace {

// Emits the forbidden-parity clauses of a piece XOR(lits) = parity,
// width <= 3. Every assignment whose XOR differs from `parity` gets one
// clause ruling it out.
void emit_piece(const std::vector<Var>& vars, bool parity, std::vector<Clause>& out) {
  const uint32_t w = static_cast<uint32_t>(vars.size());
  assert(w >= 1 && w <= 3);
  for (uint32_t mask = 0; mask < (1u << w); ++mask) {
    bool x = false;
    for (uint32_t i = 0; i < w; ++i) x ^= ((mask >> i) & 1u) != 0;
    if (x == parity) continue;  // allowed assignment
    Clause c;
    c.reserve(w);
    for (uint32_t i = 0; i < w; ++i) {
      const bool assigned_true = ((mask >> i) & 1u) != 0;
      c.emplace_back(vars[i], !assigned_true);
    }
    out.push_back(std::move(c));
  }
}

}  // namespace

XorEncoding encode_xor(const XorConstraint& x, Var fresh_var_start) {
  XorEncoding enc;
  if (x.vars.empty()) {
    if (x.parity) enc.clauses.push_back({});  // 0 = 1: unsatisfiable
    return enc;
  }
  std::vector<Var> pending(x.vars.begin(), x.vars.end());
  Var next_fresh = fresh_var_start;
  // Chain: replace the first two variables with a fresh t constrained by
  // v1 ^ v2 ^ t = 0 until at most 3 remain; the last piece carries the parity.
  while (pending.size() > 3) {
    const Var t = next_fresh++;
    enc.aux_vars.push_back(t);
    emit_piece({pending[0], pending[1], t}, false, enc.clauses);
    pending.erase(pending.begin(), pending.begin() + 2);
    pending.insert(pending.begin(), t);
  }
  emit_piece(pending, x.parity, enc.clauses);
  return enc;
}

Solver::Solver(const CnfFormula& f) : Solver(f, {}) {}

Solver::Solver(const CnfFormula& f, std::span<const XorConstraint> xors) {
  values_.resize(1, 0);
  level_.resize(1, 0);
  reason_.resize(1, kNoClause);
  seen_.resize(1, 0);
  watches_.resize(2);
  arena_.reserve(64 + 8 * f.clauses.size());
  while (num_vars_ < f.num_vars) new_var();
  for (const Clause& c : f.clauses) add_clause(c);
  for (const XorConstraint& x : xors) add_xor(x);
}

Var Solver::new_var() {
  ++num_vars_;
  values_.push_back(0);
  level_.push_back(0);
  reason_.push_back(kNoClause);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  return num_vars_;
}

void Solver::add_xor(const XorConstraint& x) {
  for ([[maybe_unused]] const Var v : x.vars) assert(v >= 1 && v <= num_vars_);
  const XorEncoding enc = encode_xor(x, num_vars_ + 1);
  for (size_t i = 0; i < enc.aux_vars.size(); ++i) new_var();
  for (const Clause& c : enc.clauses) add_clause(c);
}

Solver::ClauseRef Solver::alloc_clause(std::span<const Lit> lits) {
  const ClauseRef cref = static_cast<ClauseRef>(arena_.size());
  arena_.push_back(static_cast<uint32_t>(lits.size()));
  for (const Lit l : lits) arena_.push_back(l.index());
  return cref;
}

void Solver::attach_clause(ClauseRef cref) {
  const Lit* lits = clause_lits(cref);
  assert(clause_size(cref) >= 2);
  watches_[(~lits[0]).index()].push_back({cref, lits[1]});
  watches_[(~lits[1]).index()].push_back({cref, lits[0]});
}

bool Solver::add_clause(Clause lits) {
  if (!ok_) return false;
  assert(decision_level() == 0);
  std::sort(lits.begin(), lits.end());
  Clause filtered;
  filtered.reserve(lits.size());
  for (size_t i = 0; i < lits.size(); ++i) {
    const Lit l = lits[i];
    if (i + 1 < lits.size() && lits[i + 1] == ~l) return true;  // tautology
    if (i > 0 && l == lits[i - 1]) continue;                    // duplicate
    const int v = lit_value(l);
    if (v > 0) return true;  // satisfied at root
    if (v < 0) continue;     // false at root: drop
    filtered.push_back(l);
  }
  if (filtered.empty()) {
    ok_ = false;
    return false;
  }
  if (filtered.size() == 1) {
    enqueue(filtered[0], kNoClause);
    if (propagate() != kNoClause) ok_ = false;
    return ok_;
  }
  attach_clause(alloc_clause(filtered));
  return true;
}

void Solver::enqueue(Lit l, ClauseRef reason) {
  assert(lit_value(l) == 0);
  const Var v = l.var();
  values_[v] = l.positive() ? 1 : -1;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

Solver::ClauseRef Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    ++propagations_;
    std::vector<Watch>& ws = watches_[p.index()];
    size_t keep = 0;
    for (size_t i = 0; i < ws.size(); ++i) {
      const Watch w = ws[i];
      if (lit_value(w.blocker) > 0) {
        ws[keep++] = w;
        continue;
      }
      const ClauseRef cref = w.cref;
      Lit* lits = clause_lits(cref);
      const uint32_t size = clause_size(cref);
      // Ensure the false literal (~p) sits in slot 1.
      const Lit not_p = ~p;
      if (lits[0] == not_p) std::swap(lits[0], lits[1]);
      assert(lits[1] == not_p);
      if (lit_value(lits[0]) > 0) {
        ws[keep++] = {cref, lits[0]};
        continue;
      }
      bool moved = false;
      for (uint32_t k = 2; k < size; ++k) {
        if (lit_value(lits[k]) >= 0) {
          std::swap(lits[1], lits[k]);
          watches_[(~lits[1]).index()].push_back({cref, lits[0]});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      // Clause is unit or conflicting.
      ws[keep++] = {cref, lits[0]};
      if (lit_value(lits[0]) < 0) {
        // Conflict: keep remaining watches, reset queue to trail end.
        for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
        ws.resize(keep);
        qhead_ = static_cast<uint32_t>(trail_.size());
        return cref;
      }
      enqueue(lits[0], cref);
    }
    ws.resize(keep);
  }
  return kNoClause;
}

// First-UIP conflict analysis. out_learnt[0] is the asserting literal;
// out_btlevel the level to jump back to.
void Solver::analyze(ClauseRef conflict, Clause& out_learnt, uint32_t& out_btlevel) {
  out_learnt.clear();
  out_learnt.push_back(Lit());  // slot for the asserting literal
  uint32_t counter = 0;
  Lit p;
  bool have_p = false;
  ClauseRef reason = conflict;
  size_t trail_index = trail_.size();

  for (;;) {
    assert(reason != kNoClause);
    const Lit* lits = clause_lits(reason);
    const uint32_t size = clause_size(reason);
    for (uint32_t i = (have_p ? 1 : 0); i < size; ++i) {
      // Skip lits[0] of a reason clause: that is p itself.
      Lit q = lits[i];
      if (have_p && q == p) continue;
      const Var v = q.var();
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      if (level_[v] == decision_level()) {
        ++counter;
      } else {
        out_learnt.push_back(q);
      }
    }
    // Walk back on the trail to the next marked literal.
    while (!seen_[trail_[trail_index - 1].var()]) --trail_index;
    --trail_index;
    p = trail_[trail_index];
    have_p = true;
    seen_[p.var()] = 0;
    reason = reason_[p.var()];
    if (counter == 1) break;
    --counter;
  }
  out_learnt[0] = ~p;

  // Backtrack level: highest level among the remaining literals.
  out_btlevel = 0;
  size_t max_at = 1;
  for (size_t i = 1; i < out_learnt.size(); ++i) {
    const uint32_t lv = level_[out_learnt[i].var()];
    if (lv > out_btlevel) {
      out_btlevel = lv;
      max_at = i;
    }
  }
  if (out_learnt.size() > 1) std::swap(out_learnt[1], out_learnt[max_at]);
  for (size_t i = 1; i < out_learnt.size(); ++i) seen_[out_learnt[i].var()] = 0;
}

void Solver::backtrack(uint32_t level) {
  if (decision_level() <= level) return;
  const uint32_t target = trail_lim_[level];
  for (size_t i = trail_.size(); i-- > target;) {
    const Var v = trail_[i].var();
    values_[v] = 0;
    reason_[v] = kNoClause;
  }
  trail_.resize(target);
  trail_lim_.resize(level);
  qhead_ = target;
  decide_hint_ = 1;
}

SolveStatus Solver::search(std::span<const Lit> assumptions, uint64_t max_conflicts) {
  uint64_t conflicts_here = 0;
  uint64_t restart_limit = 128;
  Clause learnt;

  for (;;) {
    const ClauseRef conflict = propagate();
    if (conflict != kNoClause) {
      ++conflicts_;
      ++conflicts_here;
      if (decision_level() == 0) return SolveStatus::unsat;
      uint32_t btlevel = 0;
      analyze(conflict, learnt, btlevel);
      backtrack(btlevel);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoClause);
      } else {
        const ClauseRef cref = alloc_clause(learnt);
        attach_clause(cref);
        enqueue(learnt[0], cref);
      }
      if (conflicts_here >= max_conflicts) return SolveStatus::unknown;
      if (conflicts_here >= restart_limit) {
        restart_limit += restart_limit / 2 + 64;
        backtrack(0);
      }
      continue;
    }

    // Assumptions act as forced decisions on the first levels.
    if (decision_level() < assumptions.size()) {
      const Lit a = assumptions[decision_level()];
      const int v = lit_value(a);
      if (v < 0) return SolveStatus::unsat;  // assumption contradicted
      new_decision_level();
      if (v == 0) {
        enqueue(a, kNoClause);
      }
      continue;
    }

    // Static order: lowest-index unassigned variable, phase false.
    Var next = 0;
    for (Var v = decide_hint_; v <= num_vars_; ++v) {
      if (values_[v] == 0) {
        next = v;
        break;
      }
    }
    if (next == 0) return SolveStatus::sat;
    decide_hint_ = next;
    ++decisions_;
    new_decision_level();
    enqueue(Lit(next, false), kNoClause);
  }
}

SolveStatus Solver::solve_limited(std::span<const Lit> assumptions, uint64_t max_conflicts) {
  if (!ok_) return SolveStatus::unsat;
  for ([[maybe_unused]] const Lit a : assumptions) assert(a.var() >= 1 && a.var() <= num_vars_);
  const SolveStatus st = search(assumptions, max_conflicts);
  if (st == SolveStatus::sat) model_ = values_;
  backtrack(0);
  return st;
}

SolveResult Solver::solve(std::span<const Lit> assumptions) {
  SolveResult res;
  const SolveStatus st = solve_limited(assumptions, UINT64_MAX);
  assert(st != SolveStatus::unknown);
  if (st == SolveStatus::sat) {
    res.sat = true;
    res.witness = model(num_vars_);
  }
  return res;
}

Witness Solver::model(uint32_t up_to_vars) const {
  assert(up_to_vars <= num_vars_ && model_.size() > up_to_vars);
  Witness w(up_to_vars);
  for (Var v = 1; v <= up_to_vars; ++v) {
    assert(model_[v] != 0);
    w.set(v, model_[v] > 0);
  }
  return w;
}

SolutionSet bounded_enumerate(const CnfFormula& f, std::span<const XorConstraint> xors,
                              std::span<const Var> s, uint64_t cutoff) {
  assert(cutoff >= 1);
  std::vector<Var> proj(s.begin(), s.end());
  std::sort(proj.begin(), proj.end());
  for (const Var v : proj) {
    if (v < 1 || v > f.num_vars)
      throw Error("enumeration set is not a subset of the formula's support");
  }
  SolutionSet out(proj);
  Solver solver(f, xors);
  while (out.size() < cutoff) {
    const SolveResult res = solver.solve();
    if (!res.sat) break;
    ProjectedWitness pw = project(*res.witness, proj);
    Clause blocking;
    blocking.reserve(pw.lits.size());
    for (const Lit l : pw.lits) blocking.push_back(~l);
    const bool fresh = out.insert(std::move(pw));
    assert(fresh);
    (void)fresh;
    if (!solver.add_clause(std::move(blocking))) break;
  }
  return out;
}

}  // namespace xormc
