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

#include "xormc/indsupport.h"

#include <algorithm>

#include "xormc/solver.h"

namespace xormc {

namespace {

// The doubled formula: F over X, a primed copy over X' (v' = v + n),
// equalities on I, and per-variable difference selectors d_v for v outside I
// with (d_v -> v xor v') plus a clause requiring some selector. Satisfiable
// iff two models agree on I but differ elsewhere.
CnfFormula build_independence_query(const CnfFormula& f, std::span<const Var> i) {
  const uint32_t n = f.num_vars;
  std::vector<uint8_t> in_i(n + 1, 0);
  for (const Var v : i) {
    if (v < 1 || v > n) throw Error("candidate support is not a subset of the support");
    in_i[v] = 1;
  }

  CnfFormula q;
  q.clauses.reserve(2 * f.clauses.size() + 3 * n + 1);
  for (const Clause& c : f.clauses) q.clauses.push_back(c);
  for (const Clause& c : f.clauses) {
    Clause shifted;
    shifted.reserve(c.size());
    for (const Lit l : c) shifted.emplace_back(l.var() + n, l.positive());
    q.clauses.push_back(std::move(shifted));
  }

  uint32_t next_var = 2 * n;
  Clause some_difference;
  for (Var v = 1; v <= n; ++v) {
    const Var vp = v + n;
    if (in_i[v]) {
      q.clauses.push_back({Lit(v, false), Lit(vp, true)});
      q.clauses.push_back({Lit(v, true), Lit(vp, false)});
    } else {
      const Var d = ++next_var;
      q.clauses.push_back({Lit(d, false), Lit(v, true), Lit(vp, true)});
      q.clauses.push_back({Lit(d, false), Lit(v, false), Lit(vp, false)});
      some_difference.emplace_back(d, true);
    }
  }
  q.clauses.push_back(std::move(some_difference));
  q.num_vars = next_var;
  return q;
}

struct CheckResult {
  SolveStatus status;
  std::optional<std::pair<Witness, Witness>> pair;
};

CheckResult check_independence(const CnfFormula& f, std::span<const Var> i,
                               uint64_t budget) {
  // A candidate covering the full support is trivially independent (the
  // difference clause would be empty).
  std::vector<uint8_t> in_i(f.num_vars + 1, 0);
  size_t covered = 0;
  for (const Var v : i) {
    if (v < 1 || v > f.num_vars)
      throw Error("candidate support is not a subset of the support");
    if (!in_i[v]) {
      in_i[v] = 1;
      ++covered;
    }
  }
  if (covered == f.num_vars) return {SolveStatus::unsat, std::nullopt};

  const CnfFormula q = build_independence_query(f, i);
  Solver solver(q);
  const SolveStatus st = solver.solve_limited({}, budget);
  CheckResult out{st, std::nullopt};
  if (st == SolveStatus::sat) {
    const Witness full = solver.model(q.num_vars);
    Witness a(f.num_vars), b(f.num_vars);
    for (Var v = 1; v <= f.num_vars; ++v) {
      a.set(v, full.value(v));
      b.set(v, full.value(v + f.num_vars));
    }
    out.pair = std::make_pair(std::move(a), std::move(b));
  }
  return out;
}

}  // namespace

SupportCertificate is_independent_support(const CnfFormula& f, std::span<const Var> i) {
  const CheckResult r = check_independence(f, i, UINT64_MAX);
  SupportCertificate cert;
  cert.independent = (r.status == SolveStatus::unsat);
  cert.witness_pair = r.pair;
  return cert;
}

std::vector<Var> default_elimination_order(const CnfFormula& f, std::span<const Var> i0) {
  std::vector<uint64_t> occurrences(f.num_vars + 1, 0);
  for (const Clause& c : f.clauses) {
    for (const Lit l : c) ++occurrences[l.var()];
  }
  std::vector<Var> order(i0.begin(), i0.end());
  std::stable_sort(order.begin(), order.end(), [&](Var a, Var b) {
    if (occurrences[a] != occurrences[b]) return occurrences[a] > occurrences[b];
    return a < b;
  });
  return order;
}

std::vector<Var> minimize_support(const CnfFormula& f, std::span<const Var> i0,
                                  const MinimizeOptions& options) {
  if (!is_independent_support(f, i0).independent)
    throw Error("initial set is not an independent support");

  std::vector<Var> order = options.order.empty()
                               ? default_elimination_order(f, i0)
                               : options.order;
  std::vector<Var> current(i0.begin(), i0.end());
  std::sort(current.begin(), current.end());
  current.erase(std::unique(current.begin(), current.end()), current.end());

  for (const Var v : order) {
    const auto it = std::find(current.begin(), current.end(), v);
    if (it == current.end()) continue;
    std::vector<Var> candidate = current;
    candidate.erase(candidate.begin() + (it - current.begin()));
    const CheckResult r = check_independence(f, candidate, options.solve_budget);
    if (r.status == SolveStatus::unsat) current = std::move(candidate);
    // sat or unknown: the variable stays.
  }
  return current;
}

}  // namespace xormc
