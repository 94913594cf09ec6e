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

#include "xormc/formula.h"

#include <algorithm>

namespace xormc {

bool ProjectedWitness::satisfies_var(Var v, bool val) const {
  for (const Lit l : lits) {
    if (l.var() == v) return l.positive() == val;
  }
  return false;
}

std::string ProjectedWitness::to_dimacs_string() const {
  std::string out;
  for (const Lit l : lits) {
    out += std::to_string(l.to_dimacs());
    out += ' ';
  }
  out += '0';
  return out;
}

bool evaluate(const CnfFormula& f, const Witness& w) {
  if (w.num_vars() < f.num_vars)
    throw Error("witness does not cover the formula's support");
  for (const Clause& c : f.clauses) {
    bool satisfied = false;
    for (const Lit l : c) {
      if (w.satisfies(l)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

ProjectedWitness project(const Witness& w, std::span<const Var> s) {
  ProjectedWitness out;
  out.lits.reserve(s.size());
  for (const Var v : s) {
    if (!w.covers(v)) throw Error("projection set is not a subset of the support");
    out.lits.emplace_back(v, w.value(v));
  }
  std::sort(out.lits.begin(), out.lits.end(),
            [](Lit a, Lit b) { return a.var() < b.var(); });
  return out;
}

ProjectedWitness project(const ProjectedWitness& w, std::span<const Var> s) {
  ProjectedWitness out;
  out.lits.reserve(s.size());
  for (const Var v : s) {
    bool found = false;
    for (const Lit l : w.lits) {
      if (l.var() == v) {
        out.lits.push_back(l);
        found = true;
        break;
      }
    }
    if (!found) throw Error("projection set is not a subset of the witness");
  }
  std::sort(out.lits.begin(), out.lits.end(),
            [](Lit a, Lit b) { return a.var() < b.var(); });
  return out;
}

bool SolutionSet::insert(ProjectedWitness w) {
  auto it = std::lower_bound(items_.begin(), items_.end(), w);
  if (it != items_.end() && *it == w) return false;
  items_.insert(it, std::move(w));
  return true;
}

bool SolutionSet::contains(const ProjectedWitness& w) const {
  return std::binary_search(items_.begin(), items_.end(), w);
}

}  // namespace xormc
