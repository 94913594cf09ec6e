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

#include <cassert>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xormc {

/// Variables are dense 1-based indices, DIMACS style.
using Var = uint32_t;

/// A literal packed as (var << 1) | negated, so watch lists and value lookups
/// can index arrays directly.
class Lit {
 public:
  Lit() = default;
  Lit(Var v, bool positive) : code_((v << 1) | (positive ? 0u : 1u)) {
    assert(v >= 1);
  }

  static Lit from_dimacs(int n) {
    assert(n != 0);
    return Lit(static_cast<Var>(n > 0 ? n : -n), n > 0);
  }
  int to_dimacs() const {
    const int v = static_cast<int>(var());
    return positive() ? v : -v;
  }

  Var var() const { return code_ >> 1; }
  bool positive() const { return (code_ & 1u) == 0; }
  Lit operator~() const {
    Lit l;
    l.code_ = code_ ^ 1u;
    return l;
  }
  uint32_t index() const { return code_; }

  auto operator<=>(const Lit&) const = default;

 private:
  uint32_t code_ = 0;
};

using Clause = std::vector<Lit>;

/// Total truth assignment over variables 1..num_vars.
class Witness {
 public:
  Witness() = default;
  explicit Witness(uint32_t num_vars) : values_(num_vars + 1, 0) {}

  uint32_t num_vars() const {
    return values_.empty() ? 0 : static_cast<uint32_t>(values_.size() - 1);
  }
  bool covers(Var v) const { return v >= 1 && v < values_.size(); }
  bool value(Var v) const {
    assert(covers(v));
    return values_[v] != 0;
  }
  void set(Var v, bool val) {
    assert(covers(v));
    values_[v] = val ? 1 : 0;
  }
  bool satisfies(Lit l) const { return value(l.var()) == l.positive(); }

  bool operator==(const Witness&) const = default;

 private:
  std::vector<uint8_t> values_;
};

/// Restriction of an assignment to a variable subset; literals are kept
/// sorted by variable so projections compare and hash structurally.
struct ProjectedWitness {
  std::vector<Lit> lits;

  bool satisfies_var(Var v, bool val) const;
  std::string to_dimacs_string() const;  // "1 -2 3 0"

  auto operator<=>(const ProjectedWitness&) const = default;
};

/// CNF formula: clauses over 1..num_vars, an optional sampling set collected
/// from `c ind ... 0` annotation lines, and preserved comment lines (weight
/// annotations among them; the weighted module consumes those).
///
/// Variables that appear in no clause still count as part of the support:
/// each one doubles the model count, matching DIMACS semantics. Immutable by
/// convention after construction, so instances can be shared across threads.
struct CnfFormula {
  uint32_t num_vars = 0;
  std::vector<Clause> clauses;
  std::optional<std::vector<Var>> sampling_set;  // sorted, deduplicated
  std::vector<std::string> comments;             // raw lines, without newline

  std::vector<Var> support() const {
    std::vector<Var> s(num_vars);
    for (uint32_t i = 0; i < num_vars; ++i) s[i] = i + 1;
    return s;
  }
  /// The sampling set if one was declared, the full support otherwise.
  std::vector<Var> sampling_or_support() const {
    return sampling_set ? *sampling_set : support();
  }
};

/// True iff every clause contains a satisfied literal. Throws if the witness
/// does not cover the formula's support.
bool evaluate(const CnfFormula& f, const Witness& w);

/// Restriction of w to S. Throws if S is not a subset of w's support.
ProjectedWitness project(const Witness& w, std::span<const Var> s);

/// Restriction of an already-projected witness to a smaller set.
ProjectedWitness project(const ProjectedWitness& w, std::span<const Var> s);

/// Set of distinct projections, kept sorted. Insertion of a duplicate is
/// reported (and ignored) rather than silently accepted.
class SolutionSet {
 public:
  SolutionSet() = default;
  explicit SolutionSet(std::vector<Var> projected_onto)
      : projected_onto_(std::move(projected_onto)) {}

  bool insert(ProjectedWitness w);
  bool contains(const ProjectedWitness& w) const;
  size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const ProjectedWitness& operator[](size_t i) const { return items_[i]; }
  const std::vector<ProjectedWitness>& items() const { return items_; }
  const std::vector<Var>& projected_onto() const { return projected_onto_; }

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  std::vector<ProjectedWitness> items_;  // sorted ascending
  std::vector<Var> projected_onto_;
};

/// Base class for the library's error conditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xormc
