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
#include <utility>
#include <vector>

#include "xormc/formula.h"

namespace xormc {

/// Answer of the independence check. When the set is not independent the
/// certificate holds two models that agree on the tested set yet differ on
/// some variable outside it.
struct SupportCertificate {
  bool independent = false;
  std::optional<std::pair<Witness, Witness>> witness_pair;
};

/// Decides whether I determines every model: builds
///   F(X) /\ F(X') /\ (v <-> v' for v in I) /\ (some v outside I differs)
/// over a primed copy X' (v' = v + numVars) and reports independent iff it is
/// unsatisfiable. A model of the copy yields the certificate pair.
SupportCertificate is_independent_support(const CnfFormula& f, std::span<const Var> i);

struct MinimizeOptions {
  /// Variables are dropped in this order; empty means the default order
  /// (descending occurrence count, ties by ascending index), which removes
  /// the busiest variables first to thin downstream XOR constraints.
  std::vector<Var> order;
  /// Conflict budget per independence check; an inconclusive check keeps the
  /// variable, so the result is a valid independent support even under
  /// timeouts (just possibly not minimal).
  uint64_t solve_budget = UINT64_MAX;
};

std::vector<Var> default_elimination_order(const CnfFormula& f, std::span<const Var> i0);

/// Deletion-based minimization: verifies that i0 is independent (throws
/// otherwise), then drops one variable at a time, keeping each drop that
/// preserves independence. The result is minimal: no single further deletion
/// passes the check (unless a budgeted check was inconclusive).
std::vector<Var> minimize_support(const CnfFormula& f, std::span<const Var> i0,
                                  const MinimizeOptions& options = {});

}  // namespace xormc
