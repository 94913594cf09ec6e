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

#include <istream>
#include <string>

#include "xormc/formula.h"

namespace xormc {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses DIMACS CNF. Recognized annotation lines:
///   c ind v1 v2 ... 0        sampling set; multiple lines union together
///   c p weight <lit> <w> 0   literal weight; preserved verbatim in comments
/// All other `c` lines are preserved as comments. Errors carry line numbers.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(const std::string& text);

/// Inverse of parse_dimacs up to structural equality.
std::string emit_dimacs(const CnfFormula& f);

/// Equality used by the round-trip guarantee: header counts and clause order
/// must match exactly; comments are compared as multisets.
bool structurally_equal(const CnfFormula& a, const CnfFormula& b);

}  // namespace xormc
