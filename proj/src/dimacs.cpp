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

#include "xormc/dimacs.h"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace xormc {

namespace {

bool parse_int(const std::string& tok, long long& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  out = std::strtoll(tok.c_str(), &end, 10);
  return end != nullptr && *end == '\0';
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  std::set<Var> sampling;
  bool saw_sampling = false;
  bool saw_header = false;
  long long declared_clauses = 0;

  Clause current;
  bool in_clause = false;
  int clause_start_line = 0;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank line

    if (first == "c") {
      std::string kind;
      ls >> kind;
      if (kind == "ind") {
        // c ind v1 v2 ... 0
        std::string tok;
        bool terminated = false;
        while (ls >> tok) {
          long long v;
          if (!parse_int(tok, v)) throw ParseError("bad token in sampling-set line", line_no);
          if (v == 0) {
            terminated = true;
            break;
          }
          if (v < 0) throw ParseError("negative variable in sampling-set line", line_no);
          sampling.insert(static_cast<Var>(v));
          saw_sampling = true;
        }
        if (!terminated) throw ParseError("sampling-set line not 0-terminated", line_no);
      } else {
        f.comments.push_back(line);
      }
      continue;
    }

    if (first == "p") {
      if (saw_header) throw ParseError("duplicate header", line_no);
      std::string fmt;
      long long nv = -1, nc = -1;
      std::string nv_tok, nc_tok, extra;
      if (!(ls >> fmt >> nv_tok >> nc_tok) || fmt != "cnf" || !parse_int(nv_tok, nv) ||
          !parse_int(nc_tok, nc) || nv < 0 || nc < 0 || (ls >> extra)) {
        throw ParseError("malformed header (expected 'p cnf <vars> <clauses>')", line_no);
      }
      f.num_vars = static_cast<uint32_t>(nv);
      declared_clauses = nc;
      saw_header = true;
      continue;
    }

    // Clause literals; a clause may span lines, 0 terminates.
    if (!saw_header) throw ParseError("clause data before header", line_no);
    ls.clear();
    ls.seekg(0);
    std::string tok;
    while (ls >> tok) {
      long long v;
      if (!parse_int(tok, v)) throw ParseError("bad literal token '" + tok + "'", line_no);
      if (v == 0) {
        f.clauses.push_back(current);
        current.clear();
        in_clause = false;
        continue;
      }
      const Var var = static_cast<Var>(v > 0 ? v : -v);
      if (var > f.num_vars)
        throw ParseError("literal " + tok + " exceeds declared variable count", line_no);
      if (!in_clause) {
        in_clause = true;
        clause_start_line = line_no;
      }
      current.push_back(Lit::from_dimacs(static_cast<int>(v)));
    }
  }

  if (in_clause)
    throw ParseError("clause not 0-terminated", clause_start_line);
  if (!saw_header) throw ParseError("missing header", line_no == 0 ? 1 : line_no);
  (void)declared_clauses;  // header count is informational; actual clauses win

  if (saw_sampling) {
    for (const Var v : sampling) {
      if (v > f.num_vars)
        throw ParseError("sampling-set variable " + std::to_string(v) +
                             " exceeds declared variable count",
                         line_no);
    }
    f.sampling_set = std::vector<Var>(sampling.begin(), sampling.end());
  }
  return f;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

std::string emit_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  for (const auto& c : f.comments) out << c << '\n';
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  if (f.sampling_set) {
    // Chunked like other sampling-aware tools emit them.
    const auto& s = *f.sampling_set;
    for (size_t i = 0; i < s.size(); i += 10) {
      out << "c ind";
      for (size_t j = i; j < std::min(i + 10, s.size()); ++j) out << ' ' << s[j];
      out << " 0\n";
    }
    if (s.empty()) out << "c ind 0\n";
  }
  for (const Clause& c : f.clauses) {
    for (const Lit l : c) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

bool structurally_equal(const CnfFormula& a, const CnfFormula& b) {
  if (a.num_vars != b.num_vars || a.clauses != b.clauses) return false;
  if (a.sampling_set != b.sampling_set) return false;
  std::vector<std::string> ca = a.comments, cb = b.comments;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  return ca == cb;
}

}  // namespace xormc
