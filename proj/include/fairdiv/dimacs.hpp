#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/cnf.hpp"
#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    std::size_t start = k;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k > start) out.push_back(line.substr(start, k - start));
  }
  return out;
}

inline long parse_int(std::string_view tok, const std::string& where) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw FormatError("expected an integer, got '" + std::string(tok) + "'", where);
  }
  return v;
}

struct DimacsBody {
  CnfFormula formula;
  std::vector<char> quantifier_kinds;          // 'a' or 'e', in file order
  std::vector<std::vector<long>> quantifiers;  // 1-based variables per line
};

// Shared reader. Quantifier lines ("a"/"e") are only accepted when
// `allow_prefix` is set and must come before the first clause.
inline DimacsBody read_dimacs(std::string_view text, bool allow_prefix) {
  DimacsBody body;
  std::optional<std::size_t> declared_clauses;
  std::vector<long> pending;
  bool in_clauses = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    auto toks = split_ws(raw);
    if (toks.empty() || toks[0].front() == 'c') continue;
    if (toks[0] == "p") {
      if (declared_clauses) throw FormatError("second header", where);
      if (toks.size() != 4 || toks[1] != "cnf") {
        throw FormatError("header must be 'p cnf <vars> <clauses>'", where);
      }
      const long v = parse_int(toks[2], where), c = parse_int(toks[3], where);
      if (v < 0 || c < 0) throw FormatError("negative count in header", where);
      body.formula.num_vars = static_cast<std::size_t>(v);
      declared_clauses = static_cast<std::size_t>(c);
      continue;
    }
    if (!declared_clauses) throw FormatError("content before the 'p cnf' header", where);
    if (toks[0] == "a" || toks[0] == "e") {
      if (!allow_prefix) throw FormatError("quantifier line in a plain CNF file", where);
      if (in_clauses) throw FormatError("quantifier line after the first clause", where);
      if (toks.back() != "0") throw FormatError("quantifier line must end with 0", where);
      std::vector<long> vars;
      for (std::size_t k = 1; k + 1 < toks.size(); ++k) {
        const long v = parse_int(toks[k], where);
        if (v <= 0 || static_cast<std::size_t>(v) > body.formula.num_vars) {
          throw FormatError("variable " + std::string(toks[k]) + " out of range", where);
        }
        vars.push_back(v);
      }
      body.quantifier_kinds.push_back(toks[0][0]);
      body.quantifiers.push_back(std::move(vars));
      continue;
    }
    in_clauses = true;
    for (auto tok : toks) {
      const long lit = parse_int(tok, where);
      if (lit == 0) {
        Clause clause;
        for (long l : pending) {
          clause.push_back(l > 0 ? Literal::pos(static_cast<std::size_t>(l - 1))
                                 : Literal::neg(static_cast<std::size_t>(-l - 1)));
        }
        body.formula.clauses.push_back(std::move(clause));
        pending.clear();
        continue;
      }
      const long var = lit < 0 ? -lit : lit;
      if (static_cast<std::size_t>(var) > body.formula.num_vars) {
        throw FormatError("literal " + std::string(tok) + " out of range", where);
      }
      pending.push_back(lit);
    }
  }
  if (!declared_clauses) throw FormatError("missing 'p cnf' header");
  if (!pending.empty()) throw FormatError("last clause is missing its 0 terminator");
  if (body.formula.clauses.size() != *declared_clauses) {
    throw FormatError("header declares " + std::to_string(*declared_clauses) + " clauses, found " +
                      std::to_string(body.formula.clauses.size()));
  }
  return body;
}

}  // namespace detail

/// Plain DIMACS CNF. Clause order and literal signs are kept as written.
inline CnfFormula parse_dimacs(std::string_view text) {
  return detail::read_dimacs(text, false).formula;
}

/// DIMACS with exactly one "a <vars> 0" line followed by one "e <vars> 0"
/// line before the clauses. Every declared variable must be quantified
/// exactly once.
inline AEFormula parse_ae_dimacs(std::string_view text) {
  auto body = detail::read_dimacs(text, true);
  if (body.quantifier_kinds.size() != 2 || body.quantifier_kinds[0] != 'a' ||
      body.quantifier_kinds[1] != 'e') {
    throw FormatError("expected one 'a' line followed by one 'e' line");
  }
  std::vector<int> seen(body.formula.num_vars, 0);
  std::vector<std::size_t> blocks[2];
  for (int b = 0; b < 2; ++b) {
    for (long v : body.quantifiers[b]) {
      if (seen[v - 1]++ != 0) {
        throw FormatError("variable " + std::to_string(v) + " quantified twice");
      }
      blocks[b].push_back(static_cast<std::size_t>(v - 1));
    }
  }
  for (std::size_t v = 0; v < seen.size(); ++v) {
    if (seen[v] == 0) throw FormatError("variable " + std::to_string(v + 1) + " is not quantified");
  }
  return AEFormula(std::move(blocks[0]), std::move(blocks[1]), std::move(body.formula));
}

inline std::string write_dimacs(const CnfFormula& formula) {
  std::string out = "p cnf " + std::to_string(formula.num_vars) + " " +
                    std::to_string(formula.clauses.size()) + "\n";
  for (const auto& clause : formula.clauses) {
    for (const auto& lit : clause) out += std::to_string(lit.dimacs()) + " ";
    out += "0\n";
  }
  return out;
}

inline std::string write_ae_dimacs(const AEFormula& formula) {
  std::string body = write_dimacs(formula.matrix());
  const auto header_end = body.find('\n') + 1;
  std::string prefix;
  for (const auto& [tag, vars] : {std::pair{'a', &formula.forall_vars()},
                                  std::pair{'e', &formula.exists_vars()}}) {
    prefix += tag;
    for (auto v : *vars) prefix += " " + std::to_string(v + 1);
    prefix += " 0\n";
  }
  body.insert(header_end, prefix);
  return body;
}

}  // namespace fairdiv
