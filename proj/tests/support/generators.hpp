#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "fairdiv/cnf.hpp"
#include "fairdiv/instance.hpp"

namespace fairdiv::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// n x m matrix of integers in [lo, hi].
inline Instance random_instance(Rng& rng, UtilityKind kind, std::size_t n, std::size_t m, long lo,
                                long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(m));
  for (auto& row : matrix) {
    for (auto& v : row) v = dist(rng);
  }
  return Instance::with_default_ids(kind, std::move(matrix));
}

/// Entries p/q with p in [0, 20], q in [1, 6]; exercises non-integer values.
inline Instance random_rational_instance(Rng& rng, UtilityKind kind, std::size_t n, std::size_t m) {
  std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(m));
  for (auto& row : matrix) {
    for (auto& v : row) {
      v = Rational(static_cast<long>(uniform(rng, 0, 20)), static_cast<long>(uniform(rng, 1, 6)));
      v.canonicalize();
    }
  }
  return Instance::with_default_ids(kind, std::move(matrix));
}

inline Allocation random_allocation(Rng& rng, std::size_t n, std::size_t m) {
  Allocation a(m);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t pick = uniform(rng, 0, n);
    if (pick < n) a.assign(r, pick);
  }
  return a;
}

/// Clause of 1..max_len distinct literals (complementary pairs allowed).
inline Clause random_clause(Rng& rng, std::size_t num_vars, std::size_t max_len) {
  const std::size_t len = uniform(rng, 1, std::min(max_len, 2 * num_vars));
  Clause c;
  while (c.size() < len) {
    Literal l{uniform(rng, 0, num_vars - 1), uniform(rng, 0, 1) == 1};
    if (std::find(c.begin(), c.end(), l) == c.end()) c.push_back(l);
  }
  return c;
}

inline CnfFormula random_3cnf(Rng& rng, std::size_t max_vars, std::size_t max_clauses) {
  CnfFormula f;
  f.num_vars = uniform(rng, 1, max_vars);
  const std::size_t nc = uniform(rng, 0, max_clauses);
  for (std::size_t c = 0; c < nc; ++c) f.clauses.push_back(random_clause(rng, f.num_vars, 3));
  return f;
}

/// |forall| <= max_forall, |exists| <= max_exists, at least one variable,
/// variables shuffled between the blocks.
inline AEFormula random_ae(Rng& rng, std::size_t max_forall, std::size_t max_exists,
                           std::size_t max_clauses) {
  std::size_t nf = 0, ne = 0;
  do {
    nf = uniform(rng, 0, max_forall);
    ne = uniform(rng, 0, max_exists);
  } while (nf + ne == 0);
  std::vector<std::size_t> vars(nf + ne);
  for (std::size_t v = 0; v < vars.size(); ++v) vars[v] = v;
  std::shuffle(vars.begin(), vars.end(), rng);
  CnfFormula matrix;
  matrix.num_vars = nf + ne;
  const std::size_t nc = uniform(rng, 0, max_clauses);
  for (std::size_t c = 0; c < nc; ++c) matrix.clauses.push_back(random_clause(rng, nf + ne, 3));
  std::vector<std::size_t> forall(vars.begin(), vars.begin() + static_cast<long>(nf));
  std::vector<std::size_t> exists(vars.begin() + static_cast<long>(nf), vars.end());
  std::sort(forall.begin(), forall.end());
  std::sort(exists.begin(), exists.end());
  return AEFormula(std::move(forall), std::move(exists), std::move(matrix));
}

/// Every clause over `num_vars` variables: each non-empty set of at most
/// three literals, in a fixed order.
inline std::vector<Clause> all_clauses(std::size_t num_vars) {
  const std::size_t lits = 2 * num_vars;
  std::vector<Clause> out;
  for (std::uint32_t mask = 1; mask < (1U << lits); ++mask) {
    if (std::popcount(mask) > 3) continue;
    Clause c;
    for (std::size_t k = 0; k < lits; ++k) {
      if ((mask >> k) & 1U) c.push_back(Literal{k / 2, k % 2 == 1});
    }
    out.push_back(std::move(c));
  }
  return out;
}

/// All formulas over exactly 1..max_vars variables with at most two clauses,
/// clauses taken as an unordered multiset.
inline std::vector<CnfFormula> canonical_formulas(std::size_t max_vars) {
  std::vector<CnfFormula> out;
  for (std::size_t w = 1; w <= max_vars; ++w) {
    const auto clauses = all_clauses(w);
    out.push_back({w, {}});
    for (std::size_t a = 0; a < clauses.size(); ++a) {
      out.push_back({w, {clauses[a]}});
      for (std::size_t b = a; b < clauses.size(); ++b) out.push_back({w, {clauses[a], clauses[b]}});
    }
  }
  return out;
}

}  // namespace fairdiv::testing
