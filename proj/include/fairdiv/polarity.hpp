#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fairdiv/cnf.hpp"
#include "fairdiv/errors.hpp"

namespace fairdiv {

template <class Formula>
struct Augmented {
  Formula formula;
  std::vector<Clause> added;
};

namespace detail {

inline std::vector<Clause> missing_polarity_clauses(const CnfFormula& f) {
  std::vector<Clause> added;
  for (std::size_t v = 0; v < f.num_vars; ++v) {
    if (f.occurrences(Literal::pos(v)) == 0 || f.occurrences(Literal::neg(v)) == 0) {
      added.push_back({Literal::pos(v), Literal::neg(v)});
    }
  }
  return added;
}

}  // namespace detail

/// Appends the tautology {x, -x} for every variable that does not occur in
/// both polarities. Satisfiability (and the forall-exists value) is unchanged.
inline Augmented<CnfFormula> augment_both_polarities(const CnfFormula& formula) {
  Augmented<CnfFormula> out{formula, detail::missing_polarity_clauses(formula)};
  out.formula.clauses.insert(out.formula.clauses.end(), out.added.begin(), out.added.end());
  return out;
}

inline Augmented<AEFormula> augment_both_polarities(const AEFormula& formula) {
  auto cnf = augment_both_polarities(formula.matrix());
  return {AEFormula(formula.forall_vars(), formula.exists_vars(), std::move(cnf.formula)),
          std::move(cnf.added)};
}

inline bool has_both_polarities(const CnfFormula& formula) {
  return detail::missing_polarity_clauses(formula).empty();
}

/// Clauses must be sets of at most three literals.
inline void require_3cnf(const CnfFormula& formula) {
  formula.validate();
  for (std::size_t c = 0; c < formula.clauses.size(); ++c) {
    auto lits = formula.clauses[c];
    if (lits.size() > 3) {
      throw FormatError("clause " + std::to_string(c + 1) + " has " +
                        std::to_string(lits.size()) + " literals, at most 3 allowed");
    }
    std::sort(lits.begin(), lits.end());
    if (std::adjacent_find(lits.begin(), lits.end()) != lits.end()) {
      throw FormatError("clause " + std::to_string(c + 1) + " repeats a literal");
    }
  }
}

}  // namespace fairdiv
