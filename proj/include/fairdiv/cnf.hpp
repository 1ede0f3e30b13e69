#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"

namespace fairdiv {

/// Variable index (0-based) with a polarity.
struct Literal {
  std::size_t var = 0;
  bool negated = false;

  static Literal pos(std::size_t v) { return {v, false}; }
  static Literal neg(std::size_t v) { return {v, true}; }

  Literal operator~() const { return {var, !negated}; }

  /// DIMACS form: 1-based, sign = polarity.
  long dimacs() const {
    const long v = static_cast<long>(var) + 1;
    return negated ? -v : v;
  }

  /// Dense code 2*var + negated, for literal-indexed tables.
  std::size_t code() const { return 2 * var + (negated ? 1 : 0); }

  bool holds_under(bool value) const { return value != negated; }

  std::string name() const { return (negated ? "-x" : "x") + std::to_string(var + 1); }

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

/// Propositional formula in CNF over variables 0..num_vars-1.
struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;

  /// Throws ContractViolation on a literal outside the variable range.
  void validate() const {
    for (std::size_t c = 0; c < clauses.size(); ++c) {
      for (const auto& lit : clauses[c]) {
        if (lit.var >= num_vars) {
          throw ContractViolation("clause " + std::to_string(c) + " mentions variable " +
                                  std::to_string(lit.var + 1) + " of " +
                                  std::to_string(num_vars));
        }
      }
    }
  }

  /// Number of clauses in which `lit` occurs.
  std::size_t occurrences(const Literal& lit) const {
    return static_cast<std::size_t>(
        std::count_if(clauses.begin(), clauses.end(), [&](const Clause& c) {
          return std::find(c.begin(), c.end(), lit) != c.end();
        }));
  }

  std::size_t literal_count() const {
    std::size_t total = 0;
    for (const auto& c : clauses) total += c.size();
    return total;
  }

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// True iff every clause has a literal made true by `values`.
inline bool satisfies(const CnfFormula& formula, const std::vector<bool>& values) {
  for (const auto& clause : formula.clauses) {
    bool sat = false;
    for (const auto& lit : clause) {
      if (lit.holds_under(values[lit.var])) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

/// Forall-exists CNF: the universal and existential sets partition the
/// variables 0..num_vars-1 of `matrix`.
class AEFormula {
 public:
  AEFormula() = default;
  AEFormula(std::vector<std::size_t> forall_vars, std::vector<std::size_t> exists_vars,
            CnfFormula matrix)
      : forall_(std::move(forall_vars)), exists_(std::move(exists_vars)), matrix_(std::move(matrix)) {
    matrix_.validate();
    std::vector<int> seen(matrix_.num_vars, 0);
    auto mark = [&](const std::vector<std::size_t>& vars, const char* which) {
      for (auto v : vars) {
        if (v >= matrix_.num_vars) {
          throw ContractViolation(std::string(which) + " variable " + std::to_string(v + 1) +
                                  " out of range");
        }
        if (seen[v]++ != 0) {
          throw ContractViolation("variable " + std::to_string(v + 1) + " quantified twice");
        }
      }
    };
    mark(forall_, "universal");
    mark(exists_, "existential");
    for (std::size_t v = 0; v < seen.size(); ++v) {
      if (seen[v] == 0) {
        throw ContractViolation("variable " + std::to_string(v + 1) + " is not quantified");
      }
    }
  }

  const std::vector<std::size_t>& forall_vars() const noexcept { return forall_; }
  const std::vector<std::size_t>& exists_vars() const noexcept { return exists_; }
  const CnfFormula& matrix() const noexcept { return matrix_; }
  const std::vector<Clause>& clauses() const noexcept { return matrix_.clauses; }
  std::size_t num_vars() const noexcept { return matrix_.num_vars; }

  bool is_universal(std::size_t var) const {
    return std::find(forall_.begin(), forall_.end(), var) != forall_.end();
  }

  friend bool operator==(const AEFormula&, const AEFormula&) = default;

 private:
  std::vector<std::size_t> forall_;
  std::vector<std::size_t> exists_;
  CnfFormula matrix_;
};

/// Variable -> true / false / unassigned.
struct PartialAssignment {
  std::vector<std::optional<bool>> values;

  static PartialAssignment empty(std::size_t num_vars) {
    return {std::vector<std::optional<bool>>(num_vars)};
  }

  std::size_t unassigned_count() const {
    return static_cast<std::size_t>(std::count(values.begin(), values.end(), std::nullopt));
  }

  /// All universal variables assigned, all existential ones free.
  bool is_x_forall_assignment(const AEFormula& f) const {
    if (values.size() != f.num_vars()) return false;
    for (auto v : f.forall_vars()) {
      if (!values[v]) return false;
    }
    for (auto v : f.exists_vars()) {
      if (values[v]) return false;
    }
    return true;
  }

  /// Whether `full` agrees with every assigned variable.
  bool extended_by(const std::vector<bool>& full) const {
    if (full.size() != values.size()) return false;
    for (std::size_t v = 0; v < values.size(); ++v) {
      if (values[v] && *values[v] != full[v]) return false;
    }
    return true;
  }

  friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;
};

}  // namespace fairdiv
