#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "fairdiv/cnf.hpp"
#include "fairdiv/search.hpp"
#include "fairdiv/utility.hpp"

// Exhaustive ground-truth checkers. None of them is meant to be fast in
// general; they exist to confirm the solver and the reductions on small
// inputs.

namespace fairdiv {

struct LeximinResult {
  Allocation allocation;
  UtilityVector utilities;
};

/// Tries every way of giving each resource to an agent or to nobody and keeps
/// the first leximin-best allocation found.
inline LeximinResult brute_force_leximin(const Instance& instance) {
  if (instance.kind() != UtilityKind::MaxAtomic) {
    throw WrongUtilityKind("brute_force_leximin needs a max-atomic instance");
  }
  const std::size_t n = instance.agent_count();
  const std::size_t m = instance.resource_count();
  constexpr double kMaxLeaves = 5e6;
  if (static_cast<double>(m) * std::log(static_cast<double>(n + 1)) > std::log(kMaxLeaves)) {
    throw SizeError("brute_force_leximin: (n+1)^m too large");
  }

  // digit[r] == n means unallocated.
  std::vector<std::size_t> digit(m, 0);
  auto decode = [&] {
    Allocation a(m);
    for (std::size_t r = 0; r < m; ++r) {
      if (digit[r] < n) a.assign(r, digit[r]);
    }
    return a;
  };
  LeximinResult best{decode(), {}};
  best.utilities = utility_vector(instance, best.allocation);
  for (;;) {
    std::size_t r = 0;
    while (r < m && ++digit[r] > n) digit[r++] = 0;
    if (r == m) break;
    auto alloc = decode();
    auto u = utility_vector(instance, alloc);
    if (leximin_compare(best.utilities, u) == LeximinOrdering::Less) {
      best = {std::move(alloc), std::move(u)};
    }
  }
  return best;
}

enum class DominanceSearchMode {
  /// Positive-coefficient placements only, propagation and slack bounds.
  Pruned,
  /// Plain (n+1)^m enumeration. Reference for the pruned mode.
  Exhaustive,
};

namespace detail {

inline void require_additive(const Instance& instance, const char* who) {
  if (instance.kind() != UtilityKind::Additive) {
    throw WrongUtilityKind(std::string(who) + " needs an additive instance");
  }
}

/// Depth-first search for an allocation that Pareto-dominates `baseline`.
///
/// Each resource goes to one of the agents with a positive coefficient for
/// it; a resource nobody values positively stays unallocated. Any dominating
/// allocation can be turned into one of that shape without losing
/// dominance, so nothing is missed.
///
/// slack_i = (utility so far) + (positive value still obtainable) - baseline_i.
/// A branch dies as soon as some slack is negative or no slack is positive.
/// At every node the unassigned resource with the fewest placements that keep
/// all slacks non-negative is branched on next.
class DominanceSearch {
 public:
  DominanceSearch(const Instance& instance, const Allocation& baseline, NodeCounter& counter)
      : instance_(instance), counter_(counter), m_(instance.resource_count()) {
    const std::size_t n = instance.agent_count();
    const auto base = utility_vector(instance, baseline);
    slack_.assign(n, Rational(0));
    candidates_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        const Rational& v = instance.value(i, r);
        if (sgn(v) > 0) {
          candidates_[r].push_back({i, v});
          slack_[i] += v;
        }
      }
      if (!candidates_[r].empty()) open_.push_back(r);
    }
    for (std::size_t i = 0; i < n; ++i) {
      slack_[i] -= base[i];
      if (sgn(slack_[i]) < 0) ++negative_;
      if (sgn(slack_[i]) > 0) ++positive_;
    }
    current_ = Allocation(m_);
  }

  /// Yes(witness), No, or Unknown when the counter ran out.
  TriVerdict<Allocation> run() {
    TriVerdict<Allocation> out;
    const std::uint64_t before = counter_.used();
    const bool found = descend();
    out.nodes = counter_.used() - before;
    if (found) {
      out.verdict = Verdict::Yes;
      out.witness = current_;
    } else {
      out.verdict = counter_.exhausted() ? Verdict::Unknown : Verdict::No;
    }
    return out;
  }

 private:
  struct Candidate {
    std::size_t agent;
    Rational value;
  };

  // Placements of `r` that keep every slack non-negative: if no candidate
  // is fragile (slack < value), all are viable; if exactly one is, only that
  // one (it keeps its value); with two or more, none.
  std::size_t viable(std::size_t r, std::vector<std::size_t>* out) const {
    std::size_t fragile = 0;
    std::size_t fragile_agent = 0;
    for (const auto& c : candidates_[r]) {
      if (slack_[c.agent] < c.value) {
        ++fragile;
        fragile_agent = c.agent;
      }
    }
    if (fragile >= 2) return 0;
    if (fragile == 1) {
      if (out) out->push_back(fragile_agent);
      return 1;
    }
    if (out) {
      for (const auto& c : candidates_[r]) out->push_back(c.agent);
    }
    return candidates_[r].size();
  }

  void adjust(std::size_t agent, const Rational& delta) {
    Rational& s = slack_[agent];
    const int before = sgn(s);
    s += delta;
    const int after = sgn(s);
    if (before == after) return;
    if (before < 0) --negative_;
    if (before > 0) --positive_;
    if (after < 0) ++negative_;
    if (after > 0) ++positive_;
  }

  void place(std::size_t r, std::size_t agent, bool undo) {
    for (const auto& c : candidates_[r]) {
      if (c.agent != agent) adjust(c.agent, undo ? c.value : Rational(-c.value));
    }
  }

  bool descend() {
    if (!counter_.tick()) return false;
    if (negative_ > 0 || positive_ == 0) return false;

    std::size_t best_pos = open_.size();
    std::size_t best_count = 0;
    for (std::size_t k = 0; k < open_.size(); ++k) {
      const std::size_t count = viable(open_[k], nullptr);
      if (count == 0) return false;
      if (best_pos == open_.size() || count < best_count) {
        best_pos = k;
        best_count = count;
        if (count == 1) break;
      }
    }
    if (best_pos == open_.size()) return true;  // every resource placed

    const std::size_t r = open_[best_pos];
    std::vector<std::size_t> agents;
    viable(r, &agents);
    open_[best_pos] = open_.back();
    open_.pop_back();
    for (std::size_t agent : agents) {
      place(r, agent, false);
      current_.assign(r, agent);
      if (descend()) return true;
      current_.release(r);
      place(r, agent, true);
      if (counter_.exhausted()) break;
    }
    open_.push_back(r);
    std::swap(open_[best_pos], open_.back());
    return false;
  }

  const Instance& instance_;
  NodeCounter& counter_;
  std::size_t m_;
  std::vector<std::vector<Candidate>> candidates_;
  std::vector<std::size_t> open_;  // resources not yet placed
  std::vector<Rational> slack_;
  std::size_t negative_ = 0;
  std::size_t positive_ = 0;
  Allocation current_;
};

inline TriVerdict<Allocation> exhaustive_dominance(const Instance& instance,
                                                   const Allocation& baseline,
                                                   NodeCounter& counter) {
  const std::size_t n = instance.agent_count();
  const std::size_t m = instance.resource_count();
  const auto base = utility_vector(instance, baseline);
  TriVerdict<Allocation> out;
  const std::uint64_t before = counter.used();
  std::vector<std::size_t> digit(m, 0);  // == n: unallocated
  for (;;) {
    if (!counter.tick()) {
      out.verdict = Verdict::Unknown;
      break;
    }
    Allocation a(m);
    for (std::size_t r = 0; r < m; ++r) {
      if (digit[r] < n) a.assign(r, digit[r]);
    }
    const auto u = utility_vector(instance, a);
    bool ok = true, strict = false;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (u[i] < base[i]) ok = false;
      if (u[i] > base[i]) strict = true;
    }
    if (ok && strict) {
      out.verdict = Verdict::Yes;
      out.witness = std::move(a);
      break;
    }
    std::size_t r = 0;
    while (r < m && ++digit[r] > n) digit[r++] = 0;
    if (r == m) {
      out.verdict = Verdict::No;
      break;
    }
  }
  out.nodes = counter.used() - before;
  return out;
}

inline TriVerdict<Allocation> find_dominating(const Instance& instance, const Allocation& baseline,
                                              NodeCounter& counter, DominanceSearchMode mode) {
  require_additive(instance, "dominance search");
  check_consistent(instance, baseline);
  if (mode == DominanceSearchMode::Exhaustive) {
    return exhaustive_dominance(instance, baseline, counter);
  }
  return DominanceSearch(instance, baseline, counter).run();
}

}  // namespace detail

/// Searches for an allocation that Pareto-dominates `baseline`.
/// Yes carries the dominating allocation; No means the search completed.
inline TriVerdict<Allocation> find_dominating_allocation(
    const Instance& instance, const Allocation& baseline, const SearchBudget& budget,
    DominanceSearchMode mode = DominanceSearchMode::Pruned) {
  detail::NodeCounter counter(budget);
  return detail::find_dominating(instance, baseline, counter, mode);
}

/// Yes: Pareto-optimal (search completed, no witness). No: dominated, the
/// witness is a dominating allocation. Unknown: budget exhausted.
inline TriVerdict<Allocation> is_pareto_optimal(
    const Instance& instance, const Allocation& alloc, const SearchBudget& budget,
    DominanceSearchMode mode = DominanceSearchMode::Pruned) {
  auto r = find_dominating_allocation(instance, alloc, budget, mode);
  if (r.verdict == Verdict::Yes) {
    r.verdict = Verdict::No;
  } else if (r.verdict == Verdict::No) {
    r.verdict = Verdict::Yes;
  }
  return r;
}

/// Searches for an envy-free, Pareto-optimal allocation.
///
/// Only allocations that could possibly be Pareto-optimal are enumerated:
/// a resource some agent values positively goes to such an agent; any other
/// resource stays unallocated or goes to an agent valuing it at exactly zero.
/// Each envy-free candidate is then certified with the pruned dominance
/// search, sharing one node budget.
inline TriVerdict<Allocation> brute_force_eef(const Instance& instance,
                                              const SearchBudget& budget) {
  detail::require_additive(instance, "brute_force_eef");
  const std::size_t n = instance.agent_count();
  const std::size_t m = instance.resource_count();
  constexpr std::size_t kNobody = static_cast<std::size_t>(-1);

  std::vector<std::vector<std::size_t>> options(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(instance.value(i, r)) > 0) options[r].push_back(i);
    }
    if (options[r].empty()) {
      options[r].push_back(kNobody);
      for (std::size_t i = 0; i < n; ++i) {
        if (sgn(instance.value(i, r)) == 0) options[r].push_back(i);
      }
    }
  }

  detail::NodeCounter counter(budget);
  TriVerdict<Allocation> out;
  Allocation current(m);
  bool undecided = false;

  auto leaf = [&]() -> bool {
    if (!is_envy_free(instance, current).envy_free()) return false;
    auto dom = detail::find_dominating(instance, current, counter, DominanceSearchMode::Pruned);
    if (dom.unknown()) undecided = true;
    return dom.no();
  };

  auto recurse = [&](auto&& self, std::size_t r) -> bool {
    if (!counter.tick()) return false;
    if (r == m) return leaf();
    for (std::size_t agent : options[r]) {
      if (agent == kNobody) {
        current.release(r);
      } else {
        current.assign(r, agent);
      }
      if (self(self, r + 1)) return true;
      if (counter.exhausted()) return false;
    }
    current.release(r);
    return false;
  };

  if (recurse(recurse, 0)) {
    out.verdict = Verdict::Yes;
    out.witness = current;
  } else if (counter.exhausted() || undecided) {
    out.verdict = Verdict::Unknown;
  } else {
    out.verdict = Verdict::No;
  }
  out.nodes = counter.used();
  return out;
}

/// Is the formula satisfiable on the partial assignment `s`? Yes carries a
/// full satisfying assignment extending `s` (the first in binary counting
/// order over the free variables).
inline TriVerdict<std::vector<bool>> sat_on_partial(const CnfFormula& formula,
                                                    const PartialAssignment& s) {
  formula.validate();
  if (s.values.size() != formula.num_vars) {
    throw ContractViolation("partial assignment covers " + std::to_string(s.values.size()) +
                            " variables, formula has " + std::to_string(formula.num_vars));
  }
  std::vector<std::size_t> free_vars;
  std::vector<bool> full(formula.num_vars, false);
  for (std::size_t v = 0; v < formula.num_vars; ++v) {
    if (s.values[v]) {
      full[v] = *s.values[v];
    } else {
      free_vars.push_back(v);
    }
  }
  constexpr std::size_t kMaxFree = 24;
  if (free_vars.size() > kMaxFree) {
    throw SizeError("sat_on_partial: " + std::to_string(free_vars.size()) +
                    " free variables exceed the enumeration limit");
  }
  TriVerdict<std::vector<bool>> out;
  const std::uint64_t total = std::uint64_t{1} << free_vars.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    ++out.nodes;
    for (std::size_t k = 0; k < free_vars.size(); ++k) full[free_vars[k]] = (mask >> k) & 1U;
    if (satisfies(formula, full)) {
      out.verdict = Verdict::Yes;
      out.witness = full;
      return out;
    }
  }
  out.verdict = Verdict::No;
  return out;
}

/// X_forall-assignment number `mask`: universal variable k gets bit k.
inline PartialAssignment x_forall_assignment(const AEFormula& f, std::uint64_t mask) {
  auto s = PartialAssignment::empty(f.num_vars());
  for (std::size_t k = 0; k < f.forall_vars().size(); ++k) {
    s.values[f.forall_vars()[k]] = ((mask >> k) & 1U) != 0;
  }
  return s;
}

/// True iff every assignment of the universal variables extends to a model.
inline bool ae3cnf_eval(const AEFormula& formula) {
  constexpr std::size_t kMaxUniversal = 20;
  if (formula.forall_vars().size() > kMaxUniversal) {
    throw SizeError("ae3cnf_eval: too many universal variables");
  }
  const std::uint64_t total = std::uint64_t{1} << formula.forall_vars().size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (sat_on_partial(formula.matrix(), x_forall_assignment(formula, mask)).no()) return false;
  }
  return true;
}

}  // namespace fairdiv
