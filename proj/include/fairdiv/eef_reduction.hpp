#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fairdiv/cnf.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/oracles.hpp"
#include "fairdiv/polarity.hpp"
#include "fairdiv/reduction_map.hpp"

namespace fairdiv {

inline constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);

/// Where each role of the forall-exists construction sits in the instance.
/// Entries that do not apply (a helper for an existential literal, an
/// envy-protection agent for an existential occurrence) hold kNoIndex.
struct EefLayout {
  std::vector<std::size_t> set_agent;                        // per literal code
  std::vector<std::size_t> helper_agent;                     // per literal code
  std::vector<std::size_t> clause_agent;                     // per clause
  std::vector<std::vector<std::size_t>> protection_agent;    // [clause][position]
  std::size_t unassigned_agent = 0;
  std::size_t unassigned_protection_agent = 0;
  std::size_t satisfied_agent = 0;

  std::vector<std::size_t> variable_resource;                // per variable
  std::vector<std::size_t> variable_compensation;            // per variable
  std::vector<std::size_t> helper_resource;                  // per literal code
  std::vector<std::size_t> clause_resource;                  // per clause
  std::vector<std::size_t> clause_compensation;              // per clause
  std::vector<std::vector<std::size_t>> literal_resource;    // [clause][position]
  std::vector<std::vector<std::size_t>> protection_resource; // [clause][position]
  std::size_t satisfied_resource = 0;
  std::size_t envy1_resource = 0;
  std::size_t envy2_resource = 0;
};

/// Additive instance that admits an envy-free Pareto-optimal allocation iff
/// the forall-exists formula is false.
struct EefReduction {
  AEFormula formula;
  Instance instance;
  ReductionMap map;
  Rational big_m;
  EefLayout layout;
};

struct EefReductionOptions {
  /// Scales the derived big-M. Used to check that verdicts do not depend on
  /// the particular value of M.
  unsigned long big_m_multiplier = 1;
};

/// Builds the instance. The formula must have every variable in both
/// polarities (see augment_both_polarities) and clauses of at most three
/// distinct literals.
///
/// M is derived from the instance: multiplier * (1 + sum of |a| over all
/// coefficients that are neither M nor M - 1).
inline EefReduction reduce_ae3cnf_to_eef(const AEFormula& formula,
                                         EefReductionOptions options = {}) {
  const CnfFormula& cnf = formula.matrix();
  require_3cnf(cnf);
  if (!has_both_polarities(cnf)) {
    throw PreconditionError("every variable must occur in both polarities");
  }
  if (options.big_m_multiplier == 0) throw ContractViolation("big-M multiplier must be positive");

  const std::size_t nv = formula.num_vars();
  const std::size_t nc = cnf.clauses.size();
  const auto& clauses = cnf.clauses;

  std::vector<std::string> agents, resources;
  ReductionMap map;
  EefLayout at;
  at.set_agent.assign(2 * nv, kNoIndex);
  at.helper_agent.assign(2 * nv, kNoIndex);
  at.variable_resource.assign(nv, kNoIndex);
  at.variable_compensation.assign(nv, kNoIndex);
  at.helper_resource.assign(2 * nv, kNoIndex);

  auto add_agent = [&](std::string id, AgentRole role, FormulaLink link) {
    agents.push_back(std::move(id));
    map.agents.push_back({role, std::move(link)});
    return agents.size() - 1;
  };
  auto add_resource = [&](std::string id, ResourceRole role, FormulaLink link) {
    resources.push_back(std::move(id));
    map.resources.push_back({role, std::move(link)});
    return resources.size() - 1;
  };
  auto clause_name = [](std::size_t c) { return "c" + std::to_string(c + 1); };

  for (std::size_t v : formula.forall_vars()) {
    for (const Literal l : {Literal::pos(v), Literal::neg(v)}) {
      at.set_agent[l.code()] =
          add_agent("a_set(" + l.name() + ")", AgentRole::UniversalAssignment, {{}, l, v});
    }
    for (const Literal l : {Literal::pos(v), Literal::neg(v)}) {
      at.helper_agent[l.code()] =
          add_agent("a_helper(" + l.name() + ")", AgentRole::UniversalHelper, {{}, l, v});
    }
  }
  for (std::size_t v : formula.exists_vars()) {
    for (const Literal l : {Literal::pos(v), Literal::neg(v)}) {
      at.set_agent[l.code()] =
          add_agent("a_set(" + l.name() + ")", AgentRole::ExistentialAssignment, {{}, l, v});
    }
  }
  for (std::size_t c = 0; c < nc; ++c) {
    at.clause_agent.push_back(add_agent("a_" + clause_name(c), AgentRole::Clause, {c, {}, {}}));
  }
  at.protection_agent.resize(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    for (const Literal& l : clauses[c]) {
      at.protection_agent[c].push_back(
          formula.is_universal(l.var)
              ? add_agent("a_ep(" + clause_name(c) + "," + l.name() + ")",
                          AgentRole::UniversalLiteralEnvyProtection, {c, l, l.var})
              : kNoIndex);
    }
  }
  at.unassigned_agent = add_agent("a_unassigned", AgentRole::Unassigned, {});
  at.unassigned_protection_agent =
      add_agent("a_unassigned_ep", AgentRole::UnassignedEnvyProtection, {});
  at.satisfied_agent = add_agent("a_satisfied", AgentRole::Satisfied, {});

  for (std::size_t v : formula.forall_vars()) {
    const std::string x = Literal::pos(v).name();
    at.variable_resource[v] =
        add_resource("o_" + x, ResourceRole::UniversalVariable, {{}, {}, v});
    at.variable_compensation[v] =
        add_resource("o_comp(" + x + ")", ResourceRole::UniversalVariableCompensation, {{}, {}, v});
    for (const Literal l : {Literal::pos(v), Literal::neg(v)}) {
      at.helper_resource[l.code()] =
          add_resource("o_helper(" + l.name() + ")", ResourceRole::UniversalHelper, {{}, l, v});
    }
  }
  for (std::size_t v : formula.exists_vars()) {
    at.variable_resource[v] = add_resource("o_" + Literal::pos(v).name(),
                                           ResourceRole::ExistentialVariable, {{}, {}, v});
  }
  for (std::size_t c = 0; c < nc; ++c) {
    at.clause_resource.push_back(
        add_resource("o_" + clause_name(c), ResourceRole::Clause, {c, {}, {}}));
    at.clause_compensation.push_back(add_resource("o_comp(" + clause_name(c) + ")",
                                                  ResourceRole::ClauseCompensation, {c, {}, {}}));
  }
  at.literal_resource.resize(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    for (const Literal& l : clauses[c]) {
      at.literal_resource[c].push_back(add_resource(
          "o_" + clause_name(c) + "," + l.name(),
          formula.is_universal(l.var) ? ResourceRole::UniversalLiteral
                                      : ResourceRole::ExistentialLiteral,
          {c, l, l.var}));
    }
  }
  at.protection_resource.resize(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    for (const Literal& l : clauses[c]) {
      at.protection_resource[c].push_back(
          formula.is_universal(l.var)
              ? add_resource("o_ep(" + clause_name(c) + "," + l.name() + ")",
                             ResourceRole::UniversalLiteralEnvyProtection, {c, l, l.var})
              : kNoIndex);
    }
  }
  at.satisfied_resource = add_resource("o_satisfied", ResourceRole::Satisfied, {});
  at.envy1_resource = add_resource("o_envy1", ResourceRole::Envy1, {});
  at.envy2_resource = add_resource("o_envy2", ResourceRole::Envy2, {});

  // Coefficients. Entries equal to M or M - 1 are recorded separately and
  // filled in once M is known.
  std::vector<std::vector<Rational>> alpha(agents.size(), std::vector<Rational>(resources.size()));
  struct BigEntry {
    std::size_t agent, resource;
    long offset;  // M + offset
  };
  std::vector<BigEntry> big;
  auto count = [&](const Literal& l) { return static_cast<unsigned long>(cnf.occurrences(l)); };

  for (std::size_t c = 0; c < nc; ++c) {
    big.push_back({at.clause_agent[c], at.clause_resource[c], 0});
    alpha[at.satisfied_agent][at.clause_resource[c]] = 1;
    for (std::size_t k = 0; k < clauses[c].size(); ++k) {
      if (at.protection_agent[c][k] != kNoIndex) {
        big.push_back({at.protection_agent[c][k], at.clause_resource[c], 0});
      }
    }
    big.push_back({at.clause_agent[c], at.clause_compensation[c], -1});
    alpha[at.unassigned_agent][at.clause_compensation[c]] = 1;

    for (std::size_t k = 0; k < clauses[c].size(); ++k) {
      const Literal& l = clauses[c][k];
      const std::size_t o = at.literal_resource[c][k];
      alpha[at.clause_agent[c]][o] = 1;
      if (formula.is_universal(l.var)) {
        alpha[at.helper_agent[l.code()]][o] = 1;
        alpha[at.protection_agent[c][k]][o] = 1;
        big.push_back({at.protection_agent[c][k], at.protection_resource[c][k], 0});
      } else {
        alpha[at.set_agent[l.code()]][o] = 1;
      }
    }
  }
  for (std::size_t v : formula.forall_vars()) {
    const Literal x = Literal::pos(v), nx = Literal::neg(v);
    for (const Literal l : {x, nx}) {
      alpha[at.set_agent[l.code()]][at.variable_resource[v]] = 1;
      alpha[at.set_agent[l.code()]][at.variable_compensation[v]] = 1;
      const std::size_t h = at.helper_resource[l.code()];
      alpha[at.helper_agent[l.code()]][h] = count(l);
      alpha[at.set_agent[l.code()]][h] = 1;
      alpha[at.set_agent[(~l).code()]][h] = 1;
    }
    alpha[at.unassigned_agent][at.variable_compensation[v]] = 1;
  }
  for (std::size_t v : formula.exists_vars()) {
    for (const Literal l : {Literal::pos(v), Literal::neg(v)}) {
      alpha[at.set_agent[l.code()]][at.variable_resource[v]] = count(l);
    }
    alpha[at.unassigned_agent][at.variable_resource[v]] = 1;
  }
  const unsigned long k_total = formula.exists_vars().size() + formula.forall_vars().size() + nc;
  alpha[at.unassigned_agent][at.satisfied_resource] = k_total + 1;
  alpha[at.satisfied_agent][at.satisfied_resource] = static_cast<unsigned long>(nc);
  alpha[at.unassigned_agent][at.envy1_resource] = 2 * (k_total + 1);
  alpha[at.satisfied_agent][at.envy1_resource] = Rational(1, 2);
  alpha[at.unassigned_agent][at.envy2_resource] = 2 * (k_total + 1) + k_total;
  big.push_back({at.unassigned_protection_agent, at.envy2_resource, 0});

  Rational small_sum = 0;
  for (const auto& row : alpha) {
    for (const auto& v : row) small_sum += abs(v);
  }
  Rational big_m = (small_sum + 1) * options.big_m_multiplier;
  for (const auto& e : big) alpha[e.agent][e.resource] = big_m + e.offset;

  return EefReduction{
      formula,
      Instance(std::move(agents), std::move(resources), UtilityKind::Additive, std::move(alpha)),
      std::move(map), std::move(big_m), std::move(at)};
}

/// Free choices left open when building an X_forall-allocation.
struct XForallChoices {
  /// Per universal variable (in forall order): o_x goes to a_set(-x) instead
  /// of a_set(x).
  std::vector<bool> negative_holder;
  /// [clause][position]: a universal literal resource whose literal is false
  /// under s goes to its envy-protection agent instead of its helper agent.
  /// Ignored for existential occurrences and for literals true under s.
  std::vector<std::vector<bool>> to_protection;

  /// All-false: the lower agent index at every choice point.
  static XForallChoices defaults(const EefReduction& red) {
    XForallChoices ch;
    ch.negative_holder.assign(red.formula.forall_vars().size(), false);
    for (const auto& clause : red.formula.clauses()) ch.to_protection.emplace_back(clause.size(), false);
    return ch;
  }

  friend bool operator==(const XForallChoices&, const XForallChoices&) = default;
};

namespace detail {

inline void require_x_forall(const EefReduction& red, const PartialAssignment& s) {
  if (!s.is_x_forall_assignment(red.formula)) {
    throw PreconditionError("not an X_forall-assignment (universal variables must be set, "
                            "existential ones free)");
  }
}

inline Literal true_literal(std::size_t var, bool value) {
  return value ? Literal::pos(var) : Literal::neg(var);
}

}  // namespace detail

/// Every choice vector that matters for `s`: one flag per universal variable
/// and one per universal literal occurrence that is false under `s`. All
/// other flags stay false.
inline std::vector<XForallChoices> enumerate_x_forall_choices(const EefReduction& red,
                                                              const PartialAssignment& s) {
  detail::require_x_forall(red, s);
  const auto& clauses = red.formula.clauses();
  std::vector<std::pair<std::size_t, std::size_t>> free_literals;
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    for (std::size_t k = 0; k < clauses[c].size(); ++k) {
      const Literal& l = clauses[c][k];
      if (red.formula.is_universal(l.var) && !l.holds_under(*s.values[l.var])) {
        free_literals.emplace_back(c, k);
      }
    }
  }
  const std::size_t nu = red.formula.forall_vars().size();
  const std::size_t bits = nu + free_literals.size();
  if (bits > 20) throw SizeError("too many X_forall choice flags to enumerate");
  std::vector<XForallChoices> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    auto ch = XForallChoices::defaults(red);
    for (std::size_t k = 0; k < nu; ++k) ch.negative_holder[k] = (mask >> k) & 1U;
    for (std::size_t k = 0; k < free_literals.size(); ++k) {
      ch.to_protection[free_literals[k].first][free_literals[k].second] = (mask >> (nu + k)) & 1U;
    }
    out.push_back(std::move(ch));
  }
  return out;
}

/// The X_forall-allocation of `s`:
///  1. o_c to a_c.
///  2. existential literal resources to a_set(l).
///  3. o_x to a_set(x) or a_set(-x) (choice); with t the literal true under
///     s and f the false one, o_helper(t) goes to the other assignment agent
///     and o_helper(f) to a_helper(f).
///  4. envy-protection resources to their agents.
///  5. existential variable resources, clause and universal compensation
///     resources and o_envy1 to a_unassigned.
///  6. o_envy2 to a_unassigned_ep.
///  7. o_satisfied to a_satisfied.
///  8. universal literal resources: to a_helper(l) when l is true under s,
///     otherwise to a_helper(l) or the envy-protection agent (choice).
inline Allocation build_x_forall_allocation(const EefReduction& red, const PartialAssignment& s,
                                            const XForallChoices& choices) {
  detail::require_x_forall(red, s);
  const auto& at = red.layout;
  const auto& clauses = red.formula.clauses();
  if (choices.negative_holder.size() != red.formula.forall_vars().size() ||
      choices.to_protection.size() != clauses.size()) {
    throw ContractViolation("choice flags do not match the reduction");
  }
  Allocation a(red.instance.resource_count());

  for (std::size_t c = 0; c < clauses.size(); ++c) {
    if (choices.to_protection[c].size() != clauses[c].size()) {
      throw ContractViolation("choice flags do not match clause " + std::to_string(c + 1));
    }
    a.assign(at.clause_resource[c], at.clause_agent[c]);
    a.assign(at.clause_compensation[c], at.unassigned_agent);
    for (std::size_t k = 0; k < clauses[c].size(); ++k) {
      const Literal& l = clauses[c][k];
      const std::size_t o = at.literal_resource[c][k];
      if (!red.formula.is_universal(l.var)) {
        a.assign(o, at.set_agent[l.code()]);
        continue;
      }
      a.assign(at.protection_resource[c][k], at.protection_agent[c][k]);
      const bool to_protection = !l.holds_under(*s.values[l.var]) && choices.to_protection[c][k];
      a.assign(o, to_protection ? at.protection_agent[c][k] : at.helper_agent[l.code()]);
    }
  }
  for (std::size_t k = 0; k < red.formula.forall_vars().size(); ++k) {
    const std::size_t v = red.formula.forall_vars()[k];
    const Literal holder = choices.negative_holder[k] ? Literal::neg(v) : Literal::pos(v);
    const Literal t = detail::true_literal(v, *s.values[v]);
    a.assign(at.variable_resource[v], at.set_agent[holder.code()]);
    a.assign(at.helper_resource[t.code()], at.set_agent[(~holder).code()]);
    a.assign(at.helper_resource[(~t).code()], at.helper_agent[(~t).code()]);
    a.assign(at.variable_compensation[v], at.unassigned_agent);
  }
  for (std::size_t v : red.formula.exists_vars()) a.assign(at.variable_resource[v], at.unassigned_agent);
  a.assign(at.envy1_resource, at.unassigned_agent);
  a.assign(at.envy2_resource, at.unassigned_protection_agent);
  a.assign(at.satisfied_resource, at.satisfied_agent);
  return a;
}

/// Pareto improvement of the X_forall-allocation `base` of `s`, given a model
/// `ext` of the formula extending `s`. a_unassigned trades its compensation
/// and existential variable resources for o_satisfied (net +1), a_satisfied
/// trades o_satisfied for all clause resources, each clause agent trades o_c
/// for its compensation resource plus at least one true literal resource, and
/// everybody else keeps their utility.
inline Allocation construct_improvement_eef(const EefReduction& red, const Allocation& base,
                                            const PartialAssignment& s,
                                            const std::vector<bool>& ext) {
  detail::require_x_forall(red, s);
  if (!s.extended_by(ext) || !satisfies(red.formula.matrix(), ext)) {
    throw PreconditionError("extension does not satisfy the formula on s");
  }
  check_consistent(red.instance, base);
  const auto& at = red.layout;
  const auto& clauses = red.formula.clauses();
  Allocation a = base;

  a.assign(at.satisfied_resource, at.unassigned_agent);
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    a.assign(at.clause_resource[c], at.satisfied_agent);
    a.assign(at.clause_compensation[c], at.clause_agent[c]);
  }

  auto expect_owner = [&](std::size_t resource, std::size_t agent) {
    if (base.owner(resource) != agent) {
      throw PreconditionError("base is not the X_forall-allocation of s: " +
                              red.instance.resources()[resource] + " is misplaced");
    }
  };

  for (std::size_t v : red.formula.forall_vars()) {
    const Literal t = detail::true_literal(v, *s.values[v]);
    const std::size_t helper_res = at.helper_resource[t.code()];
    const auto& holder = base.owner(helper_res);
    if (holder != at.set_agent[t.code()] && holder != at.set_agent[(~t).code()]) {
      throw PreconditionError("base is not the X_forall-allocation of s: " +
                              red.instance.resources()[helper_res] + " is misplaced");
    }
    a.assign(at.variable_compensation[v], *holder);
    a.assign(helper_res, at.helper_agent[t.code()]);
    for (std::size_t c = 0; c < clauses.size(); ++c) {
      for (std::size_t k = 0; k < clauses[c].size(); ++k) {
        if (clauses[c][k] != t) continue;
        expect_owner(at.literal_resource[c][k], at.helper_agent[t.code()]);
        a.assign(at.literal_resource[c][k], at.clause_agent[c]);
      }
    }
  }
  for (std::size_t v : red.formula.exists_vars()) {
    const Literal t = detail::true_literal(v, ext[v]);
    a.assign(at.variable_resource[v], at.set_agent[t.code()]);
    for (std::size_t c = 0; c < clauses.size(); ++c) {
      for (std::size_t k = 0; k < clauses[c].size(); ++k) {
        if (clauses[c][k] != t) continue;
        expect_owner(at.literal_resource[c][k], at.set_agent[t.code()]);
        a.assign(at.literal_resource[c][k], at.clause_agent[c]);
      }
    }
  }
  return a;
}

/// X_forall-assignment plus choices and the allocation they produce.
struct XForallCandidate {
  PartialAssignment assignment;
  XForallChoices choices;
  Allocation allocation;
};

/// EEF search restricted to X_forall-allocations, which contain every EEF
/// allocation of a reduced instance. Candidates are visited assignment by
/// assignment (universal variable k = bit k), with all choice vectors when
/// `all_choices` is set and only the defaults otherwise. Yes carries the
/// first envy-free candidate whose dominance search completes with No.
inline TriVerdict<XForallCandidate> find_eef_in_x_forall_family(const EefReduction& red,
                                                                const SearchBudget& budget,
                                                                bool all_choices = true) {
  detail::NodeCounter counter(budget);
  TriVerdict<XForallCandidate> out;
  bool undecided = false;
  const std::uint64_t total = std::uint64_t{1} << red.formula.forall_vars().size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const auto s = x_forall_assignment(red.formula, mask);
    const auto family = all_choices ? enumerate_x_forall_choices(red, s)
                                    : std::vector<XForallChoices>{XForallChoices::defaults(red)};
    for (const auto& ch : family) {
      if (!counter.tick()) break;
      auto alloc = build_x_forall_allocation(red, s, ch);
      if (!is_envy_free(red.instance, alloc).envy_free()) continue;
      const auto dom =
          detail::find_dominating(red.instance, alloc, counter, DominanceSearchMode::Pruned);
      if (dom.no()) {
        out.verdict = Verdict::Yes;
        out.witness = XForallCandidate{s, ch, std::move(alloc)};
        out.nodes = counter.used();
        return out;
      }
      if (dom.unknown()) undecided = true;
    }
    if (counter.exhausted()) break;
  }
  out.verdict = (undecided || counter.exhausted()) ? Verdict::Unknown : Verdict::No;
  out.nodes = counter.used();
  return out;
}

}  // namespace fairdiv
