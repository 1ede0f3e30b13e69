#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fairdiv/cnf.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/polarity.hpp"
#include "fairdiv/reduction_map.hpp"

namespace fairdiv {

/// Where each role of the 3-UNSAT construction sits in the instance.
struct PoLayout {
  std::vector<std::size_t> clause_agent;  // per clause
  std::vector<std::size_t> set_agent;     // per literal code
  std::size_t unassigned_agent = 0;
  std::size_t satisfied_agent = 0;

  std::vector<std::size_t> variable_resource;              // per variable
  std::vector<std::size_t> clause_resource;                // per clause
  std::vector<std::vector<std::size_t>> literal_resource;  // [clause][position]
  std::size_t satisfied_resource = 0;
};

/// 3CNF formula turned into an additive instance plus a baseline allocation
/// that is Pareto-optimal exactly when the formula is unsatisfiable.
struct PoReduction {
  CnfFormula formula;
  Instance instance;
  Allocation baseline;
  ReductionMap map;
  PoLayout layout;
};

/// Agents (in order): a_c per clause, a_set(x) and a_set(-x) per variable,
/// a_unassigned, a_satisfied. Resources: o_x per variable, o_c per clause,
/// o_{c,l} per literal occurrence, o_satisfied.
inline PoReduction reduce_3cnf_to_po(const CnfFormula& formula) {
  require_3cnf(formula);
  const std::size_t w = formula.num_vars;
  const std::size_t wc = formula.clauses.size();

  std::vector<std::string> agents, resources;
  ReductionMap map;
  PoLayout layout;

  for (std::size_t c = 0; c < wc; ++c) {
    layout.clause_agent.push_back(agents.size());
    agents.push_back("a_c" + std::to_string(c + 1));
    map.agents.push_back({AgentRole::Clause, {c, {}, {}}});
  }
  layout.set_agent.resize(2 * w);
  for (std::size_t v = 0; v < w; ++v) {
    for (const Literal lit : {Literal::pos(v), Literal::neg(v)}) {
      layout.set_agent[lit.code()] = agents.size();
      agents.push_back("a_set(" + lit.name() + ")");
      map.agents.push_back({AgentRole::LiteralSet, {{}, lit, v}});
    }
  }
  layout.unassigned_agent = agents.size();
  agents.push_back("a_unassigned");
  map.agents.push_back({AgentRole::Unassigned, {}});
  layout.satisfied_agent = agents.size();
  agents.push_back("a_satisfied");
  map.agents.push_back({AgentRole::Satisfied, {}});

  for (std::size_t v = 0; v < w; ++v) {
    layout.variable_resource.push_back(resources.size());
    resources.push_back("o_x" + std::to_string(v + 1));
    map.resources.push_back({ResourceRole::Variable, {{}, {}, v}});
  }
  for (std::size_t c = 0; c < wc; ++c) {
    layout.clause_resource.push_back(resources.size());
    resources.push_back("o_c" + std::to_string(c + 1));
    map.resources.push_back({ResourceRole::Clause, {c, {}, {}}});
  }
  layout.literal_resource.resize(wc);
  for (std::size_t c = 0; c < wc; ++c) {
    for (const Literal& lit : formula.clauses[c]) {
      layout.literal_resource[c].push_back(resources.size());
      resources.push_back("o_c" + std::to_string(c + 1) + "," + lit.name());
      map.resources.push_back({ResourceRole::LiteralOccurrence, {c, lit, lit.var}});
    }
  }
  layout.satisfied_resource = resources.size();
  resources.push_back("o_satisfied");
  map.resources.push_back({ResourceRole::Satisfied, {}});

  std::vector<std::vector<Rational>> alpha(agents.size(),
                                           std::vector<Rational>(resources.size()));
  for (std::size_t v = 0; v < w; ++v) {
    alpha[layout.unassigned_agent][layout.variable_resource[v]] = 1;
    for (const Literal lit : {Literal::pos(v), Literal::neg(v)}) {
      alpha[layout.set_agent[lit.code()]][layout.variable_resource[v]] =
          static_cast<unsigned long>(formula.occurrences(lit));
    }
  }
  for (std::size_t c = 0; c < wc; ++c) {
    alpha[layout.satisfied_agent][layout.clause_resource[c]] = 1;
    alpha[layout.clause_agent[c]][layout.clause_resource[c]] = 1;
    for (std::size_t k = 0; k < formula.clauses[c].size(); ++k) {
      const Literal& lit = formula.clauses[c][k];
      alpha[layout.set_agent[lit.code()]][layout.literal_resource[c][k]] = 1;
      alpha[layout.clause_agent[c]][layout.literal_resource[c][k]] = 1;
    }
  }
  alpha[layout.satisfied_agent][layout.satisfied_resource] = static_cast<unsigned long>(wc);
  alpha[layout.unassigned_agent][layout.satisfied_resource] = static_cast<unsigned long>(w + 1);

  Allocation a(resources.size());
  for (std::size_t v = 0; v < w; ++v) a.assign(layout.variable_resource[v], layout.unassigned_agent);
  for (std::size_t c = 0; c < wc; ++c) {
    a.assign(layout.clause_resource[c], layout.clause_agent[c]);
    for (std::size_t k = 0; k < formula.clauses[c].size(); ++k) {
      a.assign(layout.literal_resource[c][k], layout.set_agent[formula.clauses[c][k].code()]);
    }
  }
  a.assign(layout.satisfied_resource, layout.satisfied_agent);

  return PoReduction{
      formula,
      Instance(std::move(agents), std::move(resources), UtilityKind::Additive, std::move(alpha)),
      std::move(a),
      std::move(map),
      std::move(layout)};
}

/// Pareto improvement of the baseline built from a satisfying assignment:
/// o_x goes to the agent of the literal made true, that agent's literal
/// resources go to their clause agents, every clause resource goes to
/// a_satisfied, and o_satisfied goes to a_unassigned (w -> w + 1).
inline Allocation construct_improvement_po(const PoReduction& red,
                                           const std::vector<bool>& assignment) {
  if (assignment.size() != red.formula.num_vars || !satisfies(red.formula, assignment)) {
    throw PreconditionError("assignment does not satisfy the formula");
  }
  Allocation a = red.baseline;
  for (std::size_t v = 0; v < red.formula.num_vars; ++v) {
    const Literal t = assignment[v] ? Literal::pos(v) : Literal::neg(v);
    a.assign(red.layout.variable_resource[v], red.layout.set_agent[t.code()]);
  }
  for (std::size_t c = 0; c < red.formula.clauses.size(); ++c) {
    for (std::size_t k = 0; k < red.formula.clauses[c].size(); ++k) {
      const Literal& lit = red.formula.clauses[c][k];
      if (lit.holds_under(assignment[lit.var])) {
        a.assign(red.layout.literal_resource[c][k], red.layout.clause_agent[c]);
      }
    }
    a.assign(red.layout.clause_resource[c], red.layout.satisfied_agent);
  }
  a.assign(red.layout.satisfied_resource, red.layout.unassigned_agent);
  return a;
}

}  // namespace fairdiv
