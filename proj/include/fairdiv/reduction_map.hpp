#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/cnf.hpp"
#include "fairdiv/errors.hpp"

namespace fairdiv {

enum class AgentRole {
  Clause,                          // a_c
  LiteralSet,                      // a_set(l), 3-UNSAT reduction
  ExistentialAssignment,           // a_set(l), l existential
  UniversalAssignment,             // a_set(l), l universal
  UniversalHelper,                 // a_set(l)^helper
  UniversalLiteralEnvyProtection,  // a_{c,l}^envyprotection
  Unassigned,
  UnassignedEnvyProtection,
  Satisfied,
};

enum class ResourceRole {
  Variable,             // o_x, 3-UNSAT reduction
  Clause,               // o_c
  ClauseCompensation,   // o_c^compensation
  LiteralOccurrence,    // o_{c,l}, 3-UNSAT reduction
  UniversalLiteral,     // o_{c,l}, l universal
  ExistentialLiteral,   // o_{c,l}, l existential
  UniversalVariable,    // o_x, x universal
  ExistentialVariable,  // o_x, x existential
  UniversalVariableCompensation,
  UniversalHelper,      // o_set(l)^helper
  UniversalLiteralEnvyProtection,
  Satisfied,
  Envy1,
  Envy2,
};

inline constexpr std::string_view kAgentRoleNames[] = {
    "clause",       "literal-set",  "existential-assignment", "universal-assignment",
    "universal-helper", "universal-literal-envy-protection", "unassigned",
    "unassigned-envy-protection", "satisfied"};

inline constexpr std::string_view kResourceRoleNames[] = {
    "variable",          "clause",
    "clause-compensation", "literal-occurrence",
    "universal-literal", "existential-literal",
    "universal-variable", "existential-variable",
    "universal-variable-compensation", "universal-helper",
    "universal-literal-envy-protection", "satisfied",
    "envy1",             "envy2"};

inline std::string_view to_string(AgentRole r) { return kAgentRoleNames[static_cast<int>(r)]; }
inline std::string_view to_string(ResourceRole r) {
  return kResourceRoleNames[static_cast<int>(r)];
}

template <class Role, std::size_t N>
Role role_from_string(std::string_view name, const std::string_view (&names)[N]) {
  for (std::size_t k = 0; k < N; ++k) {
    if (names[k] == name) return static_cast<Role>(k);
  }
  throw FormatError("unknown role '" + std::string(name) + "'");
}

/// Formula entity an agent or resource stands for.
struct FormulaLink {
  std::optional<std::size_t> clause;
  std::optional<Literal> literal;
  std::optional<std::size_t> variable;

  friend bool operator==(const FormulaLink&, const FormulaLink&) = default;
};

template <class Role>
struct RoleTag {
  Role role;
  FormulaLink link;

  friend bool operator==(const RoleTag&, const RoleTag&) = default;
};

/// One role tag per agent and per resource of a reduced instance, in
/// instance order.
struct ReductionMap {
  std::vector<RoleTag<AgentRole>> agents;
  std::vector<RoleTag<ResourceRole>> resources;

  std::size_t count(AgentRole role) const {
    std::size_t k = 0;
    for (const auto& t : agents) k += t.role == role;
    return k;
  }
  std::size_t count(ResourceRole role) const {
    std::size_t k = 0;
    for (const auto& t : resources) k += t.role == role;
    return k;
  }

  friend bool operator==(const ReductionMap&, const ReductionMap&) = default;
};

}  // namespace fairdiv
