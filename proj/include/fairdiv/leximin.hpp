#pragma once

#include "fairdiv/matching.hpp"
#include "fairdiv/utility.hpp"
#include "fairdiv/weights.hpp"

namespace fairdiv {

/// Leximin-maximal allocation for a max-atomic instance: each agent gets at
/// most one resource, chosen by a minimum-weight maximum matching under
/// generate_weights. Unmatched agents get nothing, unmatched resources stay
/// unallocated.
inline Allocation solve_leximin(const Instance& instance) {
  const auto weights = generate_weights(instance);
  const auto matching = min_weight_max_matching(weights);
  Allocation alloc(instance.resource_count());
  for (const auto& [agent, resource] : matching.pairs) alloc.assign(resource, agent);
  return alloc;
}

/// Decision variant: is there an allocation whose utility vector is strictly
/// leximin-better than K?
inline bool decide_lmmuab(const Instance& instance, const UtilityVector& k) {
  if (k.size() != instance.agent_count()) {
    throw ContractViolation("K has length " + std::to_string(k.size()) + ", expected " +
                            std::to_string(instance.agent_count()));
  }
  const auto best = utility_vector(instance, solve_leximin(instance));
  return leximin_compare(k, best) == LeximinOrdering::Less;
}

}  // namespace fairdiv
