#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fairdiv/instance.hpp"

namespace fairdiv {

/// u_i(bundle). Additive sums the agent's row over the bundle, MaxAtomic takes
/// the largest singleton demand (0 for the empty bundle).
inline Rational bundle_utility(const Instance& instance, std::size_t agent,
                               std::span<const std::size_t> bundle) {
  instance.check_agent(agent);
  Rational total = 0;
  for (std::size_t r : bundle) {
    const Rational& v = instance.value(agent, r);
    if (instance.kind() == UtilityKind::Additive) {
      total += v;
    } else if (v > total) {
      total = v;
    }
  }
  return total;
}

/// Per-agent utilities of one allocation.
struct UtilityVector {
  std::vector<Rational> values;

  std::size_t size() const noexcept { return values.size(); }
  const Rational& operator[](std::size_t i) const { return values[i]; }

  /// Non-decreasing copy, the view leximin comparison works on.
  std::vector<Rational> sorted() const {
    auto out = values;
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const UtilityVector&, const UtilityVector&) = default;
};

inline UtilityVector utility_vector(const Instance& instance, const Allocation& alloc) {
  check_consistent(instance, alloc);
  const std::size_t n = instance.agent_count();
  UtilityVector out{std::vector<Rational>(n)};
  if (instance.kind() == UtilityKind::Additive) {
    for (std::size_t r = 0; r < alloc.resource_count(); ++r) {
      if (const auto& owner = alloc.owner(r)) out.values[*owner] += instance.value(*owner, r);
    }
  } else {
    for (std::size_t r = 0; r < alloc.resource_count(); ++r) {
      if (const auto& owner = alloc.owner(r)) {
        const Rational& v = instance.value(*owner, r);
        if (v > out.values[*owner]) out.values[*owner] = v;
      }
    }
  }
  return out;
}

enum class LeximinOrdering { Less, Equal, Greater };

/// Compares the sorted views lexicographically. Less means `u` is strictly
/// leximin-worse than `v`.
inline LeximinOrdering leximin_compare(const UtilityVector& u, const UtilityVector& v) {
  if (u.size() != v.size()) {
    throw ContractViolation("leximin comparison of vectors with lengths " +
                            std::to_string(u.size()) + " and " + std::to_string(v.size()));
  }
  const auto su = u.sorted();
  const auto sv = v.sorted();
  for (std::size_t k = 0; k < su.size(); ++k) {
    if (su[k] < sv[k]) return LeximinOrdering::Less;
    if (sv[k] < su[k]) return LeximinOrdering::Greater;
  }
  return LeximinOrdering::Equal;
}

/// `envier` values `envied`'s bundle strictly above its own.
struct EnvyPair {
  std::size_t envier;
  std::size_t envied;
  friend bool operator==(const EnvyPair&, const EnvyPair&) = default;
};

/// Outcome of an envy check: empty when envy-free, otherwise the first
/// envious pair in (envier, envied) order.
struct EnvyCheck {
  std::optional<EnvyPair> envies;
  bool envy_free() const noexcept { return !envies.has_value(); }
};

inline EnvyCheck is_envy_free(const Instance& instance, const Allocation& alloc) {
  check_consistent(instance, alloc);
  const std::size_t n = instance.agent_count();
  std::vector<std::vector<std::size_t>> bundles(n);
  for (std::size_t r = 0; r < alloc.resource_count(); ++r) {
    if (const auto& owner = alloc.owner(r)) bundles[*owner].push_back(r);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Rational own = bundle_utility(instance, i, bundles[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (bundle_utility(instance, i, bundles[j]) > own) return {EnvyPair{i, j}};
    }
  }
  return {};
}

/// Pareto dominance: nobody is worse off in `candidate` and someone is
/// strictly better off.
inline bool dominates(const Instance& instance, const Allocation& candidate,
                      const Allocation& baseline) {
  const auto c = utility_vector(instance, candidate);
  const auto b = utility_vector(instance, baseline);
  bool strict = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < b[i]) return false;
    if (c[i] > b[i]) strict = true;
  }
  return strict;
}

}  // namespace fairdiv
