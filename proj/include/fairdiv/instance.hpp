#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

/// How the n x m matrix of an instance is read.
///  - Additive: u_i(B) = sum of row i over B.
///  - MaxAtomic: u_i(B) = max of row i over B, and 0 for the empty bundle.
enum class UtilityKind { Additive, MaxAtomic };

inline const char* to_string(UtilityKind kind) {
  return kind == UtilityKind::Additive ? "additive" : "max-atomic";
}

/// An allocation setting: agents, resources and one utility matrix.
/// Immutable once constructed; the constructor enforces every invariant.
class Instance {
 public:
  Instance(std::vector<std::string> agents, std::vector<std::string> resources,
           UtilityKind kind, std::vector<std::vector<Rational>> matrix)
      : agents_(std::move(agents)),
        resources_(std::move(resources)),
        kind_(kind) {
    if (agents_.empty()) throw ContractViolation("instance needs at least one agent");
    if (matrix.size() != agents_.size()) {
      throw ContractViolation("matrix has " + std::to_string(matrix.size()) +
                              " rows, expected " + std::to_string(agents_.size()));
    }
    index_ids(agents_, agent_index_, "agent");
    index_ids(resources_, resource_index_, "resource");
    values_.reserve(agents_.size() * resources_.size());
    for (std::size_t i = 0; i < matrix.size(); ++i) {
      if (matrix[i].size() != resources_.size()) {
        throw ContractViolation("matrix row " + std::to_string(i) + " has " +
                                std::to_string(matrix[i].size()) + " entries, expected " +
                                std::to_string(resources_.size()));
      }
      for (auto& v : matrix[i]) {
        if (kind_ == UtilityKind::MaxAtomic && sgn(v) < 0) {
          throw ContractViolation("negative demand for agent '" + agents_[i] + "'");
        }
        values_.push_back(std::move(v));
      }
    }
  }

  /// Instance with generated ids a1..an / o1..om.
  static Instance with_default_ids(UtilityKind kind,
                                   std::vector<std::vector<Rational>> matrix) {
    const std::size_t n = matrix.size();
    const std::size_t m = n == 0 ? 0 : matrix.front().size();
    std::vector<std::string> agents, resources;
    for (std::size_t i = 0; i < n; ++i) agents.push_back("a" + std::to_string(i + 1));
    for (std::size_t j = 0; j < m; ++j) resources.push_back("o" + std::to_string(j + 1));
    return Instance(std::move(agents), std::move(resources), kind, std::move(matrix));
  }

  std::size_t agent_count() const noexcept { return agents_.size(); }
  std::size_t resource_count() const noexcept { return resources_.size(); }
  UtilityKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& agents() const noexcept { return agents_; }
  const std::vector<std::string>& resources() const noexcept { return resources_; }

  const Rational& value(std::size_t agent, std::size_t resource) const {
    check_agent(agent);
    check_resource(resource);
    return values_[agent * resources_.size() + resource];
  }

  std::vector<std::vector<Rational>> matrix() const {
    std::vector<std::vector<Rational>> rows(agents_.size());
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      rows[i].assign(values_.begin() + static_cast<std::ptrdiff_t>(i * resources_.size()),
                     values_.begin() + static_cast<std::ptrdiff_t>((i + 1) * resources_.size()));
    }
    return rows;
  }

  std::optional<std::size_t> agent_index(const std::string& id) const {
    auto it = agent_index_.find(id);
    if (it == agent_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> resource_index(const std::string& id) const {
    auto it = resource_index_.find(id);
    if (it == resource_index_.end()) return std::nullopt;
    return it->second;
  }

  void check_agent(std::size_t agent) const {
    if (agent >= agents_.size()) {
      throw ContractViolation("agent index " + std::to_string(agent) + " out of range");
    }
  }

  void check_resource(std::size_t resource) const {
    if (resource >= resources_.size()) {
      throw ContractViolation("resource index " + std::to_string(resource) + " out of range");
    }
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.kind_ == b.kind_ && a.agents_ == b.agents_ && a.resources_ == b.resources_ &&
           a.values_ == b.values_;
  }

 private:
  static void index_ids(const std::vector<std::string>& ids,
                        std::map<std::string, std::size_t>& index, const char* what) {
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!index.emplace(ids[k], k).second) {
        throw ContractViolation(std::string("duplicate ") + what + " id '" + ids[k] + "'");
      }
    }
  }

  std::vector<std::string> agents_;
  std::vector<std::string> resources_;
  UtilityKind kind_;
  std::vector<Rational> values_;  // row-major n x m
  std::map<std::string, std::size_t> agent_index_;
  std::map<std::string, std::size_t> resource_index_;
};

/// Resource -> optional owner. A resource has at most one owner by
/// construction, so every Allocation satisfies the preemption constraint.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::size_t resource_count) : owner_(resource_count) {}
  explicit Allocation(std::vector<std::optional<std::size_t>> owners)
      : owner_(std::move(owners)) {}

  std::size_t resource_count() const noexcept { return owner_.size(); }

  const std::optional<std::size_t>& owner(std::size_t resource) const {
    check(resource);
    return owner_[resource];
  }

  void assign(std::size_t resource, std::size_t agent) {
    check(resource);
    owner_[resource] = agent;
  }

  void release(std::size_t resource) {
    check(resource);
    owner_[resource].reset();
  }

  /// Resources owned by `agent`, ascending.
  std::vector<std::size_t> bundle(std::size_t agent) const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < owner_.size(); ++r) {
      if (owner_[r] == agent) out.push_back(r);
    }
    return out;
  }

  const std::vector<std::optional<std::size_t>>& owners() const noexcept { return owner_; }

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  void check(std::size_t resource) const {
    if (resource >= owner_.size()) {
      throw ContractViolation("resource index " + std::to_string(resource) + " out of range");
    }
  }

  std::vector<std::optional<std::size_t>> owner_;
};

/// Throws ContractViolation unless `alloc` covers exactly the instance's
/// resources and names only existing agents.
inline void check_consistent(const Instance& instance, const Allocation& alloc) {
  if (alloc.resource_count() != instance.resource_count()) {
    throw ContractViolation("allocation covers " + std::to_string(alloc.resource_count()) +
                            " resources, instance has " +
                            std::to_string(instance.resource_count()));
  }
  for (const auto& owner : alloc.owners()) {
    if (owner) instance.check_agent(*owner);
  }
}

}  // namespace fairdiv
