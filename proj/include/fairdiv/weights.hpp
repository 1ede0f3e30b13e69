#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "fairdiv/instance.hpp"

namespace fairdiv {

/// n x m matrix of non-negative integer edge weights, row = agent.
struct WeightMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BigInt> data;  // row-major

  const BigInt& at(std::size_t agent, std::size_t resource) const {
    return data[agent * cols + resource];
  }
  BigInt& at(std::size_t agent, std::size_t resource) { return data[agent * cols + resource]; }
};

/// Edge weights that turn min-weight matching into leximin maximisation.
///
/// Distinct demands are visited from the largest down. Each receives weight
/// S + 1, where S is the sum (with multiplicity) of all weights handed out so
/// far. So a smaller demand always weighs strictly more than every larger
/// demand in the matrix combined, and equal demands weigh the same. Weights
/// depend only on the order of the demands, never on their magnitudes.
inline WeightMatrix generate_weights(const Instance& instance) {
  if (instance.kind() != UtilityKind::MaxAtomic) {
    throw WrongUtilityKind("weight generation needs a max-atomic instance");
  }
  const std::size_t n = instance.agent_count();
  const std::size_t m = instance.resource_count();

  std::map<Rational, std::size_t, std::greater<>> multiplicity;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) ++multiplicity[instance.value(i, j)];
  }

  std::map<Rational, BigInt, std::greater<>> weight_of;
  BigInt running = 0;
  for (const auto& [demand, count] : multiplicity) {
    BigInt w = running + 1;
    running += w * static_cast<unsigned long>(count);
    weight_of.emplace(demand, std::move(w));
  }

  WeightMatrix out{n, m, std::vector<BigInt>(n * m)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) out.at(i, j) = weight_of.at(instance.value(i, j));
  }
  return out;
}

}  // namespace fairdiv
