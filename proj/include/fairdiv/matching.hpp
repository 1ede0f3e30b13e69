#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "fairdiv/weights.hpp"

namespace fairdiv {

/// Set of (agent, resource) pairs, sorted by agent. No agent or resource
/// appears twice.
struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  friend bool operator==(const Matching&, const Matching&) = default;
};

inline BigInt total_weight(const WeightMatrix& weights, const Matching& matching) {
  BigInt total = 0;
  for (const auto& [agent, resource] : matching.pairs) total += weights.at(agent, resource);
  return total;
}

namespace detail {

/// Shortest augmenting path Hungarian method with potentials, for a
/// rows x cols cost matrix with rows <= cols. Every row gets matched.
/// `cost(r, c)` must return something convertible to `Cost`. Returns the
/// column assigned to each row.
template <class Cost, class CostFn>
std::vector<std::size_t> hungarian(std::size_t rows, std::size_t cols, CostFn&& cost) {
  // 1-based, column 0 is the virtual root of the alternating tree.
  std::vector<Cost> u(rows + 1), v(cols + 1), minv(cols + 1);
  std::vector<std::size_t> owner(cols + 1, 0), way(cols + 1, 0);
  std::vector<char> used(cols + 1), has_min(cols + 1);
  Cost cur, delta;

  for (std::size_t row = 1; row <= rows; ++row) {
    owner[0] = row;
    std::size_t j0 = 0;
    std::fill(used.begin(), used.end(), 0);
    std::fill(has_min.begin(), has_min.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      std::size_t j1 = 0;
      bool has_delta = false;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        cur = cost(i0 - 1, j - 1);
        cur -= u[i0];
        cur -= v[j];
        if (!has_min[j] || cur < minv[j]) {
          minv[j] = cur;
          has_min[j] = 1;
          way[j] = j0;
        }
        if (!has_delta || minv[j] < delta) {
          delta = minv[j];
          j1 = j;
          has_delta = true;
        }
      }
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> assigned(rows);
  for (std::size_t j = 1; j <= cols; ++j) {
    if (owner[j] != 0) assigned[owner[j] - 1] = j - 1;
  }
  return assigned;
}

}  // namespace detail

/// Maximum-cardinality matching of minimum total weight on the complete
/// bipartite graph agents x resources.
///
/// Ties between optimal matchings go to the lexicographically smallest pair
/// list (pairs sorted by agent). This is done by solving on
/// w' = w * (m+1)^n + p(i, j), where p encodes, per agent, which resource it
/// holds (m standing for "unmatched") as one base-(m+1) digit, most significant
/// digit first. A total perturbation difference is below (m+1)^n, so it only
/// decides between matchings of equal original weight.
inline Matching min_weight_max_matching(const WeightMatrix& weights) {
  const std::size_t n = weights.rows;
  const std::size_t m = weights.cols;
  Matching out;
  if (n == 0 || m == 0) return out;

  const BigInt base = static_cast<unsigned long>(m + 1);
  std::vector<BigInt> place(n);  // (m+1)^(n-1-i)
  place[n - 1] = 1;
  for (std::size_t i = n - 1; i-- > 0;) place[i] = place[i + 1] * base;
  const BigInt scale = place[0] * base;
  const BigInt offset = place[0] * static_cast<unsigned long>(m);

  std::vector<BigInt> scaled(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      BigInt digit_shift = BigInt(static_cast<unsigned long>(j)) - static_cast<unsigned long>(m);
      scaled[i * m + j] = weights.at(i, j) * scale + digit_shift * place[i] + offset;
    }
  }

  if (n <= m) {
    const auto col = detail::hungarian<BigInt>(
        n, m, [&](std::size_t r, std::size_t c) -> const BigInt& { return scaled[r * m + c]; });
    for (std::size_t i = 0; i < n; ++i) out.pairs.emplace_back(i, col[i]);
  } else {
    const auto agent = detail::hungarian<BigInt>(
        m, n, [&](std::size_t r, std::size_t c) -> const BigInt& { return scaled[c * m + r]; });
    for (std::size_t j = 0; j < m; ++j) out.pairs.emplace_back(agent[j], j);
    std::sort(out.pairs.begin(), out.pairs.end());
  }
  return out;
}

}  // namespace fairdiv
