#include <gtest/gtest.h>

#include "fairdiv/leximin.hpp"
#include "fairdiv/oracles.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

Instance max_atomic(std::vector<std::vector<Rational>> m) {
  return Instance::with_default_ids(UtilityKind::MaxAtomic, std::move(m));
}

WeightMatrix weights_of(std::size_t rows, std::size_t cols, std::vector<long> values) {
  WeightMatrix w{rows, cols, {}};
  for (long v : values) w.data.emplace_back(v);
  return w;
}

std::vector<Rational> rationals(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Weights, WorkedMultiset) {
  // Demands 5, 3, 3, 1 laid out in a 2x2 matrix.
  const auto w = generate_weights(max_atomic({{5, 3}, {3, 1}}));
  EXPECT_EQ(w.at(0, 0), 1);
  EXPECT_EQ(w.at(0, 1), 2);
  EXPECT_EQ(w.at(1, 0), 2);
  EXPECT_EQ(w.at(1, 1), 6);
}

TEST(Weights, EqualDemandsEqualWeights) {
  const auto w = generate_weights(max_atomic({{4, 4, 4}, {4, 4, 4}}));
  for (const auto& x : w.data) EXPECT_EQ(x, 1);
}

TEST(Weights, SingleEntry) {
  EXPECT_EQ(generate_weights(max_atomic({{7}})).at(0, 0), 1);
}

TEST(Weights, RejectsAdditive) {
  EXPECT_THROW(generate_weights(Instance::with_default_ids(UtilityKind::Additive, {{1}})),
               WrongUtilityKind);
  EXPECT_THROW(solve_leximin(Instance::with_default_ids(UtilityKind::Additive, {{1}})),
               WrongUtilityKind);
}

TEST(Weights, InvariantsOnRandomMatrices) {
  Rng rng(42);
  for (int k = 0; k < 300; ++k) {
    const auto in = k % 3 == 0 ? random_rational_instance(rng, UtilityKind::MaxAtomic, 4, 5)
                               : random_instance(rng, UtilityKind::MaxAtomic, uniform(rng, 1, 6),
                                                 uniform(rng, 1, 6), 0, 9);
    const auto w = generate_weights(in);
    EXPECT_EQ(weight_violation_naive(in, w), std::nullopt);
    EXPECT_EQ(weight_violation_sorted(in, w), std::nullopt);
  }
}

TEST(Weights, CheckersCatchBrokenMatrices) {
  const auto in = max_atomic({{5, 3}, {3, 1}});
  auto w = generate_weights(in);
  w.at(1, 1) = 4;  // below 1 + 2 + 2
  EXPECT_NE(weight_violation_naive(in, w), std::nullopt);
  EXPECT_NE(weight_violation_sorted(in, w), std::nullopt);
  w = generate_weights(in);
  w.at(0, 1) = 3;  // equal demands, unequal weights
  EXPECT_NE(weight_violation_naive(in, w), std::nullopt);
  EXPECT_NE(weight_violation_sorted(in, w), std::nullopt);
}

TEST(Matching, Diagonal) {
  const auto m = min_weight_max_matching(weights_of(2, 2, {1, 2, 2, 1}));
  EXPECT_EQ(m.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}}));
  EXPECT_EQ(total_weight(weights_of(2, 2, {1, 2, 2, 1}), m), 2);
}

TEST(Matching, SingleRowPicksCheaperColumn) {
  const auto w = weights_of(1, 2, {3, 5});
  const auto m = min_weight_max_matching(w);
  EXPECT_EQ(m.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}}));
  EXPECT_EQ(total_weight(w, m), 3);
}

TEST(Matching, TieBreakIsLexicographicallySmallest) {
  const auto all_equal = min_weight_max_matching(weights_of(2, 2, {1, 1, 1, 1}));
  EXPECT_EQ(all_equal.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}}));
  // More agents than resources: agent 0 is preferred over agent 1.
  const auto tall = min_weight_max_matching(weights_of(2, 1, {4, 4}));
  EXPECT_EQ(tall.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}}));
}

TEST(Matching, MatchesBruteForceOnRandomMatrices) {
  Rng rng(8);
  for (int k = 0; k < 400; ++k) {
    const std::size_t n = k < 200 ? 4 : uniform(rng, 1, 5);
    const std::size_t m = k < 200 ? 4 : uniform(rng, 1, 5);
    WeightMatrix w{n, m, {}};
    for (std::size_t x = 0; x < n * m; ++x) w.data.emplace_back(static_cast<long>(uniform(rng, 0, 6)));
    const auto got = min_weight_max_matching(w);
    const auto want = brute_force_matching(w);
    EXPECT_EQ(got.pairs.size(), std::min(n, m));
    EXPECT_EQ(total_weight(w, got), want.total);
    EXPECT_EQ(got.pairs, want.pairs);
  }
}

TEST(Matching, EmptySides) {
  EXPECT_TRUE(min_weight_max_matching(WeightMatrix{3, 0, {}}).pairs.empty());
}

TEST(SolveLeximin, TwoByTwoExample) {
  const auto in = max_atomic({{5, 3}, {4, 1}});
  const auto a = solve_leximin(in);
  EXPECT_EQ(a.owner(1), 0u);
  EXPECT_EQ(a.owner(0), 1u);
  EXPECT_EQ(utility_vector(in, a).sorted(), rationals({3, 4}));
}

TEST(SolveLeximin, SingleAgentTakesLargestDemand) {
  const auto in = max_atomic({{7, 2}});
  const auto a = solve_leximin(in);
  EXPECT_EQ(a.owner(0), 0u);
  EXPECT_EQ(utility_vector(in, a).values, rationals({7}));
}

TEST(SolveLeximin, ZeroAgentCannotBeHelped) {
  const auto in = max_atomic({{0, 0}, {9, 0}});
  EXPECT_EQ(utility_vector(in, solve_leximin(in)).sorted(), rationals({0, 9}));
}

TEST(SolveLeximin, MoreAgentsThanResources) {
  const auto in = max_atomic({{1}, {5}, {3}});
  const auto u = utility_vector(in, solve_leximin(in));
  EXPECT_EQ(u.sorted(), rationals({0, 0, 5}));
}

TEST(SolveLeximin, MatchesOracleIncludingRationals) {
  Rng rng(1234);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = uniform(rng, 1, 4), m = uniform(rng, 1, 4);
    const auto in = k % 2 == 0 ? random_instance(rng, UtilityKind::MaxAtomic, n, m, 0, 4)
                               : random_rational_instance(rng, UtilityKind::MaxAtomic, n, m);
    const auto a = solve_leximin(in);
    for (std::size_t i = 0; i < n; ++i) EXPECT_LE(a.bundle(i).size(), 1u);
    const auto oracle = brute_force_leximin(in);
    EXPECT_EQ(leximin_compare(utility_vector(in, a), oracle.utilities), LeximinOrdering::Equal);
  }
}

TEST(SolveLeximin, ScalingDemandsKeepsTheMatching) {
  Rng rng(77);
  for (int k = 0; k < 100; ++k) {
    const auto in = random_instance(rng, UtilityKind::MaxAtomic, 4, 4, 0, 9);
    auto scaled = in.matrix();
    const Rational c(static_cast<long>(uniform(rng, 1, 9)), static_cast<long>(uniform(rng, 1, 9)));
    for (auto& row : scaled) {
      for (auto& v : row) v *= c;
    }
    EXPECT_EQ(solve_leximin(in), solve_leximin(max_atomic(scaled)));
  }
}

TEST(Lmmuab, Decisions) {
  const auto zero = max_atomic({{0, 0}, {0, 0}});
  EXPECT_FALSE(decide_lmmuab(zero, UtilityVector{rationals({0, 0})}));
  const auto in = max_atomic({{5, 3}, {4, 1}});
  EXPECT_TRUE(decide_lmmuab(in, UtilityVector{rationals({1, 5})}));
  EXPECT_FALSE(decide_lmmuab(in, UtilityVector{rationals({3, 4})}));
  EXPECT_FALSE(decide_lmmuab(in, UtilityVector{rationals({4, 3})}));
  EXPECT_THROW(decide_lmmuab(in, UtilityVector{rationals({1})}), ContractViolation);
}

TEST(Oracle, BruteForceLeximinExamples) {
  EXPECT_EQ(brute_force_leximin(max_atomic({{5, 3}, {4, 1}})).utilities.sorted(), rationals({3, 4}));
  EXPECT_EQ(brute_force_leximin(max_atomic({{7, 2}})).utilities.values, rationals({7}));
  EXPECT_EQ(brute_force_leximin(max_atomic({{0, 0}, {0, 0}})).utilities.values, rationals({0, 0}));
}

TEST(Oracle, BruteForceLeximinRefusesLargeInstances) {
  Rng rng(1);
  EXPECT_THROW(brute_force_leximin(random_instance(rng, UtilityKind::MaxAtomic, 9, 9, 0, 3)),
               SizeError);
  EXPECT_THROW(brute_force_leximin(Instance::with_default_ids(UtilityKind::Additive, {{1}})),
               WrongUtilityKind);
}
