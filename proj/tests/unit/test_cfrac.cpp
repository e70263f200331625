#include <gtest/gtest.h>

#include "hjale/cfrac.hpp"
#include "oracles/oracles.hpp"

using namespace hjale;

TEST(HjExpand, ReciprocalOfInteger) {
  for (std::int64_t q = 2; q <= 30; ++q) {
    const auto e = hj_expand(1, q);
    ASSERT_EQ(e.digits, std::vector<std::int64_t>{q});
    EXPECT_EQ(e.approximant(2), (Approximant{q, 1}));
  }
}

TEST(HjExpand, CrepantDigitsAreAllTwo) {
  for (std::int64_t q = 2; q <= 40; ++q) {
    const auto e = hj_expand(q - 1, q);
    EXPECT_EQ(e.digits, std::vector<std::int64_t>(static_cast<std::size_t>(q - 1), 2));
    for (std::size_t j = 1; j <= e.length() + 1; ++j) EXPECT_EQ(e.approximant(j).m, static_cast<std::int64_t>(j));
  }
}

TEST(HjExpand, FiveSevenths) {
  const auto e = hj_expand(5, 7);
  EXPECT_EQ(e.digits, (std::vector<std::int64_t>{2, 2, 3}));
  EXPECT_EQ(eval_negative_cfrac(e.digits), Fraction(7, 5));
}

TEST(HjExpand, RejectsBadInput) {
  EXPECT_THROW(hj_expand(0, 5), std::invalid_argument);
  EXPECT_THROW(hj_expand(5, 5), std::invalid_argument);
  EXPECT_THROW(hj_expand(2, 4), std::invalid_argument);
  EXPECT_THROW(hj_expand(-1, 3), std::invalid_argument);
}

TEST(EvalNegativeCfrac, SmallCases) {
  EXPECT_EQ(eval_negative_cfrac(std::vector<std::int64_t>{9}), Fraction(9));
  EXPECT_EQ(eval_negative_cfrac(std::vector<std::int64_t>{2, 2}), Fraction(3, 2));
  EXPECT_EQ(eval_negative_cfrac(std::vector<std::int64_t>{2, 2, 3}), Fraction(7, 5));
  EXPECT_THROW(eval_negative_cfrac(std::vector<std::int64_t>{}), std::invalid_argument);
  EXPECT_THROW(eval_negative_cfrac(std::vector<std::int64_t>{3, 1}), std::invalid_argument);
}

TEST(ApproximantPairs, ReciprocalChain) {
  const auto pairs = approximant_pairs(hj_expand(1, 6));
  EXPECT_EQ(pairs, (std::vector<Approximant>{{0, -1}, {1, 0}, {6, 1}, {0, 1}}));
}

TEST(CfracProperties, AgreesWithOracleUpTo200) {
  for (const auto& [p, q] : oracle::coprime_pairs(200)) {
    const auto e = hj_expand(p, q);
    ASSERT_EQ(e.digits, oracle::hj_digits(p, q)) << p << "/" << q;
    ASSERT_EQ(oracle::nested_value(e.digits), Fraction(q, p));
    ASSERT_EQ(eval_negative_cfrac(e.digits), Fraction(q, p));
    ASSERT_TRUE(satisfies_invariants(e));
    const auto ref = oracle::approximants(p, q);
    ASSERT_EQ(ref.size(), e.approximants.size());
    for (std::size_t j = 0; j < ref.size(); ++j) {
      ASSERT_EQ(e.approximants[j].m, ref[j].m);
      ASSERT_EQ(e.approximants[j].n, ref[j].n);
    }
    EXPECT_EQ(approximant_pairs(e), e.approximants);
  }
}

TEST(CfracProperties, DeterminantIdentity) {
  for (const auto& [p, q] : oracle::coprime_pairs(200)) {
    const auto e = hj_expand(p, q);
    const std::size_t k = e.length();
    for (std::size_t j = 0; j <= k; ++j) ASSERT_EQ(approximant_determinant(e.approximants, j), 1);
    EXPECT_EQ(approximant_determinant(e.approximants, k + 1), q);
    EXPECT_EQ(e.approximant(k + 1), (Approximant{q, p}));
  }
}

TEST(CfracProperties, MonotoneAndTwoPrefix) {
  for (const auto& [p, q] : oracle::coprime_pairs(60)) {
    const auto e = hj_expand(p, q);
    bool prefix = true;
    for (std::size_t j = 1; j <= e.length(); ++j) {
      const auto step = e.approximant(j + 1).m - e.approximant(j).m;
      ASSERT_GT(step, 0);
      prefix = prefix && e.digits[j - 1] == 2;
      // unit steps exactly along an all-two prefix of the digits
      ASSERT_EQ(step == 1, prefix) << p << "/" << q << " j=" << j;
    }
    const bool all_two = std::all_of(e.digits.begin(), e.digits.end(), [](auto d) { return d == 2; });
    EXPECT_EQ(all_two, p == q - 1);
  }
}

TEST(CfracProperties, InvariantsDetectCorruption) {
  auto e = hj_expand(3, 7);
  e.approximants[2].n += 1;
  EXPECT_FALSE(satisfies_invariants(e));
}
