#include <gtest/gtest.h>

#include <random>

#include "hjale/exact_lp.hpp"

using namespace hjale;

namespace {
RationalMatrix row(std::vector<Fraction> r) { return RationalMatrix::from_rows({r}, r.size()); }
}  // namespace

TEST(Rank, Basics) {
  EXPECT_EQ(rank(RationalMatrix(0, 3)), 0u);
  EXPECT_EQ(rank(row({Fraction(0), Fraction(0)})), 0u);
  EXPECT_EQ(rank(row({Fraction(-1), Fraction(1)})), 1u);
  const auto m = RationalMatrix::from_rows({{Fraction(1), Fraction(2)}, {Fraction(2), Fraction(4)}, {Fraction(0), Fraction(1)}}, 2);
  EXPECT_EQ(rank(m), 2u);
}

TEST(PositiveKernel, Examples) {
  const auto w = positive_kernel_vector(row({Fraction(-1), Fraction(1)}));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (std::vector<Fraction>{Fraction(1), Fraction(1)}));
  EXPECT_FALSE(positive_kernel_vector(row({Fraction(-1), Fraction(-1)})));
  EXPECT_FALSE(positive_kernel_vector(RationalMatrix(1, 0)));
  const auto empty = positive_kernel_vector(RationalMatrix(0, 0));
  ASSERT_TRUE(empty);
  EXPECT_TRUE(empty->empty());
  EXPECT_FALSE(positive_kernel_vector(row({Fraction(1), Fraction(0)})));
  EXPECT_TRUE(positive_kernel_vector(row({Fraction(0), Fraction(0)})));
}

TEST(PositiveKernel, WitnessIsExact) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> entry(-3, 3);
  int found = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t r = 1 + rng() % 3;
    const std::size_t c = 1 + rng() % 5;
    RationalMatrix m(r, c);
    bool has_pos = false;
    bool has_neg = false;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) m(i, j) = Fraction(entry(rng), 1 + static_cast<std::int64_t>(rng() % 3));
    }
    const auto w = positive_kernel_vector(m);
    if (w) {
      ++found;
      for (const auto& x : *w) ASSERT_GT(x, Fraction(0));
      for (const auto& x : m.apply(*w)) ASSERT_EQ(x, Fraction(0));
    }
    // Single rows: positive kernel iff the row is zero or has both signs.
    if (r == 1) {
      for (std::size_t j = 0; j < c; ++j) {
        has_pos = has_pos || m(0, j) > Fraction(0);
        has_neg = has_neg || m(0, j) < Fraction(0);
      }
      ASSERT_EQ(w.has_value(), has_pos == has_neg);
    }
    // Negation never changes the answer.
    ASSERT_EQ(w.has_value(), positive_kernel_vector(m.negated()).has_value());
  }
  EXPECT_GT(found, 0);
}
