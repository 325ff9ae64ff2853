#include <random>

#include <gtest/gtest.h>

#include "envalg/free_algebra.hpp"

using namespace envalg;

namespace {

FreeSeries X(unsigned n) { return FreeSeries::letter(2, n, 0); }
FreeSeries Y(unsigned n) { return FreeSeries::letter(2, n, 1); }
FreeSeries one(unsigned n) { return FreeSeries::constant(2, n, Scalar(1)); }
Scalar q(long a, long b = 1) { return Scalar(Rational(a, b)); }

FreeSeries random_series(unsigned n, std::mt19937_64& rng, bool constant) {
  std::uniform_int_distribution<long> coef(-3, 3), len(constant ? 0 : 1, n), letter(0, 1);
  FreeSeries s(2, n);
  for (int t = 0; t < 6; ++t) {
    std::vector<unsigned> w(len(rng));
    for (auto& l : w) l = static_cast<unsigned>(letter(rng));
    s.add_term(Word(w), q(coef(rng), 2));
  }
  return s;
}

}  // namespace

TEST(FreeAlgebra, Products) {
  EXPECT_EQ((one(2) + X(2)) * (one(2) - X(2)), one(2) - X(2) * X(2));
  EXPECT_NE(X(2) * Y(2), Y(2) * X(2));
  FreeSeries s = (X(2) + Y(2)) * (X(2) + Y(2));
  EXPECT_EQ(s.terms().size(), 4u);
  EXPECT_EQ(s.coefficient(Word{1, 0}), q(1));
  // words beyond the truncation vanish
  EXPECT_TRUE((X(1) * Y(1)).is_zero());
}

TEST(FreeAlgebra, MismatchedSeriesRejected) {
  EXPECT_THROW(X(2) * X(3), std::invalid_argument);
  EXPECT_THROW(FreeSeries::letter(3, 2, 0) + X(2), std::invalid_argument);
}

TEST(FreeAlgebra, ExpOfSingleLetter) {
  FreeSeries e = exp(X(3));
  EXPECT_EQ(e.coefficient(Word{}), q(1));
  EXPECT_EQ(e.coefficient(Word{0, 0}), q(1, 2));
  EXPECT_EQ(e.coefficient(Word{0, 0, 0}), q(1, 6));
  EXPECT_EQ(exp(FreeSeries(2, 3)), one(3));
  EXPECT_THROW(exp(one(3)), std::invalid_argument);
}

TEST(FreeAlgebra, ExpOfSumMatchesDirectExpansion) {
  FreeSeries expected = one(2) + X(2) + Y(2);
  for (unsigned a = 0; a < 2; ++a)
    for (unsigned b = 0; b < 2; ++b) expected.add_term(Word{a, b}, q(1, 2));
  EXPECT_EQ(exp(X(2) + Y(2)), expected);
}

TEST(FreeAlgebra, Log) {
  EXPECT_TRUE(log(one(4)).is_zero());
  for (unsigned n = 1; n <= 6; ++n) EXPECT_EQ(log(exp(X(n))), X(n));
  FreeSeries l = log(one(3) + X(3));
  EXPECT_EQ(l, X(3) - q(1, 2) * (X(3) * X(3)) + q(1, 3) * (X(3) * X(3) * X(3)));
  EXPECT_THROW(log(X(3)), std::invalid_argument);
}

TEST(FreeAlgebra, RandomInversePairsAndAssociativity) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned n = 1 + trial % 6;
    FreeSeries a = random_series(n, rng, false), b = random_series(n, rng, false), c = random_series(n, rng, true);
    EXPECT_EQ(log(exp(a)), a);
    EXPECT_EQ(exp(log(one(n) + b)), one(n) + b);
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(FreeAlgebra, BchLowDegrees) {
  FreeSeries z = bch_series(3);
  EXPECT_EQ(z.homogeneous_part(1), X(3) + Y(3));
  FreeSeries deg2(2, 3);
  deg2.add_term(Word{0, 1}, q(1, 2));
  deg2.add_term(Word{1, 0}, q(-1, 2));
  EXPECT_EQ(z.homogeneous_part(2), deg2);
  FreeSeries deg3(2, 3);
  deg3.add_term(Word{0, 0, 1}, q(1, 12));
  deg3.add_term(Word{0, 1, 0}, q(-2, 12));
  deg3.add_term(Word{1, 0, 0}, q(1, 12));
  deg3.add_term(Word{0, 1, 1}, q(1, 12));
  deg3.add_term(Word{1, 0, 1}, q(-2, 12));
  deg3.add_term(Word{1, 1, 0}, q(1, 12));
  EXPECT_EQ(z.homogeneous_part(3), deg3);
}

TEST(FreeAlgebra, BchWithYZeroIsX) {
  for (unsigned n = 1; n <= 6; ++n) {
    FreeSeries z = bch_series(n);
    FreeSeries only_x(2, n);
    for (const auto& [w, c] : z.terms())
      if (w.count(1) == 0) only_x.add_term(w, c);
    EXPECT_EQ(only_x, X(n));
  }
}

TEST(FreeAlgebra, BidegreeProjection) {
  FreeSeries a = X(2) * Y(2) + X(2) * X(2);
  EXPECT_EQ(bidegree_part(a, 1, 1), X(2) * Y(2));
  EXPECT_EQ(bidegree_part(exp(X(3)), 2, 0), q(1, 2) * (X(3) * X(3)));
  for (unsigned n = 2; n <= 6; ++n) {
    FreeSeries t = bidegree_part(bch_series(n), 1, 1);
    EXPECT_EQ(t, q(1, 2) * (X(n) * Y(n) - Y(n) * X(n)));
  }
  EXPECT_THROW(bidegree_part(FreeSeries::letter(3, 2, 0), 1, 0), std::invalid_argument);
}

TEST(FreeAlgebra, BidegreeDecompositionSumsToWhole) {
  FreeSeries z = exp(bch_series(5));
  FreeSeries sum(2, 5);
  for (unsigned m = 0; m <= 5; ++m)
    for (unsigned n = 0; m + n <= 5; ++n) sum += bidegree_part(z, m, n);
  EXPECT_EQ(sum, z);
}

TEST(FreeAlgebra, ExpIdentity) {
  for (auto [m, n] : {std::pair{1u, 0u}, {1u, 1u}, {2u, 1u}, {0u, 3u}}) {
    ExpIdentityReport r = check_exp_identity(m, n);
    EXPECT_TRUE(r.passed()) << m << "," << n;
    EXPECT_EQ(r.lhs, r.rhs);
  }
  ExpIdentityReport r = check_exp_identity(2, 1);
  EXPECT_EQ(r.lhs.coefficient(Word{0, 0, 1}), q(1, 2));
}
