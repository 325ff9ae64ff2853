#include <gtest/gtest.h>

#include "envalg/exact_matrix.hpp"
#include "envalg/scalar.hpp"

using namespace envalg;

TEST(Scalar, ParseAndFormat) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(format_rational(Rational(4, 2)), "2");
  EXPECT_EQ(format_rational(Rational(-1, 3)), "-1/3");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Scalar, GaussianArithmeticIsExact) {
  const Scalar i = Scalar::i();
  EXPECT_EQ(i * i, Scalar(-1));
  const Scalar z(Rational(1, 2), Rational(-1, 3));
  EXPECT_EQ(z * z.conj(), Scalar(z.norm_sq()));
  EXPECT_EQ((z / z), Scalar(1));
  EXPECT_EQ(z.norm_sq(), Rational(13, 36));
  EXPECT_EQ(Scalar(Rational(2, 4)).re(), Rational(1, 2));
}

TEST(Scalar, RationalFromDoubleIsExact) {
  EXPECT_EQ(rational_from_double(0.375), Rational(3, 8));
  EXPECT_EQ(to_double(rational_from_double(0.1)), 0.1);
  EXPECT_THROW(rational_from_double(std::nan("")), std::invalid_argument);
}

TEST(Scalar, Factorial) {
  EXPECT_EQ(factorial(0), Rational(1));
  EXPECT_EQ(factorial(10), Rational(3628800));
}

TEST(Scalar, SqrtSumComparison) {
  // sqrt(9) <= sqrt(4) + 1*sqrt(1)
  EXPECT_TRUE(sqrt_sum_le(Rational(9), Rational(4), Rational(1), 1));
  EXPECT_FALSE(sqrt_sum_le(Rational(10), Rational(4), Rational(1), 1));
  EXPECT_TRUE(sqrt_sum_le(Rational(2), Rational(0), Rational(1, 2), 2));
}

TEST(ExactMatrix, FactorHermitianDetectsIndefinite) {
  ExactMatrix m(2, 2);
  m(0, 0) = Scalar(1);
  m(1, 1) = Scalar(Rational(-1, 1000));
  HermitianFactorization f = factor_hermitian(m);
  EXPECT_FALSE(f.psd);
  ASSERT_TRUE(f.witness.has_value());
  EXPECT_LT(form(m, *f.witness, *f.witness).re(), Rational(0));
}

TEST(ExactMatrix, FactorHermitianRankAndNullSpace) {
  // [[1, i], [-i, 1]] has rank 1 and null vector (-i, 1)
  ExactMatrix m(2, 2);
  m(0, 0) = Scalar(1);
  m(0, 1) = Scalar::i();
  m(1, 0) = -Scalar::i();
  m(1, 1) = Scalar(1);
  HermitianFactorization f = factor_hermitian(m);
  EXPECT_TRUE(f.psd);
  EXPECT_EQ(f.rank, 1u);
  ASSERT_EQ(f.null_basis.size(), 1u);
  ExactVector mv = m * f.null_basis[0];
  for (const auto& c : mv) EXPECT_TRUE(c.is_zero());
}

TEST(ExactMatrix, RejectsNonHermitian) {
  ExactMatrix m(2, 2);
  m(0, 1) = Scalar(1);
  EXPECT_THROW(factor_hermitian(m), std::invalid_argument);
}
