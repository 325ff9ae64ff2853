#include <gtest/gtest.h>

#include "envalg/gns.hpp"
#include "envalg/group_integration.hpp"

using namespace envalg;

namespace {

Scalar q(long a, long b = 1) { return Scalar(Rational(a, b)); }
MultiIndex mi(std::initializer_list<unsigned> e) { return MultiIndex(e); }

// Gram matrix <R^b v, R^a v>_H of the orbit vectors over the model's monomials.
ExactMatrix orbit_gram(const MatrixRep& rep, const std::vector<MultiIndex>& monomials) {
  std::vector<ExactVector> orbit;
  for (const auto& alpha : monomials) {
    ExactVector w = rep.exact_cyclic();
    auto letters = alpha.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) w = rep.exact_generators()[*it] * w;
    orbit.push_back(std::move(w));
  }
  ExactMatrix g(orbit.size(), orbit.size());
  for (std::size_t a = 0; a < orbit.size(); ++a)
    for (std::size_t b = 0; b < orbit.size(); ++b) g(a, b) = form(rep.exact_metric(), orbit[b], orbit[a]);
  return g;
}

}  // namespace

TEST(Gns, SpinHalfFunctionalValues) {
  MatrixRep rep = MatrixRep::su2_spin(1);
  EXPECT_TRUE(validate_rep(rep).passed());
  FunctionalTable lambda = functional_from_rep(rep, 4);
  EXPECT_EQ(lambda.value(mi({0, 0, 0})), Scalar(1));
  EXPECT_EQ(lambda.value(mi({0, 0, 1})), Scalar(Rational(0), Rational(-1, 2)));
  EXPECT_EQ(lambda.value(mi({0, 0, 2})), q(-1, 4));
}

TEST(Gns, SpinRepresentationsAreValid) {
  for (unsigned two_j = 1; two_j <= 4; ++two_j) {
    RepValidation v = validate_rep(MatrixRep::su2_spin(two_j));
    EXPECT_TRUE(v.passed()) << two_j;
    EXPECT_EQ(v.hom_residual, 0.0);
  }
  RepValidation h = validate_rep(MatrixRep::heisenberg_upper());
  EXPECT_TRUE(h.homomorphism);
}

TEST(Gns, HomomorphismViolationIsRejected) {
  auto g = std::make_shared<const LieAlgebra>(LieAlgebra::so3());
  // three copies of the same generator do not satisfy [R1,R2] = R3
  ExactMatrix a(2, 2);
  a(0, 0) = Scalar(Rational(0), Rational(1));
  a(1, 1) = Scalar(Rational(0), Rational(-1));
  MatrixRep rep(g, std::vector<ExactMatrix>{a, a, a}, ExactVector{q(1), q(0)});
  RepValidation v = validate_rep(rep);
  EXPECT_FALSE(v.homomorphism);
  EXPECT_THROW(functional_from_rep(rep, 2), std::invalid_argument);
}

TEST(Gns, MomentMatrix) {
  FunctionalTable lambda = functional_from_rep(MatrixRep::su2_spin(1), 4);
  EXPECT_EQ(moment_matrix(lambda, 0).matrix(0, 0), lambda.value(mi({0, 0, 0})));
  MomentMatrix m1 = moment_matrix(lambda, 1);
  EXPECT_TRUE(m1.hermitian);
  ASSERT_EQ(m1.monomials[1], mi({1, 0, 0}));
  EXPECT_EQ(m1.matrix(1, 1), q(1, 4));
  EXPECT_THROW(moment_matrix(lambda, 3), std::invalid_argument);

  MomentMatrix gauss = moment_matrix(gaussian_functional(4), 2);
  const long expected[3][3] = {{1, 0, -1}, {0, 1, 0}, {-1, 0, 3}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) EXPECT_EQ(gauss.matrix(a, b), q(expected[a][b]));
}

TEST(Gns, PsdCheck) {
  EXPECT_TRUE(psd_check(ExactMatrix::identity(4)).passed);
  EXPECT_TRUE(psd_check(Eigen::MatrixXcd::Identity(4, 4), 1e-10).passed);

  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1e-3;
  PsdReport r = psd_check(d, 1e-10);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NEAR(std::abs((*r.witness)(0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs((*r.witness)(1)), 1.0, 1e-12);
  EXPECT_LT(r.witness_value, -1e-10);

  ExactMatrix e(2, 2);
  e(0, 0) = q(1);
  e(1, 1) = q(-1, 1000);
  PsdReport re = psd_check(e);
  EXPECT_FALSE(re.passed);
  ASSERT_TRUE(re.exact_witness.has_value());
  EXPECT_TRUE((*re.exact_witness)[0].is_zero());

  Eigen::MatrixXcd asym = Eigen::MatrixXcd::Zero(2, 2);
  asym(0, 1) = 1.0;
  EXPECT_THROW(psd_check(asym, 1e-10), std::invalid_argument);
}

TEST(Gns, GaussianHankelMomentsArePsd) {
  for (unsigned d = 0; d <= 5; ++d) {
    MomentMatrix m = moment_matrix(gaussian_functional(2 * d), d);
    EXPECT_TRUE(psd_check(m.matrix).passed) << d;
    EXPECT_TRUE(psd_check(m.matrix.to_complex(), 1e-10).passed) << d;
  }
}

TEST(Gns, FunctionalsFromSkewRepsArePositive) {
  for (unsigned two_j = 1; two_j <= 3; ++two_j) {
    MatrixRep rep = MatrixRep::su2_spin(two_j);
    FunctionalTable lambda = functional_from_rep(rep, 6);
    for (unsigned d = 0; d <= 3; ++d) EXPECT_TRUE(psd_check(moment_matrix(lambda, d).matrix).passed);
    AnalyticReport a = analytic_diagnostics(lambda, GVector({q(1, 2), q(-1, 3), q(1)}), 3, {0.25}, false);
    EXPECT_TRUE(a.positive);
  }
}

TEST(Gns, GnsBuildSpinHalf) {
  MatrixRep rep = MatrixRep::su2_spin(1);
  GnsModel m = gns_build(functional_from_rep(rep, 4), 2);
  EXPECT_EQ(m.quotient_rank, 2u);
  EXPECT_TRUE(m.skew_exact());
  EXPECT_EQ(m.gram, orbit_gram(rep, m.monomials));
  EXPECT_EQ(m.operators.size(), 3u);
  EXPECT_EQ(m.operators[0].rows(), m.monomials.size());
  EXPECT_EQ(m.operators[0].cols(), m.inner_count);
}

TEST(Gns, QuotientRankRecoversSpinDimension) {
  for (unsigned two_j = 1; two_j <= 3; ++two_j) {
    MatrixRep rep = MatrixRep::su2_spin(two_j);
    const unsigned d = std::max(2u, two_j);
    GnsModel m = gns_build(functional_from_rep(rep, 2 * d), d);
    EXPECT_EQ(m.quotient_rank, two_j + 1u) << two_j;
    EXPECT_EQ(m.gram, orbit_gram(rep, m.monomials));
    EXPECT_TRUE(m.skew_exact());
  }
}

TEST(Gns, DeltaFunctionalHasRankOne) {
  auto g = std::make_shared<const LieAlgebra>(LieAlgebra::abelian(1));
  GnsModel m = gns_build(FunctionalTable::delta(g, 4), 2);
  EXPECT_EQ(m.quotient_rank, 1u);
  Eigen::MatrixXcd basis = m.orthonormal_basis();
  Eigen::MatrixXcd op = m.operators[0].to_complex();
  // rho(x) on the quotient: project x*[1] onto the quotient basis
  Eigen::MatrixXcd gram = m.gram.to_complex();
  Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(m.monomials.size(), m.monomials.size());
  padded.leftCols(m.inner_count) = op;
  EXPECT_NEAR((basis.adjoint() * gram * padded * basis).norm(), 0.0, 1e-15);
}

TEST(Gns, NonPositiveFunctionalIsRejected) {
  auto g = std::make_shared<const LieAlgebra>(LieAlgebra::abelian(1));
  FunctionalTable bad(g, 2);
  bad.set(mi({0}), q(1));
  bad.set(mi({2}), q(1));  // <[x],[x]> = -lambda(x^2) = -1
  EXPECT_FALSE(psd_check(moment_matrix(bad, 1).matrix).passed);
  EXPECT_THROW(gns_build(bad, 1), std::domain_error);
  AnalyticReport a = analytic_diagnostics(bad, GVector({q(1)}), 1, {0.25}, false);
  EXPECT_FALSE(a.positive);
  ASSERT_TRUE(a.negative_witness.has_value());
  EXPECT_EQ(*a.negative_witness, 1u);
}

TEST(Gns, AnalyticDiagnosticsSpinHalf) {
  FunctionalTable lambda = functional_from_rep(MatrixRep::su2_spin(1), 12);
  AnalyticReport a = analytic_diagnostics(lambda, GVector::basis(3, 2), 6, {1.0}, false);
  EXPECT_TRUE(a.positive);
  for (unsigned n = 0; n <= 6; ++n) EXPECT_EQ(a.s_sq[n], Rational(1, 1u << (2 * n)));
  // partial sums of sum lambda(e3^n) t^n / n! approach e^{-it/2}
  std::complex<double> sum = 0, term = 1;
  for (unsigned n = 0; n <= 12; ++n) {
    if (n > 0) term /= static_cast<double>(n);
    sum += lambda.value(mi({0, 0, n})).to_complex() * term;
  }
  EXPECT_NEAR(std::abs(sum - std::exp(std::complex<double>(0, -0.5))), 0.0, 1e-12);
}

TEST(Gns, AnalyticDiagnosticsFactorTwo) {
  auto g = std::make_shared<const LieAlgebra>(LieAlgebra::abelian(1));
  FunctionalTable lambda(g, 24);
  for (unsigned n = 0; n <= 12; ++n) lambda.set(mi({2 * n}), Scalar(factorial(2 * n) * (n % 2 ? -1 : 1)));
  AnalyticReport a = analytic_diagnostics(lambda, GVector({q(1)}), 12);
  EXPECT_TRUE(a.positive);
  ASSERT_TRUE(a.functional_radius.has_value());
  EXPECT_NEAR(*a.functional_radius, 1.0, 1e-12);
  EXPECT_GT(a.vector_radius, 0.5);
  EXPECT_LT(a.vector_radius, 0.6);
}
