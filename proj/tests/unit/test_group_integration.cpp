#include <cmath>

#include <gtest/gtest.h>

#include "envalg/group_integration.hpp"

using namespace envalg;

namespace {

Scalar q(long a, long b = 1) { return Scalar(Rational(a, b)); }

}  // namespace

TEST(GroupIntegration, MatrixExp) {
  EXPECT_NEAR((matrix_exp(Eigen::MatrixXcd::Zero(3, 3)) - Eigen::MatrixXcd::Identity(3, 3)).norm(), 0.0, 1e-15);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 0.5;
  d(1, 1) = std::complex<double>(-1.0, 2.0);
  Eigen::MatrixXcd e = matrix_exp(d);
  EXPECT_NEAR(std::abs(e(0, 0) - std::exp(0.5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e(1, 1) - std::exp(std::complex<double>(-1.0, 2.0))), 0.0, 1e-14);
  EXPECT_THROW(matrix_exp(Eigen::MatrixXcd::Zero(2, 3)), std::invalid_argument);
  Eigen::MatrixXcd nan = Eigen::MatrixXcd::Zero(2, 2);
  nan(0, 1) = std::nan("");
  EXPECT_THROW(matrix_exp(nan), std::invalid_argument);
}

TEST(GroupIntegration, SkewHermitianExponentialsAreUnitary) {
  for (unsigned n : {2u, 4u, 8u, 16u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      MatrixRep rep = random_skew_rep(n, seed);
      Eigen::MatrixXcd a = rep.generators()[0] * 3.0;
      EXPECT_LE(unitarity_residual(matrix_exp(a)), 1e-10);
    }
  }
}

TEST(GroupIntegration, MatrixCoefficients) {
  MatrixRep rep = MatrixRep::su2_spin(1);
  for (double t : {0.0, 0.3, -1.7, 2.5}) {
    GroupSample s = make_sample(rep, {{GVector({q(0), q(0), Scalar(rational_from_double(t))})}});
    std::complex<double> phi = matrix_coefficient(s)[0];
    EXPECT_NEAR(std::abs(phi - std::exp(std::complex<double>(0, -t / 2))), 0.0, 1e-14);
  }
  GroupSample s = sample_group(rep, 10, 4);
  std::vector<GroupElement> inverses;
  for (const auto& g : s.elements) {
    std::vector<GVector> word;
    for (auto it = g.word.rbegin(); it != g.word.rend(); ++it) word.push_back(-*it);
    inverses.push_back(group_element(*s.rep, word));
  }
  GroupSample inv{s.rep, inverses};
  auto phi = matrix_coefficient(s), phi_inv = matrix_coefficient(inv);
  for (std::size_t k = 0; k < phi.size(); ++k) {
    EXPECT_LE(std::abs(phi[k]), 1.0 + 1e-12);
    EXPECT_NEAR(std::abs(phi_inv[k] - std::conj(phi[k])), 0.0, 1e-12);
  }
}

TEST(GroupIntegration, KernelChecks) {
  MatrixRep rep = MatrixRep::su2_spin(1);
  GroupSample single = make_sample(rep, {{GVector(3)}});
  KernelReport k1 = pd_kernel_check(single, 1e-10);
  EXPECT_TRUE(k1.passed);
  EXPECT_NEAR(std::abs(k1.kernel(0, 0) - 1.0), 0.0, 1e-15);

  GroupSample s = sample_group(rep, 20, 1);
  EXPECT_TRUE(pd_kernel_check(s, 1e-10).passed);

  // duplicated elements make K singular but still PSD
  GroupSample dup = s;
  dup.elements.insert(dup.elements.end(), s.elements.begin(), s.elements.begin() + 5);
  KernelReport kd = pd_kernel_check(dup, 1e-10);
  EXPECT_TRUE(kd.passed);
  EXPECT_NEAR(kd.min_eigenvalue, 0.0, 1e-10);

  GroupSample broken = s;
  broken.elements[0].matrix *= 2.0;
  EXPECT_THROW(pd_kernel_check(broken, 1e-10), std::invalid_argument);
}

TEST(GroupIntegration, SampleIsReproducible) {
  MatrixRep rep = MatrixRep::su2_spin(2);
  GroupSample a = sample_group(rep, 5, 9), b = sample_group(rep, 5, 9);
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(a.elements[k].word, b.elements[k].word);
    EXPECT_EQ(a.elements[k].matrix, b.elements[k].matrix);
  }
}

TEST(GroupIntegration, LocalHomomorphism) {
  const std::vector<double> scales{0.2, 0.1, 0.05, 0.025};
  MatrixRep su2 = MatrixRep::su2_spin(1);
  const GVector x({q(1, 2), q(1, 3), q(0)}), y({q(0), q(1, 5), q(-1, 2)});
  LocalHomReport zero = local_hom_check(su2, x, GVector(3), 4, scales);
  EXPECT_TRUE(zero.passed);
  EXPECT_TRUE(zero.exact);
  for (unsigned n : {2u, 3u, 4u}) {
    LocalHomReport r = local_hom_check(su2, x, y, n, scales);
    EXPECT_TRUE(r.passed) << n;
    ASSERT_TRUE(r.slope.has_value());
    EXPECT_GE(*r.slope, n + 0.5);
  }
  LocalHomReport h = local_hom_check(MatrixRep::heisenberg_upper(), GVector({q(1), q(1, 2), q(0)}),
                                     GVector({q(0), q(1), q(-1)}), 2, scales);
  EXPECT_TRUE(h.passed);
  for (const auto& row : h.rows) EXPECT_LE(row.error, 1e-13);
}

TEST(GroupIntegration, BchRoutesAgreeInMatrixRep) {
  MatrixRep rep = MatrixRep::su2_spin(2);
  const LieAlgebra& g = rep.algebra();
  const GVector x({q(1, 20), q(-1, 30), q(1, 40)}), y({q(1, 25), q(1, 50), q(-1, 20)});
  Eigen::MatrixXcd lhs = matrix_exp(rep.of(x)) * matrix_exp(rep.of(y));
  double prev = 1.0;
  for (unsigned n = 1; n <= 6; ++n) {
    double err = (matrix_exp(rep.of(bch_in_g(g, x, y, n))) - lhs).norm();
    EXPECT_LE(err, prev * 1.0001);
    prev = err;
  }
  EXPECT_LE(prev, 1e-12);
}

TEST(GroupIntegration, CauchyEstimates) {
  MatrixRep rep = MatrixRep::su2_spin(1);
  CauchyReport c = cauchy_estimate_check(rep, {0.0, 0.0, 1.0}, 1.0, 12);
  EXPECT_TRUE(c.passed);
  ASSERT_EQ(c.rows.size(), 13u);
  EXPECT_GE(c.c, 1.0);
  for (const auto& row : c.rows) EXPECT_NEAR(row.lhs, std::pow(0.5, row.n), 1e-14);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_TRUE(cauchy_estimate_check(random_skew_rep(4, seed), {1.0}, 1.0, 12).passed);
  }
  EXPECT_THROW(cauchy_estimate_check(MatrixRep::heisenberg_upper(), {1.0, 0.0, 0.0}, 1.0, 4), std::invalid_argument);
}

TEST(GroupIntegration, ExtensionSpinHalf) {
  MatrixRep rep = MatrixRep::su2_spin(1);
  std::vector<GVector> probes{GVector(3), GVector({q(1, 2), q(0), q(0)}), GVector({q(0), q(3, 10), q(2, 5)})};
  ExtensionReport r = extension_demo(rep, {2, 4, 6}, probes);
  EXPECT_TRUE(r.non_increasing);
  EXPECT_LE(r.levels.back().max_deviation, 1e-6);
  for (const auto& level : r.levels) EXPECT_NEAR(std::abs(level.probes[0].approx - 1.0), 0.0, 1e-14);
}

TEST(GroupIntegration, ExtensionGaussian) {
  std::vector<GVector> probes;
  for (int k = -4; k <= 4; ++k) probes.push_back(GVector({q(k, 4)}));
  auto truth = [](const GVector& x) {
    const double t = to_double(x[0].re());
    return std::complex<double>(std::exp(-t * t / 2), 0.0);
  };
  ExtensionReport r = extension_demo(gaussian_functional(16), truth, {4, 6, 8}, probes);
  ASSERT_EQ(r.levels.size(), 3u);
  EXPECT_GT(r.levels[0].max_deviation, r.levels[1].max_deviation);
  EXPECT_GT(r.levels[1].max_deviation, r.levels[2].max_deviation);
  EXPECT_THROW(extension_demo(gaussian_functional(6), truth, {4}, probes), std::invalid_argument);
}

TEST(GroupIntegration, GaussianFunctional) {
  FunctionalTable g = gaussian_functional(8);
  EXPECT_EQ(g.value(MultiIndex{0}), q(1));
  EXPECT_EQ(g.value(MultiIndex{2}), q(-1));
  EXPECT_EQ(g.value(MultiIndex{4}), q(3));
  EXPECT_EQ(g.value(MultiIndex{6}), q(-15));
  EXPECT_EQ(g.value(MultiIndex{3}), q(0));
}
