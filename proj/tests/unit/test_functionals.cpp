#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "envalg/functionals.hpp"
#include "envalg/gns.hpp"
#include "envalg/group_integration.hpp"

using namespace envalg;

namespace {

Scalar q(long a, long b = 1) { return Scalar(Rational(a, b)); }
MultiIndex mi(std::initializer_list<unsigned> e) { return MultiIndex(e); }

std::shared_ptr<const LieAlgebra> heis() { return std::make_shared<const LieAlgebra>(LieAlgebra::heisenberg()); }
std::shared_ptr<const LieAlgebra> so3() { return std::make_shared<const LieAlgebra>(LieAlgebra::so3()); }
std::shared_ptr<const LieAlgebra> line() { return std::make_shared<const LieAlgebra>(LieAlgebra::abelian(1)); }

FunctionalTable line_table(unsigned degree, const std::function<Scalar(unsigned)>& value) {
  FunctionalTable t(line(), degree);
  for (unsigned n = 0; n <= degree; ++n) t.set(mi({n}), value(n));
  return t;
}

// ||(i_{e_i}^k beta)_n^s||_p / w_i by explicit permutation sums over reduced words.
Rational brute_insertion_sq(const FunctionalTable& lambda, unsigned n) {
  const LieAlgebra& g = lambda.algebra();
  const unsigned d = g.dim();
  Rational best(0);
  std::size_t tuples = 1;
  for (unsigned t = 0; t < n; ++t) tuples *= d;
  for (unsigned k = 1; k <= n + 1; ++k) {
    for (unsigned i = 0; i < d; ++i) {
      for (std::size_t idx = 0; idx < tuples; ++idx) {
        std::vector<unsigned> xs(n);
        std::size_t rest = idx;
        for (unsigned t = n; t-- > 0;) {
          xs[t] = static_cast<unsigned>(rest % d);
          rest /= d;
        }
        std::vector<unsigned> perm(n);
        std::iota(perm.begin(), perm.end(), 0u);
        Scalar sum;
        long count = 0;
        do {
          std::vector<unsigned> w;
          for (unsigned t = 0; t < n; ++t) w.push_back(xs[perm[t]]);
          w.insert(w.begin() + (k - 1), i);
          sum += eval(lambda, g.reduce(w));
          ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        Scalar avg = sum / Scalar(count);
        Rational weight = g.weights()[i];
        for (unsigned l : xs) weight *= g.weights()[l];
        Rational ratio = avg.norm_sq() / (weight * weight);
        if (ratio > best) best = ratio;
      }
    }
  }
  return best;
}

}  // namespace

TEST(Functionals, EvalLinearityAndReduction) {
  FunctionalTable lambda = random_functional(heis(), 4, 1);
  const LieAlgebra& g = lambda.algebra();
  EXPECT_EQ(eval(lambda, PBWPoly::constant(3, Scalar(1))), lambda.value(mi({0, 0, 0})));
  PBWPoly a = g.reduce({0, 1, 1}), b = g.reduce({2, 0});
  EXPECT_EQ(eval(lambda, a + b), eval(lambda, a) + eval(lambda, b));
  EXPECT_EQ(eval(lambda, g.reduce({1, 0})), lambda.value(mi({1, 1, 0})) - lambda.value(mi({0, 0, 1})));
  EXPECT_THROW(eval(lambda, g.reduce({0, 0, 0, 0, 0})), std::invalid_argument);
}

TEST(Functionals, BetaComponents) {
  FunctionalTable lambda = random_functional(heis(), 4, 2);
  EXPECT_EQ(beta_component(lambda, 0).at(0), lambda.value(mi({0, 0, 0})));
  BetaComponent b2 = beta_component(lambda, 2);
  EXPECT_EQ(b2.at({1, 0}), lambda.value(mi({1, 1, 0})) - lambda.value(mi({0, 0, 1})));
  EXPECT_EQ(b2.at({0, 1}), lambda.value(mi({1, 1, 0})));
  BetaComponent s2 = symmetrize(b2);
  EXPECT_TRUE(s2.symmetric());
  EXPECT_EQ(s2.at({0, 1}), lambda.value(mi({1, 1, 0})) - lambda.value(mi({0, 0, 1})) * q(1, 2));
  EXPECT_EQ(symmetrize(beta_component(lambda, 1)), [&] {
    BetaComponent b = beta_component(lambda, 1);
    b.mark_symmetric();
    return b;
  }());
  EXPECT_THROW(beta_component(lambda, 5), std::invalid_argument);
}

TEST(Functionals, AbelianBetaIsSymmetric) {
  auto g = std::make_shared<const LieAlgebra>(LieAlgebra::abelian(2));
  FunctionalTable lambda = random_functional(g, 4, 3);
  for (unsigned n = 0; n <= 4; ++n) {
    BetaComponent b = beta_component(lambda, n);
    BetaComponent s = symmetrize(b);
    for (std::size_t idx = 0; idx < b.size(); ++idx) EXPECT_EQ(b.at(idx), s.at(idx));
  }
}

TEST(Functionals, SymmetrizedTableIsPermutationInvariantAndNormDecreases) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    FunctionalTable lambda = random_functional(so3(), 4, seed);
    for (unsigned n = 1; n <= 4; ++n) {
      BetaComponent b = beta_component(lambda, n);
      BetaComponent s = symmetrize(b);
      for (std::size_t idx = 0; idx < s.size(); ++idx) {
        std::vector<unsigned> letters = s.letters_of(idx);
        std::sort(letters.begin(), letters.end());
        EXPECT_EQ(s.at(idx), s.at(letters));
      }
      EXPECT_LE(pnorm(s, lambda.algebra()).squared, pnorm(b, lambda.algebra()).squared);
    }
  }
}

TEST(Functionals, PNorm) {
  FunctionalTable lambda = line_table(5, [](unsigned n) { return q(n % 2 ? -7 : 3, static_cast<long>(n) + 1); });
  for (unsigned n = 0; n <= 5; ++n) {
    EXPECT_EQ(pnorm(beta_component(lambda, n), lambda.algebra()).squared, lambda.value(mi({n})).norm_sq());
  }
  // doubling the weights scales ||beta_n|| by 2^-n
  auto g = so3();
  auto g2 = std::make_shared<const LieAlgebra>(g->with_weights({Rational(2), Rational(2), Rational(2)}));
  FunctionalTable a = random_functional(g, 3, 4);
  FunctionalTable b(g2, 3);
  for (const auto& [alpha, v] : a.values()) b.set(alpha, v);
  for (unsigned n = 0; n <= 3; ++n) {
    Rational scale(1, 1u << (2 * n));
    EXPECT_EQ(pnorm(beta_component(b, n), *g2).squared, pnorm(beta_component(a, n), *g).squared * scale);
  }
}

TEST(Functionals, PNormDominatesRandomBallSamples) {
  auto g = std::make_shared<const LieAlgebra>(LieAlgebra::abelian(2).with_weights({Rational(1), Rational(3, 2)}));
  FunctionalTable lambda = random_functional(g, 2, 8);
  BetaComponent b = beta_component(lambda, 2);
  const double bound = pnorm(b, *g).value();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto sample = [&] {
    std::array<double, 2> v{u(rng), u(rng)};
    const double p = std::abs(v[0]) * 1.0 + std::abs(v[1]) * 1.5;
    const double s = std::abs(u(rng)) / p;  // somewhere inside the unit ball
    return std::array<double, 2>{v[0] * s, v[1] * s};
  };
  for (int t = 0; t < 10000; ++t) {
    auto x = sample(), y = sample();
    std::complex<double> val = 0;
    for (unsigned i = 0; i < 2; ++i)
      for (unsigned j = 0; j < 2; ++j) val += x[i] * y[j] * b.at({i, j}).to_complex();
    EXPECT_LE(std::abs(val), bound * (1 + 1e-12));
  }
}

TEST(Functionals, RadiusEstimate) {
  FunctionalTable fact = line_table(10, [](unsigned n) { return Scalar(factorial(n)); });
  RadiusEstimate r = radius_estimate(fact);
  EXPECT_NEAR(r.radius, 1.0, 1e-12);
  EXPECT_EQ(radius_estimate(FunctionalTable::delta(so3(), 4)).radius, std::numeric_limits<double>::infinity());
}

TEST(Functionals, GaussianRadiusDiagnostics) {
  double prev_tail = 0.0;
  for (unsigned n = 2; n <= 12; n += 2) {
    RadiusEstimate r = radius_estimate(gaussian_functional(n));
    EXPECT_NEAR(r.radius, std::sqrt(2.0), 1e-12);  // max taken at n = 2
    EXPECT_GE(r.tail_radius, prev_tail);
    prev_tail = r.tail_radius;
  }
  EXPECT_GT(prev_tail, 2.0);
}

TEST(Functionals, RootTermsScaleWithConstant) {
  FunctionalTable lambda = random_functional(so3(), 3, 12);
  const Scalar c = q(9, 4);
  RadiusEstimate a = radius_estimate(lambda), b = radius_estimate(lambda.scaled(c));
  ASSERT_EQ(a.terms.size(), b.terms.size());
  for (std::size_t k = 0; k < a.terms.size(); ++k) {
    EXPECT_EQ(b.terms[k].norm_sq, a.terms[k].norm_sq * c.norm_sq());
    EXPECT_NEAR(b.terms[k].root, a.terms[k].root * std::pow(2.25, 1.0 / a.terms[k].n), 1e-12);
  }
}

TEST(Functionals, RegularAction) {
  auto g2 = std::make_shared<const LieAlgebra>(LieAlgebra::abelian(2));
  FunctionalTable a = random_functional(g2, 4, 6);
  FunctionalTable shifted = regular_act(a, GVector::basis(2, 1), Side::Right);
  EXPECT_EQ(shifted.max_degree(), 3u);
  for (const MultiIndex& alpha : monomials_up_to(2, 3)) {
    MultiIndex up = alpha;
    up.increment(1);
    EXPECT_EQ(shifted.value(alpha), a.value(up));
  }
  FunctionalTable h = random_functional(heis(), 3, 7);
  FunctionalTable rp = regular_act(h, GVector::basis(3, 0), Side::Right);
  EXPECT_EQ(rp.value(mi({0, 1, 0})), h.value(mi({1, 1, 0})) - h.value(mi({0, 0, 1})));
  FunctionalTable twice = regular_act(regular_act(h, GVector::basis(3, 2), Side::Left), GVector::basis(3, 1), Side::Right);
  EXPECT_EQ(twice.max_degree(), 1u);
  EXPECT_THROW(regular_act(FunctionalTable::delta(heis(), 0), GVector::basis(3, 0), Side::Left), std::invalid_argument);
}

TEST(Functionals, InsertionConstants) {
  FunctionalTable h = random_functional(heis(), 5, 21);
  EXPECT_EQ(insertion_constants(h, 0).squared, pnorm(beta_component(h, 1), h.algebra()).squared);
  for (unsigned n = 0; n <= 4; ++n) EXPECT_EQ(insertion_constants(h, n).squared, brute_insertion_sq(h, n)) << n;
  EXPECT_THROW(insertion_constants(h, 5), std::invalid_argument);

  auto g2 = std::make_shared<const LieAlgebra>(LieAlgebra::abelian(2));
  FunctionalTable a = random_functional(g2, 4, 22);
  for (unsigned n = 0; n <= 3; ++n) {
    BetaComponent next = beta_component(a, n + 1);
    for (unsigned i = 0; i < 2; ++i)
      for (unsigned k = 2; k <= n + 1; ++k) EXPECT_EQ(symmetrize(insert_argument(next, k, i)), symmetrize(insert_argument(next, 1, i)));
    EXPECT_LE(insertion_constants(a, n).squared, pnorm(symmetrize(next), *g2).squared);
  }
}

TEST(Functionals, RecursionCheck) {
  RecursionReport delta = recursion_check(FunctionalTable::delta(so3(), 5), 4);
  EXPECT_TRUE(delta.passed());
  for (const auto& row : delta.rows) EXPECT_EQ(sgn(row.c.squared), 0);

  EXPECT_TRUE(recursion_check(functional_from_rep(MatrixRep::su2_spin(1), 4), 3).passed());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_TRUE(recursion_check(random_functional(so3(), 5, seed), 4).passed()) << seed;
  }
  auto bad = std::make_shared<const LieAlgebra>(LieAlgebra::heisenberg().with_weights({Rational(1), Rational(1), Rational(3)}));
  EXPECT_THROW(recursion_check(FunctionalTable::delta(bad, 3), 2), std::invalid_argument);
}

TEST(Functionals, RandomFunctionalIsReproducible) {
  EXPECT_EQ(random_functional(so3(), 4, 5), random_functional(so3(), 4, 5));
  EXPECT_NE(random_functional(so3(), 4, 5), random_functional(so3(), 4, 6));
  EXPECT_EQ(random_functional(so3(), 4, 5).value(mi({0, 0, 0})), Scalar(1));
}

TEST(Functionals, NormGrowthReportsBothSequences) {
  NormGrowth g = norm_growth(functional_from_rep(MatrixRep::su2_spin(1), 4), 4, 0.5);
  ASSERT_EQ(g.full_norms.size(), 5u);
  for (std::size_t n = 0; n < 5; ++n) EXPECT_LE(g.sym_norms[n], g.full_norms[n] * (1 + 1e-15));
}
