#include "envalg/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace envalg {

// -------------------------------------------------------- FunctionalTable

FunctionalTable::FunctionalTable(std::shared_ptr<const LieAlgebra> algebra, unsigned max_degree)
    : algebra_(std::move(algebra)), max_degree_(max_degree) {
  if (!algebra_) throw std::invalid_argument("FunctionalTable requires a Lie algebra");
}

FunctionalTable FunctionalTable::delta(std::shared_ptr<const LieAlgebra> algebra, unsigned max_degree) {
  FunctionalTable t(std::move(algebra), max_degree);
  t.set(MultiIndex(t.algebra().dim()), Scalar(1));
  return t;
}

FunctionalTable random_functional(std::shared_ptr<const LieAlgebra> algebra, unsigned max_degree, std::uint64_t seed) {
  FunctionalTable t(std::move(algebra), max_degree);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  for (const auto& alpha : monomials_up_to(t.algebra().dim(), max_degree)) {
    if (alpha.degree() == 0) {
      t.set(alpha, Scalar(1));
      continue;
    }
    const long a = num(rng), b = den(rng);
    t.set(alpha, Scalar(Rational(a, b)));
  }
  return t;
}

Scalar FunctionalTable::value(const MultiIndex& alpha) const {
  auto it = values_.find(alpha);
  return it == values_.end() ? Scalar() : it->second;
}

void FunctionalTable::set(const MultiIndex& alpha, const Scalar& v) {
  if (alpha.dim() != algebra_->dim()) {
    throw std::invalid_argument(fmt::format("multi-index ({}) has wrong dimension for '{}'", alpha.to_string(), algebra_->name()));
  }
  if (alpha.degree() > max_degree_) {
    throw std::invalid_argument(fmt::format("monomial ({}) exceeds functional degree {}", alpha.to_string(), max_degree_));
  }
  if (v.is_zero()) {
    values_.erase(alpha);
  } else {
    values_[alpha] = v;
  }
}

FunctionalTable FunctionalTable::scaled(const Scalar& c) const {
  FunctionalTable out(algebra_, max_degree_);
  for (const auto& [alpha, v] : values_) out.set(alpha, v * c);
  return out;
}

FunctionalTable FunctionalTable::truncated(unsigned degree) const {
  FunctionalTable out(algebra_, std::min(degree, max_degree_));
  for (const auto& [alpha, v] : values_) {
    if (alpha.degree() <= out.max_degree_) out.set(alpha, v);
  }
  return out;
}

Scalar eval(const FunctionalTable& lambda, const PBWPoly& a) {
  if (a.dim() != lambda.algebra().dim()) throw std::invalid_argument("eval: dimension mismatch");
  Scalar sum;
  for (const auto& [alpha, c] : a.terms()) {
    if (alpha.degree() > lambda.max_degree()) {
      throw std::invalid_argument(fmt::format("eval: monomial ({}) of degree {} exceeds functional degree {}",
                                              alpha.to_string(), alpha.degree(), lambda.max_degree()));
    }
    auto it = lambda.values().find(alpha);
    if (it != lambda.values().end()) sum += c * it->second;
  }
  return sum;
}

// ---------------------------------------------------------- BetaComponent

BetaComponent::BetaComponent(unsigned dim, unsigned arity) : dim_(dim), arity_(arity) {
  std::size_t size = 1;
  for (unsigned i = 0; i < arity; ++i) {
    size *= dim;
    if (size > kMaxBetaTable) {
      throw std::length_error(fmt::format("beta component of arity {} over dimension {} exceeds {} entries", arity, dim, kMaxBetaTable));
    }
  }
  table_.resize(size);
}

std::size_t BetaComponent::index_of(const std::vector<unsigned>& letters) const {
  if (letters.size() != arity_) throw std::invalid_argument("letter tuple has wrong arity");
  std::size_t index = 0;
  for (unsigned l : letters) {
    if (l >= dim_) throw std::invalid_argument("letter outside basis");
    index = index * dim_ + l;
  }
  return index;
}

std::vector<unsigned> BetaComponent::letters_of(std::size_t index) const {
  std::vector<unsigned> letters(arity_);
  for (unsigned pos = arity_; pos-- > 0;) {
    letters[pos] = static_cast<unsigned>(index % dim_);
    index /= dim_;
  }
  return letters;
}

BetaComponent beta_component(const FunctionalTable& lambda, unsigned n) {
  if (n > lambda.max_degree()) {
    throw std::invalid_argument(fmt::format("beta_component: arity {} exceeds functional degree {}", n, lambda.max_degree()));
  }
  const LieAlgebra& g = lambda.algebra();
  BetaComponent beta(g.dim(), n);
  // depth-first over words, sharing the reduced prefix products
  std::size_t index = 0;
  auto walk = [&](auto&& self, const PBWPoly& prefix, unsigned depth) -> void {
    if (depth == n) {
      beta.at(index++) = eval(lambda, prefix);
      return;
    }
    for (unsigned letter = 0; letter < g.dim(); ++letter) {
      self(self, g.multiply_generator(prefix, letter), depth + 1);
    }
  };
  walk(walk, PBWPoly::constant(g.dim(), Scalar(1)), 0);
  return beta;
}

BetaComponent symmetrize(const BetaComponent& beta) {
  BetaComponent out(beta.dim(), beta.arity());
  if (beta.symmetric() || beta.arity() <= 1) {
    out = beta;
    out.mark_symmetric();
    return out;
  }
  // the S_n average of a word equals the mean over its distinct rearrangements
  std::map<std::vector<unsigned>, std::pair<Scalar, unsigned>> orbit_sums;
  std::vector<std::vector<unsigned>> keys(beta.size());
  for (std::size_t idx = 0; idx < beta.size(); ++idx) {
    std::vector<unsigned> key = beta.letters_of(idx);
    std::sort(key.begin(), key.end());
    auto& [sum, count] = orbit_sums[key];
    sum += beta.at(idx);
    ++count;
    keys[idx] = std::move(key);
  }
  for (std::size_t idx = 0; idx < beta.size(); ++idx) {
    const auto& [sum, count] = orbit_sums.at(keys[idx]);
    out.at(idx) = sum / Scalar(static_cast<long>(count));
  }
  out.mark_symmetric();
  return out;
}

double PNorm::value() const { return std::sqrt(to_double(squared)); }

PNorm pnorm(const BetaComponent& beta, const LieAlgebra& algebra) {
  if (beta.dim() != algebra.dim()) throw std::invalid_argument("pnorm: dimension mismatch");
  const auto& w = algebra.weights();
  PNorm norm;
  for (std::size_t idx = 0; idx < beta.size(); ++idx) {
    if (beta.at(idx).is_zero()) continue;
    Rational weight(1);
    for (unsigned l : beta.letters_of(idx)) weight *= w[l];
    Rational ratio = beta.at(idx).norm_sq() / (weight * weight);
    if (ratio > norm.squared) norm.squared = ratio;
  }
  return norm;
}

// --------------------------------------------------------------- radius

namespace {

Rational rational_pow(const Rational& q, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), e);
  return Rational(num, den);
}

// (a_n)^{1/(2n)} >= (a_m)^{1/(2m)}  <=>  a_n^m >= a_m^n
bool root_ge(const Rational& an, unsigned n, const Rational& am, unsigned m) {
  return rational_pow(an, m) >= rational_pow(am, n);
}

PNorm symmetric_norm(const FunctionalTable& lambda, unsigned n) {
  return pnorm(symmetrize(beta_component(lambda, n)), lambda.algebra());
}

}  // namespace

RadiusEstimate radius_estimate(const FunctionalTable& lambda) {
  RadiusEstimate est;
  est.max_degree = lambda.max_degree();
  Rational best_scaled(0);
  unsigned best_n = 0;
  for (unsigned n = 1; n <= lambda.max_degree(); ++n) {
    PNorm norm = symmetric_norm(lambda, n);
    if (sgn(norm.squared) == 0) continue;
    Rational fact = factorial(n);
    Rational scaled = norm.squared / (fact * fact);  // (||beta_n^s|| / n!)^2
    RootTerm term;
    term.n = n;
    term.norm_sq = norm.squared;
    term.root = std::exp(log_rational(scaled) / (2.0 * n));
    est.terms.push_back(term);
    if (best_n == 0 || !root_ge(best_scaled, best_n, scaled, n)) {
      best_scaled = scaled;
      best_n = n;
    }
  }
  if (est.terms.empty()) {
    est.radius = std::numeric_limits<double>::infinity();
    est.tail_radius = est.radius;
    return est;
  }
  est.argmax = best_n;
  est.radius = std::exp(-log_rational(best_scaled) / (2.0 * best_n));
  est.tail_radius = 1.0 / est.terms.back().root;
  return est;
}

NormGrowth norm_growth(const FunctionalTable& lambda, unsigned max_n, double t) {
  if (max_n > lambda.max_degree()) throw std::invalid_argument("norm_growth: degree exceeds functional degree");
  NormGrowth g;
  g.t = t;
  double full_sum = 0.0, sym_sum = 0.0;
  double scale = 1.0;  // t^n / n!
  for (unsigned n = 0; n <= max_n; ++n) {
    if (n > 0) scale *= t / n;
    BetaComponent beta = beta_component(lambda, n);
    double full = pnorm(beta, lambda.algebra()).value();
    double sym = pnorm(symmetrize(beta), lambda.algebra()).value();
    full_sum += full * scale;
    sym_sum += sym * scale;
    g.full_norms.push_back(full);
    g.sym_norms.push_back(sym);
    g.full_partial_sums.push_back(full_sum);
    g.sym_partial_sums.push_back(sym_sum);
  }
  return g;
}

// ------------------------------------------------------- regular actions

FunctionalTable regular_act(const FunctionalTable& lambda, const GVector& y, Side side) {
  if (lambda.max_degree() == 0) throw std::invalid_argument("regular_act: functional of degree 0 has no regular action");
  const LieAlgebra& g = lambda.algebra();
  if (y.dim() != g.dim()) throw std::invalid_argument("regular_act: vector dimension mismatch");
  const PBWPoly y_poly = PBWPoly::from_vector(y);
  FunctionalTable out(lambda.algebra_ptr(), lambda.max_degree() - 1);
  for (const MultiIndex& alpha : monomials_up_to(g.dim(), out.max_degree())) {
    PBWPoly mono = PBWPoly::monomial(alpha);
    PBWPoly product = side == Side::Right ? g.multiply(mono, y_poly) : g.multiply(y_poly, mono);
    out.set(alpha, eval(lambda, product));
  }
  return out;
}

// ------------------------------------------------- insertion constants

BetaComponent insert_argument(const BetaComponent& beta_next, unsigned k, unsigned i) {
  if (beta_next.arity() == 0) throw std::invalid_argument("insert_argument: needs arity >= 1");
  const unsigned n = beta_next.arity() - 1;
  if (k < 1 || k > n + 1) throw std::invalid_argument("insert_argument: position out of range");
  if (i >= beta_next.dim()) throw std::invalid_argument("insert_argument: basis index out of range");
  BetaComponent out(beta_next.dim(), n);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    std::vector<unsigned> letters = out.letters_of(idx);
    letters.insert(letters.begin() + (k - 1), i);
    out.at(idx) = beta_next.at(letters);
  }
  return out;
}

double InsertionConstant::value() const { return std::sqrt(to_double(squared)); }

namespace {

InsertionConstant insertion_from(const BetaComponent& beta_next, const LieAlgebra& g) {
  InsertionConstant c;
  c.n = beta_next.arity() - 1;
  bool first = true;
  for (unsigned k = 1; k <= c.n + 1; ++k) {
    for (unsigned i = 0; i < g.dim(); ++i) {
      PNorm norm = pnorm(symmetrize(insert_argument(beta_next, k, i)), g);
      Rational ratio = norm.squared / (g.weights()[i] * g.weights()[i]);
      if (first || ratio > c.squared) {
        c.squared = ratio;
        c.argmax_k = k;
        c.argmax_i = i;
        first = false;
      }
    }
  }
  return c;
}

}  // namespace

InsertionConstant insertion_constants(const FunctionalTable& lambda, unsigned n) {
  if (n + 1 > lambda.max_degree()) {
    throw std::invalid_argument(fmt::format("insertion_constants: n + 1 = {} exceeds functional degree {}", n + 1, lambda.max_degree()));
  }
  return insertion_from(beta_component(lambda, n + 1), lambda.algebra());
}

bool RecursionReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const RecursionRow& r) {
    return r.bound_holds && r.right_invariance && r.left_invariance && r.insertion_identity;
  });
}

RecursionReport recursion_check(const FunctionalTable& lambda, unsigned n_max) {
  const LieAlgebra& g = lambda.algebra();
  if (n_max + 1 > lambda.max_degree()) {
    throw std::invalid_argument(fmt::format("recursion_check: n_max + 1 = {} exceeds functional degree {}", n_max + 1, lambda.max_degree()));
  }
  if (auto sub = submult_check(g); !sub.passed) {
    throw std::invalid_argument(fmt::format("recursion_check: seminorm on '{}' is not submultiplicative at pair ({}, {})",
                                            g.name(), g.basis_names()[(*sub.witness)[0]], g.basis_names()[(*sub.witness)[1]]));
  }

  std::vector<FunctionalTable> right, left;
  for (unsigned i = 0; i < g.dim(); ++i) {
    right.push_back(regular_act(lambda, GVector::basis(g.dim(), i), Side::Right));
    left.push_back(regular_act(lambda, GVector::basis(g.dim(), i), Side::Left));
  }

  RecursionReport report;
  for (unsigned n = 0; n <= n_max; ++n) {
    BetaComponent beta_next = beta_component(lambda, n + 1);
    RecursionRow row;
    row.n = n;
    row.c = insertion_from(beta_next, g);
    row.beta_next = pnorm(symmetrize(beta_next), g);
    if (n == 0) {
      // c_0 = ||beta_1||_p
      row.bound_holds = row.c.squared == pnorm(beta_next, g).squared;
    } else {
      const Rational& prev = report.rows.back().c.squared;
      row.bound_holds = sqrt_sum_le(row.c.squared, row.beta_next.squared, prev, n);
    }

    row.right_invariance = row.left_invariance = row.insertion_identity = true;
    for (unsigned i = 0; i < g.dim(); ++i) {
      const Rational wi2 = g.weights()[i] * g.weights()[i];
      BetaComponent r = beta_component(right[i], n);
      BetaComponent l = beta_component(left[i], n);
      row.insertion_identity = row.insertion_identity && r == insert_argument(beta_next, n + 1, i) &&
                               l == insert_argument(beta_next, 1, i);
      row.right_invariance = row.right_invariance && pnorm(symmetrize(r), g).squared <= row.c.squared * wi2;
      row.left_invariance = row.left_invariance && pnorm(symmetrize(l), g).squared <= row.c.squared * wi2;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace envalg
