#include "envalg/gns.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace envalg {

namespace {

Eigen::VectorXcd to_complex(const ExactVector& v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].to_complex();
  return out;
}

double frobenius(const ExactMatrix& m) { return m.to_complex().norm(); }

}  // namespace

// --------------------------------------------------------------- MatrixRep

MatrixRep::MatrixRep(std::shared_ptr<const LieAlgebra> algebra, std::vector<ExactMatrix> generators,
                     ExactVector cyclic, std::optional<ExactMatrix> metric, bool skew_hermitian)
    : algebra_(std::move(algebra)), skew_hermitian_(skew_hermitian) {
  if (!algebra_) throw std::invalid_argument("MatrixRep requires a Lie algebra");
  ExactData data;
  const std::size_t m = cyclic.size();
  data.metric = metric ? std::move(*metric) : ExactMatrix::identity(m);
  data.generators = std::move(generators);
  data.cyclic = std::move(cyclic);
  for (const auto& g : data.generators) generators_.push_back(g.to_complex());
  cyclic_ = to_complex(data.cyclic);
  metric_ = data.metric.to_complex();
  exact_ = std::move(data);
  check_shapes();
  if (!exact_->metric.is_hermitian()) throw std::invalid_argument("representation metric must be hermitian");
  if (!psd_check(exact_->metric).passed || factor_hermitian(exact_->metric).rank != m) {
    throw std::invalid_argument("representation metric must be positive definite");
  }
}

MatrixRep::MatrixRep(std::shared_ptr<const LieAlgebra> algebra, std::vector<Eigen::MatrixXcd> generators,
                     Eigen::VectorXcd cyclic, std::optional<Eigen::MatrixXcd> metric, bool skew_hermitian)
    : algebra_(std::move(algebra)),
      generators_(std::move(generators)),
      cyclic_(std::move(cyclic)),
      skew_hermitian_(skew_hermitian) {
  if (!algebra_) throw std::invalid_argument("MatrixRep requires a Lie algebra");
  metric_ = metric ? std::move(*metric) : Eigen::MatrixXcd::Identity(cyclic_.size(), cyclic_.size());
  check_shapes();
  for (const auto& g : generators_) {
    if (!g.allFinite()) throw std::invalid_argument("representation matrix has non-finite entries");
  }
  if (!cyclic_.allFinite() || !metric_.allFinite()) throw std::invalid_argument("representation data has non-finite entries");
  Eigen::LLT<Eigen::MatrixXcd> llt(metric_);
  if (llt.info() != Eigen::Success || (metric_ - metric_.adjoint()).norm() > 1e-12 * (1.0 + metric_.norm())) {
    throw std::invalid_argument("representation metric must be hermitian positive definite");
  }
}

void MatrixRep::check_shapes() const {
  const auto m = cyclic_.size();
  if (m == 0) throw std::invalid_argument("representation space must be nonempty");
  if (generators_.size() != algebra_->dim()) {
    throw std::invalid_argument(fmt::format("representation has {} generators, algebra '{}' has dimension {}",
                                            generators_.size(), algebra_->name(), algebra_->dim()));
  }
  for (const auto& g : generators_) {
    if (g.rows() != m || g.cols() != m) {
      throw std::invalid_argument(fmt::format("generator of shape {}x{} does not act on a space of dimension {}", g.rows(), g.cols(), m));
    }
  }
  if (metric_.rows() != m || metric_.cols() != m) throw std::invalid_argument("metric shape does not match the representation space");
}

MatrixRep MatrixRep::su2_spin(unsigned two_j) {
  if (two_j == 0 || two_j > 8) throw std::invalid_argument("su2_spin: two_j must be in [1, 8]");
  const Scalar half(Rational(1, 2));
  const Scalar i = Scalar::i();
  // -(i/2) sigma_k, entries A(row, col)
  const std::array<std::array<Scalar, 4>, 3> spin_half{{
      {Scalar(), -i * half, -i * half, Scalar()},
      {Scalar(), -half, half, Scalar()},
      {-i * half, Scalar(), Scalar(), i * half},
  }};
  const std::size_t n = two_j + 1;
  std::vector<ExactMatrix> gens;
  for (const auto& a : spin_half) {
    const Scalar &a00 = a[0], &a01 = a[1], &a10 = a[2], &a11 = a[3];
    ExactMatrix r(n, n);
    // basis k <-> z^{two_j-k} w^k; R acts as the derivation induced by A
    for (std::size_t k = 0; k < n; ++k) {
      const long za = static_cast<long>(two_j - k), wb = static_cast<long>(k);
      r(k, k) += Scalar(za) * a00 + Scalar(wb) * a11;
      if (za > 0) r(k + 1, k) += Scalar(za) * a10;
      if (wb > 0) r(k - 1, k) += Scalar(wb) * a01;
    }
    gens.push_back(std::move(r));
  }
  ExactMatrix metric(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    metric(k, k) = Scalar(Rational(factorial(static_cast<unsigned>(two_j - k)) * factorial(static_cast<unsigned>(k)) / factorial(two_j)));
  }
  ExactVector v(n);
  v[0] = Scalar(1);
  return MatrixRep(std::make_shared<const LieAlgebra>(LieAlgebra::so3()), std::move(gens), std::move(v),
                   std::move(metric), true);
}

MatrixRep MatrixRep::heisenberg_upper() {
  ExactMatrix p(3, 3), q(3, 3), z(3, 3);
  p(0, 1) = Scalar(1);
  q(1, 2) = Scalar(1);
  z(0, 2) = Scalar(1);
  ExactVector v(3);
  v[2] = Scalar(1);
  return MatrixRep(std::make_shared<const LieAlgebra>(LieAlgebra::heisenberg()), {p, q, z}, std::move(v),
                   std::nullopt, false);
}

MatrixRep MatrixRep::line(const Eigen::MatrixXcd& generator, const Eigen::VectorXcd& cyclic) {
  return MatrixRep(std::make_shared<const LieAlgebra>(LieAlgebra::abelian(1)), std::vector<Eigen::MatrixXcd>{generator},
                   cyclic, std::nullopt, true);
}

const std::vector<ExactMatrix>& MatrixRep::exact_generators() const {
  if (!exact_) throw std::logic_error("representation has no exact data");
  return exact_->generators;
}

const ExactVector& MatrixRep::exact_cyclic() const {
  if (!exact_) throw std::logic_error("representation has no exact data");
  return exact_->cyclic;
}

const ExactMatrix& MatrixRep::exact_metric() const {
  if (!exact_) throw std::logic_error("representation has no exact data");
  return exact_->metric;
}

Eigen::MatrixXcd MatrixRep::of(const GVector& x) const {
  std::vector<std::complex<double>> coeffs;
  for (const auto& c : x.coeffs()) coeffs.push_back(c.to_complex());
  return of(coeffs);
}

Eigen::MatrixXcd MatrixRep::of(const std::vector<std::complex<double>>& x) const {
  if (x.size() != generators_.size()) throw std::invalid_argument("R(x): vector dimension mismatch");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(cyclic_.size(), cyclic_.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) out += x[i] * generators_[i];
  }
  return out;
}

MatrixRep MatrixRep::unitary_frame() const {
  if (metric_.isIdentity(0.0)) return *this;
  Eigen::LLT<Eigen::MatrixXcd> llt(metric_);
  const Eigen::MatrixXcd lh = llt.matrixU();  // L^H with H = L L^H
  std::vector<Eigen::MatrixXcd> gens;
  for (const auto& g : generators_) {
    Eigen::MatrixXcd x = lh * g;
    // right-multiply by L^{-H}: solve (L^H)^T-style via triangular view
    Eigen::MatrixXcd y = lh.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(x);
    gens.push_back(std::move(y));
  }
  Eigen::VectorXcd v = lh * cyclic_;
  return MatrixRep(algebra_, std::move(gens), std::move(v), std::nullopt, skew_hermitian_);
}

RepValidation validate_rep(const MatrixRep& rep, double tol) {
  RepValidation out;
  const LieAlgebra& g = rep.algebra();
  const unsigned d = g.dim();
  if (rep.exact()) {
    const auto& r = rep.exact_generators();
    for (unsigned i = 0; i < d; ++i) {
      for (unsigned j = i + 1; j < d; ++j) {
        ExactMatrix res = r[i] * r[j] - r[j] * r[i];
        for (unsigned k = 0; k < d; ++k) {
          if (sgn(g.structure(i, j, k)) != 0) res -= r[k] * Scalar(g.structure(i, j, k));
        }
        if (!res.is_zero()) {
          out.homomorphism = false;
          double norm = frobenius(res);
          if (norm >= out.hom_residual) {
            out.hom_residual = norm;
            out.worst_pair = {i, j};
          }
        }
      }
    }
    if (rep.skew_hermitian()) {
      const ExactMatrix& h = rep.exact_metric();
      for (unsigned i = 0; i < d; ++i) {
        ExactMatrix s = h * r[i] + r[i].adjoint() * h;
        if (!s.is_zero()) {
          out.skew = false;
          out.skew_residual = std::max(out.skew_residual, frobenius(s));
        }
      }
    }
    return out;
  }

  const auto& r = rep.generators();
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = i + 1; j < d; ++j) {
      Eigen::MatrixXcd res = r[i] * r[j] - r[j] * r[i];
      for (unsigned k = 0; k < d; ++k) res -= to_double(g.structure(i, j, k)) * r[k];
      double norm = res.norm();
      if (norm >= out.hom_residual) {
        out.hom_residual = norm;
        out.worst_pair = {i, j};
      }
    }
  }
  out.homomorphism = out.hom_residual <= tol;
  if (rep.skew_hermitian()) {
    const Eigen::MatrixXcd& h = rep.metric();
    for (unsigned i = 0; i < d; ++i) {
      out.skew_residual = std::max(out.skew_residual, (h * r[i] + r[i].adjoint() * h).norm());
    }
    out.skew = out.skew_residual <= tol;
  }
  return out;
}

FunctionalTable functional_from_rep(const MatrixRep& rep, unsigned degree) {
  RepValidation check = validate_rep(rep);
  if (!check.homomorphism) {
    const auto& names = rep.algebra().basis_names();
    throw std::invalid_argument(fmt::format("functional_from_rep: homomorphism law fails, worst pair ({}, {}) with residual {:.3e}",
                                            names[check.worst_pair[0]], names[check.worst_pair[1]], check.hom_residual));
  }
  const unsigned d = rep.algebra().dim();
  FunctionalTable lambda(rep.algebra_ptr(), degree);
  const auto monomials = monomials_up_to(d, degree);

  // R^alpha v = R_i (R^{alpha - e_i} v) with i the first index of alpha
  auto first_index = [d](const MultiIndex& a) {
    for (unsigned i = 0; i < d; ++i) {
      if (a[i] > 0) return i;
    }
    return d;
  };

  if (rep.exact()) {
    const auto& gens = rep.exact_generators();
    const ExactMatrix& h = rep.exact_metric();
    const ExactVector hv = h * rep.exact_cyclic();
    std::map<MultiIndex, ExactVector> orbit;
    for (const MultiIndex& alpha : monomials) {
      ExactVector w;
      if (alpha.degree() == 0) {
        w = rep.exact_cyclic();
      } else {
        unsigned i = first_index(alpha);
        MultiIndex prev = alpha;
        prev.decrement(i);
        w = gens[i] * orbit.at(prev);
      }
      lambda.set(alpha, inner(w, hv) );
      orbit.emplace(alpha, std::move(w));
    }
    return lambda;
  }

  const auto& gens = rep.generators();
  const Eigen::VectorXcd hv = rep.metric() * rep.cyclic();
  std::map<MultiIndex, Eigen::VectorXcd> orbit;
  for (const MultiIndex& alpha : monomials) {
    Eigen::VectorXcd w;
    if (alpha.degree() == 0) {
      w = rep.cyclic();
    } else {
      unsigned i = first_index(alpha);
      MultiIndex prev = alpha;
      prev.decrement(i);
      w = gens[i] * orbit.at(prev);
    }
    lambda.set(alpha, scalar_from_complex(hv.dot(w)));
    orbit.emplace(alpha, std::move(w));
  }
  return lambda;
}

MomentMatrix moment_matrix(const FunctionalTable& lambda, unsigned d_max) {
  if (2 * d_max > lambda.max_degree()) {
    throw std::invalid_argument(fmt::format("moment_matrix: degree {} needs a functional of degree {}, have {}",
                                            d_max, 2 * d_max, lambda.max_degree()));
  }
  const LieAlgebra& g = lambda.algebra();
  MomentMatrix out;
  out.monomials = monomials_up_to(g.dim(), d_max);
  const std::size_t n = out.monomials.size();
  std::vector<PBWPoly> stars;
  for (const auto& alpha : out.monomials) stars.push_back(g.star(PBWPoly::monomial(alpha)));
  out.matrix = ExactMatrix(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      out.matrix(a, b) = eval(lambda, g.multiply(stars[a], PBWPoly::monomial(out.monomials[b])));
    }
  }
  out.hermitian = out.matrix.is_hermitian();
  return out;
}

PsdReport psd_check(const ExactMatrix& m) {
  if (!m.is_hermitian()) throw std::invalid_argument("psd_check: matrix is not hermitian");
  HermitianFactorization f = factor_hermitian(m);
  PsdReport r;
  r.exact = true;
  r.passed = f.psd;
  r.rank = f.rank;
  if (!f.psd) {
    r.exact_witness = f.witness;
    r.witness = to_complex(*f.witness);
    r.witness_value = to_double(f.witness_value);
  }
  return r;
}

PsdReport psd_check(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("psd_check: matrix is not square");
  if ((m - m.adjoint()).norm() > 1e-12 * (1.0 + m.norm())) {
    throw std::invalid_argument("psd_check: matrix is not hermitian");
  }
  PsdReport r;
  if (m.size() == 0) {
    r.passed = true;
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  const auto& ev = es.eigenvalues();
  r.min_eigenvalue = ev.minCoeff();
  const double scale = std::max(1.0, std::abs(ev.maxCoeff()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > 1e-10 * scale) ++r.rank;
  }
  r.passed = r.min_eigenvalue >= -tol;
  if (!r.passed) {
    Eigen::Index idx = 0;
    ev.minCoeff(&idx);
    r.witness = es.eigenvectors().col(idx);
    r.witness_value = r.witness->dot(m * *r.witness).real();
  }
  return r;
}

bool GnsModel::skew_exact() const {
  return std::all_of(skew_residuals.begin(), skew_residuals.end(), [](const ExactMatrix& s) { return s.is_zero(); });
}

Eigen::MatrixXcd GnsModel::orthonormal_basis() const {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(monomials.size()), static_cast<Eigen::Index>(quotient_rank));
  for (std::size_t k = 0; k < quotient_rank; ++k) {
    out.col(static_cast<Eigen::Index>(k)) = to_complex(quotient_basis[k]) / std::sqrt(to_double(quotient_norms_sq[k]));
  }
  return out;
}

GnsModel gns_build(const FunctionalTable& lambda, unsigned d_max) {
  const LieAlgebra& g = lambda.algebra();
  MomentMatrix mm = moment_matrix(lambda, d_max);
  if (!mm.hermitian) throw std::domain_error("gns_build: moment matrix is not hermitian (functional is not hermitian)");
  HermitianFactorization f = factor_hermitian(mm.matrix);
  if (!f.psd) {
    throw std::domain_error(fmt::format("gns_build: functional is not positive to degree {} (witness value {})",
                                        d_max, format_rational(f.witness_value)));
  }

  GnsModel model;
  model.degree = d_max;
  model.monomials = std::move(mm.monomials);
  model.gram = std::move(mm.matrix);
  model.quotient_rank = f.rank;
  model.quotient_basis = std::move(f.basis);
  model.quotient_norms_sq = std::move(f.pivot_values);
  model.null_basis = std::move(f.null_basis);
  if (d_max == 0) return model;

  const std::size_t n = model.monomials.size();
  model.inner_count = static_cast<std::size_t>(
      std::count_if(model.monomials.begin(), model.monomials.end(), [&](const MultiIndex& a) { return a.degree() + 1 <= d_max; }));
  std::map<MultiIndex, std::size_t> position;
  for (std::size_t k = 0; k < n; ++k) position.emplace(model.monomials[k], k);

  for (unsigned i = 0; i < g.dim(); ++i) {
    ExactMatrix op(n, model.inner_count);
    for (std::size_t col = 0; col < model.inner_count; ++col) {
      PBWPoly image = g.left_multiply_generator(i, PBWPoly::monomial(model.monomials[col]));
      for (const auto& [beta, c] : image.terms()) op(position.at(beta), col) = c;
    }
    // X = E^H G R restricted to V_{d-1}; the skew residual is X + X^H
    ExactMatrix gr = model.gram * op;
    ExactMatrix x(model.inner_count, model.inner_count);
    for (std::size_t r = 0; r < model.inner_count; ++r) {
      for (std::size_t c = 0; c < model.inner_count; ++c) x(r, c) = gr(r, c);
    }
    model.skew_residuals.push_back(x + x.adjoint());
    model.operators.push_back(std::move(op));
  }
  return model;
}

AnalyticReport analytic_diagnostics(const FunctionalTable& lambda, const GVector& x, unsigned n_max,
                                    const std::vector<double>& t_values, bool with_radius) {
  if (2 * n_max > lambda.max_degree()) {
    throw std::invalid_argument(fmt::format("analytic_diagnostics: n_max = {} needs a functional of degree {}, have {}",
                                            n_max, 2 * n_max, lambda.max_degree()));
  }
  const LieAlgebra& g = lambda.algebra();
  AnalyticReport r;
  r.direction = x;
  r.n_max = n_max;
  r.t_values = t_values;

  const PBWPoly xp = PBWPoly::from_vector(x);
  PBWPoly power = PBWPoly::constant(g.dim(), Scalar(1));
  for (unsigned n = 0; n <= n_max; ++n) {
    if (n > 0) power = g.multiply(g.multiply(power, xp), xp);
    Scalar value = eval(lambda, power);
    Rational s_sq = n % 2 == 0 ? value.re() : Rational(-value.re());
    if (sgn(s_sq) < 0 && r.positive) {
      r.positive = false;
      r.negative_witness = n;
    }
    r.s.push_back(sgn(s_sq) > 0 ? std::sqrt(to_double(s_sq)) : 0.0);
    r.s_sq.push_back(std::move(s_sq));
    r.imag_parts.push_back(value.im());
  }

  for (double t : t_values) {
    std::vector<double> sums;
    double acc = 0.0, scale = 1.0;
    for (unsigned n = 0; n <= n_max; ++n) {
      if (n > 0) scale *= t / n;
      acc += r.s[n] * scale;
      sums.push_back(acc);
    }
    r.partial_sums.push_back(std::move(sums));
  }

  r.vector_radius = std::numeric_limits<double>::infinity();
  for (unsigned n = n_max; n >= 1; --n) {
    if (sgn(r.s_sq[n]) > 0) {
      double log_root = (0.5 * log_rational(r.s_sq[n]) - log_rational(factorial(n))) / n;
      r.vector_radius = std::exp(-log_root);
      break;
    }
  }

  if (!with_radius) return r;
  double table = 1.0;
  for (unsigned k = 0; k < lambda.max_degree() && table <= static_cast<double>(kMaxBetaTable); ++k) table *= g.dim();
  if (table <= static_cast<double>(kMaxBetaTable)) {
    r.functional_radius = radius_estimate(lambda).radius;
    if (x.is_real() && std::isfinite(*r.functional_radius) && *r.functional_radius > 0.0) {
      r.ratio = r.vector_radius * to_double(g.seminorm(x)) / *r.functional_radius;
    }
  }
  return r;
}

}  // namespace envalg
