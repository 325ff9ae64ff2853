#include "envalg/group_integration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

namespace envalg {

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exp: matrix is not square");
  if (!a.allFinite()) throw std::invalid_argument("matrix_exp: non-finite entries");
  if (a.size() == 0) return a;
  return a.exp();
}

double unitarity_residual(const Eigen::MatrixXcd& u) {
  return (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).norm();
}

namespace {

GroupElement element_in_frame(const MatrixRep& frame, std::vector<GVector> word) {
  GroupElement g;
  g.matrix = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(frame.space_dim()),
                                        static_cast<Eigen::Index>(frame.space_dim()));
  for (const auto& x : word) g.matrix = g.matrix * matrix_exp(frame.of(x));
  g.word = std::move(word);
  return g;
}

}  // namespace

GroupElement group_element(const MatrixRep& rep, std::vector<GVector> word) {
  return element_in_frame(rep.unitary_frame(), std::move(word));
}

GroupSample make_sample(const MatrixRep& rep, const std::vector<std::vector<GVector>>& words) {
  GroupSample s;
  s.rep = std::make_shared<const MatrixRep>(rep.unitary_frame());
  for (const auto& w : words) s.elements.push_back(element_in_frame(*s.rep, w));
  return s;
}

GroupSample sample_group(const MatrixRep& rep, std::size_t count, std::uint64_t seed) {
  constexpr long kDen = 64;
  const unsigned d = rep.algebra().dim();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-kDen, kDen);
  std::uniform_int_distribution<unsigned> factors(1, 3);

  auto random_vector = [&]() {
    // rejection sampling in the unit ball, coordinates k/64
    for (;;) {
      std::vector<long> ks(d);
      long sq = 0;
      for (auto& k : ks) {
        k = coord(rng);
        sq += k * k;
      }
      if (sq > kDen * kDen) continue;
      GVector x(d);
      for (unsigned i = 0; i < d; ++i) x[i] = Scalar(Rational(ks[i], kDen));
      return x;
    }
  };

  std::vector<std::vector<GVector>> words;
  for (std::size_t e = 0; e < count; ++e) {
    std::vector<GVector> w;
    const unsigned k = factors(rng);
    for (unsigned j = 0; j < k; ++j) w.push_back(random_vector());
    words.push_back(std::move(w));
  }
  return make_sample(rep, words);
}

std::vector<std::complex<double>> matrix_coefficient(const GroupSample& sample) {
  const Eigen::VectorXcd& v = sample.rep->cyclic();
  std::vector<std::complex<double>> out;
  for (const auto& g : sample.elements) out.push_back(v.dot(g.matrix * v));
  return out;
}

KernelReport pd_kernel_check(const GroupSample& sample, double tol) {
  KernelReport r;
  for (const auto& g : sample.elements) {
    r.max_unitarity_residual = std::max(r.max_unitarity_residual, unitarity_residual(g.matrix));
  }
  if (r.max_unitarity_residual > 1e-10) {
    throw std::invalid_argument(fmt::format("pd_kernel_check: sample element is not unitary (residual {:.3e})",
                                            r.max_unitarity_residual));
  }
  const Eigen::VectorXcd& v = sample.rep->cyclic();
  const auto n = static_cast<Eigen::Index>(sample.elements.size());
  r.kernel.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& gi = sample.elements[static_cast<std::size_t>(i)].matrix;
      const auto& gj = sample.elements[static_cast<std::size_t>(j)].matrix;
      r.kernel(i, j) = v.dot(gi * (gj.adjoint() * v));
    }
  }
  if (n == 0) {
    r.passed = true;
    return r;
  }
  // symmetrize away rounding so the solver sees an exactly hermitian input
  Eigen::MatrixXcd h = 0.5 * (r.kernel + r.kernel.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  r.passed = r.min_eigenvalue >= -tol;
  return r;
}

LocalHomReport local_hom_check(const MatrixRep& rep, const GVector& x, const GVector& y, unsigned degree,
                               const std::vector<double>& scales) {
  if (!validate_rep(rep).homomorphism) throw std::invalid_argument("local_hom_check: representation fails the homomorphism law");
  const LieAlgebra& g = rep.algebra();
  LocalHomReport r;
  r.degree = degree;
  for (double s : scales) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("local_hom_check: scales must be positive");
    const Scalar rs(rational_from_double(s));
    const GVector rx = x * rs, ry = y * rs;
    const GVector z = bch_in_g(g, rx, ry, degree);
    Eigen::MatrixXcd lhs = matrix_exp(rep.of(rx)) * matrix_exp(rep.of(ry));
    Eigen::MatrixXcd rhs = matrix_exp(rep.of(z));
    r.rows.push_back({s, (lhs - rhs).norm()});
  }
  r.exact = std::all_of(r.rows.begin(), r.rows.end(), [](const LocalHomRow& row) { return row.error < 1e-12; });
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : r.rows) {
    if (row.error > 0.0) pts.emplace_back(std::log(row.scale), std::log(row.error));
  }
  if (!r.exact && pts.size() >= 2) {
    double mx = 0, my = 0;
    for (auto [a, b] : pts) {
      mx += a;
      my += b;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0, sxx = 0;
    for (auto [a, b] : pts) {
      sxy += (a - mx) * (b - my);
      sxx += (a - mx) * (a - mx);
    }
    if (sxx > 0) r.slope = sxy / sxx;
  }
  r.passed = r.exact || (r.slope && *r.slope >= degree + 0.5);
  return r;
}

CauchyReport cauchy_estimate_check(const MatrixRep& rep, const std::vector<std::complex<double>>& x, double r,
                                   unsigned n_max) {
  if (!rep.skew_hermitian()) throw std::invalid_argument("cauchy_estimate_check: representation must be skew-hermitian");
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("cauchy_estimate_check: radius must be positive");
  const MatrixRep frame = rep.unitary_frame();
  const Eigen::MatrixXcd a = frame.of(x);
  const Eigen::VectorXcd& v = frame.cyclic();

  constexpr int kGrid = 64;
  std::vector<Eigen::VectorXcd> left, right;
  for (int k = 0; k < kGrid; ++k) {
    const std::complex<double> z = std::polar(r, 2.0 * std::numbers::pi * k / kGrid);
    left.push_back(matrix_exp(z * a) * v);
    right.push_back(matrix_exp(std::conj(z) * a) * v);
  }
  double grid_max = v.squaredNorm();
  for (const auto& l : left) {
    for (const auto& rt : right) grid_max = std::max(grid_max, std::abs(rt.dot(l)));
  }

  CauchyReport out;
  out.radius = r;
  out.c = 1.05 * grid_max;
  const double root_c = std::sqrt(out.c);
  Eigen::VectorXcd w = v;
  double coeff = root_c;  // sqrt(C) n! r^{-n}
  out.passed = true;
  for (unsigned n = 0; n <= n_max; ++n) {
    if (n > 0) {
      w = a * w;
      coeff *= n / r;
    }
    CauchyRow row{n, w.norm(), coeff, false};
    row.holds = row.lhs <= row.rhs;
    out.passed = out.passed && row.holds;
    out.rows.push_back(row);
  }
  return out;
}

namespace {

/// Float data of the truncated GNS space: an orthonormal basis whose first
/// `inner_rank` vectors span V_{d-1}.
struct TruncatedFrame {
  Eigen::MatrixXcd basis_h_gram;  // B^H G, r x n
  Eigen::MatrixXcd inner_basis;   // first inner_count rows of B_1, m x r1
  Eigen::VectorXcd unit;          // coordinates of [1]
  std::size_t rank = 0;
  std::size_t inner_rank = 0;
};

TruncatedFrame truncated_frame(const GnsModel& model) {
  const std::size_t n = model.monomials.size(), m = model.inner_count;
  ExactMatrix g11(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) g11(i, j) = model.gram(i, j);
  }
  HermitianFactorization inner = factor_hermitian(g11);

  std::vector<ExactVector> basis;
  std::vector<Rational> norms;
  for (std::size_t k = 0; k < inner.rank; ++k) {
    ExactVector b(n);
    std::copy(inner.basis[k].begin(), inner.basis[k].end(), b.begin());
    basis.push_back(std::move(b));
    norms.push_back(inner.pivot_values[k]);
  }
  // outer monomials projected orthogonally to V_{d-1}
  std::vector<ExactVector> outer;
  for (std::size_t beta = m; beta < n; ++beta) {
    ExactVector w(n);
    w[beta] = Scalar(1);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      Scalar proj = form(model.gram, w, basis[k]) / Scalar(norms[k]);
      if (proj.is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (!basis[k][i].is_zero()) w[i] -= proj * basis[k][i];
      }
    }
    outer.push_back(std::move(w));
  }
  ExactMatrix og(outer.size(), outer.size());
  for (std::size_t a = 0; a < outer.size(); ++a) {
    for (std::size_t b = 0; b < outer.size(); ++b) og(a, b) = form(model.gram, outer[b], outer[a]);
  }
  HermitianFactorization comp = factor_hermitian(og);
  if (!comp.psd) throw std::domain_error("truncated GNS: complement Gram block is not PSD");
  for (std::size_t k = 0; k < comp.rank; ++k) {
    ExactVector w(n);
    for (std::size_t a = 0; a < outer.size(); ++a) {
      if (comp.basis[k][a].is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i) w[i] += comp.basis[k][a] * outer[a][i];
    }
    basis.push_back(std::move(w));
    norms.push_back(comp.pivot_values[k]);
  }

  TruncatedFrame f;
  f.rank = basis.size();
  f.inner_rank = inner.rank;
  Eigen::MatrixXcd b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(f.rank));
  for (std::size_t k = 0; k < f.rank; ++k) {
    const double scale = 1.0 / std::sqrt(to_double(norms[k]));
    for (std::size_t i = 0; i < n; ++i) {
      b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = basis[k][i].to_complex() * scale;
    }
  }
  f.basis_h_gram = b.adjoint() * model.gram.to_complex();
  f.inner_basis = b.topLeftCorner(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(f.inner_rank));
  f.unit = f.basis_h_gram.col(0);
  return f;
}

std::complex<double> coefficient_in_frame(const GnsModel& model, const TruncatedFrame& f, const GVector& x) {
  const auto r = static_cast<Eigen::Index>(f.rank);
  if (r == 0) return 0.0;
  Eigen::MatrixXcd rx = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(model.monomials.size()),
                                               static_cast<Eigen::Index>(model.inner_count));
  for (unsigned i = 0; i < x.dim(); ++i) {
    if (!x[i].is_zero()) rx += x[i].to_complex() * model.operators[i].to_complex();
  }
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(r, r);
  a.leftCols(static_cast<Eigen::Index>(f.inner_rank)) = f.basis_h_gram * (rx * f.inner_basis);
  return f.unit.dot(matrix_exp(a) * f.unit);
}

void check_probe(const GnsModel& model, const GVector& x) {
  if (x.dim() != model.operators.size()) throw std::invalid_argument("extension probe has the wrong dimension");
}

ExtensionReport run_levels(const std::function<FunctionalTable(unsigned)>& functional_at,
                           const std::function<std::complex<double>(const GVector&)>& truth,
                           const std::vector<unsigned>& levels, const std::vector<GVector>& probes, double noise_floor) {
  ExtensionReport report;
  report.noise_floor = noise_floor;
  for (unsigned d : levels) {
    if (d == 0) throw std::invalid_argument("extension_demo: d_max must be positive");
    GnsModel model = gns_build(functional_at(d), d);
    TruncatedFrame frame = truncated_frame(model);
    ExtensionLevel level;
    level.d_max = d;
    level.quotient_rank = model.quotient_rank;
    for (const auto& x : probes) {
      check_probe(model, x);
      ExtensionProbe p{x, coefficient_in_frame(model, frame, x), truth(x), 0.0};
      p.deviation = std::abs(p.approx - p.truth);
      level.max_deviation = std::max(level.max_deviation, p.deviation);
      level.probes.push_back(std::move(p));
    }
    report.levels.push_back(std::move(level));
  }
  report.non_increasing = true;
  for (std::size_t k = 1; k < report.levels.size(); ++k) {
    if (report.levels[k].max_deviation > std::max(report.levels[k - 1].max_deviation, noise_floor)) {
      report.non_increasing = false;
    }
  }
  return report;
}

}  // namespace

std::complex<double> truncated_gns_coefficient(const GnsModel& model, const GVector& x) {
  check_probe(model, x);
  return coefficient_in_frame(model, truncated_frame(model), x);
}

ExtensionReport extension_demo(const MatrixRep& rep, const std::vector<unsigned>& levels,
                               const std::vector<GVector>& probes, double noise_floor) {
  if (!rep.skew_hermitian()) throw std::invalid_argument("extension_demo: representation must be skew-hermitian");
  const MatrixRep frame = rep.unitary_frame();
  auto truth = [&frame](const GVector& x) {
    const Eigen::VectorXcd& v = frame.cyclic();
    return v.dot(matrix_exp(frame.of(x)) * v);
  };
  unsigned top = levels.empty() ? 0 : *std::max_element(levels.begin(), levels.end());
  FunctionalTable lambda = functional_from_rep(rep, 2 * top);
  return run_levels([&](unsigned d) { return lambda.truncated(2 * d); }, truth, levels, probes, noise_floor);
}

ExtensionReport extension_demo(const FunctionalTable& lambda,
                               const std::function<std::complex<double>(const GVector&)>& truth,
                               const std::vector<unsigned>& levels, const std::vector<GVector>& probes,
                               double noise_floor) {
  return run_levels([&](unsigned d) { return lambda.truncated(2 * d); }, truth, levels, probes, noise_floor);
}

MatrixRep random_skew_rep(unsigned n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_skew_rep: dimension must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = {u(rng), u(rng)};
  }
  Eigen::MatrixXcd skew = 0.5 * (a - a.adjoint());
  Eigen::VectorXcd v(m);
  for (Eigen::Index i = 0; i < m; ++i) v(i) = {u(rng), u(rng)};
  v /= v.norm();
  return MatrixRep::line(skew, v);
}

FunctionalTable gaussian_functional(unsigned degree) {
  FunctionalTable lambda(std::make_shared<const LieAlgebra>(LieAlgebra::abelian(1)), degree);
  Rational dfact(1);  // (2n-1)!!
  for (unsigned n = 0; 2 * n <= degree; ++n) {
    if (n > 0) dfact *= 2 * n - 1;
    lambda.set(MultiIndex{2 * n}, Scalar(n % 2 == 0 ? Rational(dfact) : Rational(-dfact)));
  }
  return lambda;
}

}  // namespace envalg
