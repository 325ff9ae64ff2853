#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "envalg/exact_matrix.hpp"
#include "envalg/functionals.hpp"
#include "envalg/lie_structure.hpp"

namespace envalg {

/// Finite-dimensional representation R: g -> gl(V) with a cyclic vector v and
/// a positive definite metric H (identity unless given), so that
/// <a, b> = b^H H a. Exact reps carry Gaussian-rational matrices; float reps
/// carry binary64 matrices only.
class MatrixRep {
 public:
  MatrixRep(std::shared_ptr<const LieAlgebra> algebra, std::vector<ExactMatrix> generators,
            ExactVector cyclic, std::optional<ExactMatrix> metric = std::nullopt,
            bool skew_hermitian = true);
  MatrixRep(std::shared_ptr<const LieAlgebra> algebra, std::vector<Eigen::MatrixXcd> generators,
            Eigen::VectorXcd cyclic, std::optional<Eigen::MatrixXcd> metric = std::nullopt,
            bool skew_hermitian = true);

  /// Spin j = two_j/2 representation of su(2) (basis of LieAlgebra::so3()),
  /// realized exactly on homogeneous polynomials of degree two_j in (z, w)
  /// with the invariant metric diag(a! b! / two_j!) and cyclic vector z^two_j.
  /// For two_j = 1 this is R(e_k) = -(i/2) sigma_k with v = (1, 0).
  static MatrixRep su2_spin(unsigned two_j);
  /// Upper-triangular 3x3 rep of the Heisenberg algebra: p=E12, q=E23, z=E13.
  /// Not skew-hermitian.
  static MatrixRep heisenberg_upper();
  /// Single skew-hermitian matrix as a representation of the abelian line.
  static MatrixRep line(const Eigen::MatrixXcd& generator, const Eigen::VectorXcd& cyclic);

  const LieAlgebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const LieAlgebra>& algebra_ptr() const { return algebra_; }
  bool exact() const { return exact_.has_value(); }
  bool skew_hermitian() const { return skew_hermitian_; }
  std::size_t space_dim() const { return static_cast<std::size_t>(cyclic_.size()); }

  const std::vector<Eigen::MatrixXcd>& generators() const { return generators_; }
  const Eigen::VectorXcd& cyclic() const { return cyclic_; }
  const Eigen::MatrixXcd& metric() const { return metric_; }

  /// Throws std::logic_error for float reps.
  const std::vector<ExactMatrix>& exact_generators() const;
  const ExactVector& exact_cyclic() const;
  const ExactMatrix& exact_metric() const;

  /// R(x) in floating point.
  Eigen::MatrixXcd of(const GVector& x) const;
  Eigen::MatrixXcd of(const std::vector<std::complex<double>>& x) const;

  /// Same representation in an H-orthonormal frame (metric = identity), so
  /// that skew-hermitian generators are skew-hermitian matrices.
  MatrixRep unitary_frame() const;

 private:
  struct ExactData {
    std::vector<ExactMatrix> generators;
    ExactVector cyclic;
    ExactMatrix metric;
  };

  void check_shapes() const;

  std::shared_ptr<const LieAlgebra> algebra_;
  std::vector<Eigen::MatrixXcd> generators_;
  Eigen::VectorXcd cyclic_;
  Eigen::MatrixXcd metric_;
  std::optional<ExactData> exact_;
  bool skew_hermitian_;
};

struct RepValidation {
  bool homomorphism = true;
  /// Pair (i, j) with the largest residual ||[R_i,R_j] - sum_k c_ij^k R_k||.
  std::array<unsigned, 2> worst_pair{0, 0};
  double hom_residual = 0.0;
  bool skew = true;
  double skew_residual = 0.0;
  bool passed() const { return homomorphism && skew; }
};

/// Exact comparison for exact reps, tolerance `tol` (Frobenius) otherwise.
/// Skewness H R + R^H H = 0 is only checked when the rep is flagged skew.
RepValidation validate_rep(const MatrixRep& rep, double tol = 1e-10);

/// lambda(x^alpha) = <R(e_1)^{a_1} ... R(e_d)^{a_d} v, v> for |alpha| <= degree.
/// Exact for exact reps; for float reps each value is the exact rational
/// image of its binary64 evaluation. Throws when the rep fails validation.
FunctionalTable functional_from_rep(const MatrixRep& rep, unsigned degree);

struct MomentMatrix {
  std::vector<MultiIndex> monomials;
  /// M(a, b) = lambda((x^a)^* x^b) = <x^b, x^a> in the GNS inner product.
  ExactMatrix matrix;
  bool hermitian = false;
};

MomentMatrix moment_matrix(const FunctionalTable& lambda, unsigned d_max);

struct PsdReport {
  bool passed = false;
  bool exact = false;
  std::size_t rank = 0;
  /// Float path only.
  double min_eigenvalue = 0.0;
  /// When FAIL: u with <Mu, u> < -tol (exact path: < 0).
  std::optional<Eigen::VectorXcd> witness;
  std::optional<ExactVector> exact_witness;
  double witness_value = 0.0;
};

/// Exact path: pivoted elimination, PASS iff no negative pivot.
PsdReport psd_check(const ExactMatrix& m);
/// Float path: PASS iff the smallest eigenvalue is >= -tol.
PsdReport psd_check(const Eigen::MatrixXcd& m, double tol);

/// Truncated GNS data at degree d_max: monomials of degree <= d_max span
/// V_d, those of degree <= d_max - 1 span V_{d-1}.
struct GnsModel {
  unsigned degree = 0;
  std::vector<MultiIndex> monomials;
  std::size_t inner_count = 0;  // monomials with |alpha| <= degree - 1
  ExactMatrix gram;
  std::size_t quotient_rank = 0;
  /// Gram-orthogonal coefficient vectors spanning V_d / null space; the
  /// orthonormal basis is quotient_basis[k] / sqrt(quotient_norms_sq[k]).
  std::vector<ExactVector> quotient_basis;
  std::vector<Rational> quotient_norms_sq;
  std::vector<ExactVector> null_basis;
  /// operators[i] is |V_d| x |V_{d-1}|: column alpha holds x_i * x^alpha.
  std::vector<ExactMatrix> operators;
  /// <rho(e_i)u, w> + <u, rho(e_i)w> on V_{d-1}; all zero for a consistent model.
  std::vector<ExactMatrix> skew_residuals;

  bool skew_exact() const;
  /// Columns: H-orthonormal basis in monomial coordinates (float).
  Eigen::MatrixXcd orthonormal_basis() const;
};

/// Throws std::domain_error when the moment matrix is not PSD at d_max.
GnsModel gns_build(const FunctionalTable& lambda, unsigned d_max);

struct AnalyticReport {
  GVector direction;
  unsigned n_max = 0;
  /// s_n^2 = (-1)^n Re lambda(x^{2n}) = ||rho(x)^n v||^2, exact.
  std::vector<Rational> s_sq;
  std::vector<Rational> imag_parts;
  std::vector<double> s;
  bool positive = true;
  std::optional<unsigned> negative_witness;
  std::vector<double> t_values;
  /// partial_sums[t][n] = sum_{k<=n} s_k t^k / k!.
  std::vector<std::vector<double>> partial_sums;
  /// 1 / (s_n/n!)^{1/n} at the largest n with s_n > 0.
  double vector_radius = 0.0;
  /// radius_estimate(lambda).radius, when the beta tables are small enough.
  std::optional<double> functional_radius;
  /// vector_radius * p(x) / functional_radius; >= 1/2 matches the factor-two
  /// bound for positive analytic functionals.
  std::optional<double> ratio;
};

/// `with_radius` also computes functional_radius and ratio (costly for large
/// tables).
AnalyticReport analytic_diagnostics(const FunctionalTable& lambda, const GVector& x, unsigned n_max,
                                    const std::vector<double>& t_values = {0.25}, bool with_radius = true);

}  // namespace envalg
