#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "envalg/functionals.hpp"
#include "envalg/gns.hpp"
#include "envalg/lie_structure.hpp"

namespace envalg {

/// e^A by scaling and squaring with a Pade approximant. Throws
/// std::invalid_argument for non-square or non-finite input.
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a);

/// ||U^H U - I|| (Frobenius).
double unitarity_residual(const Eigen::MatrixXcd& u);

struct GroupElement {
  /// g = exp(R(word[0])) ... exp(R(word[k-1])).
  std::vector<GVector> word;
  Eigen::MatrixXcd matrix;
};

/// Group elements of a representation, always held in its unitary frame.
struct GroupSample {
  std::shared_ptr<const MatrixRep> rep;
  std::vector<GroupElement> elements;
};

/// exp(R(x_1)) ... exp(R(x_k)) in the unitary frame of `rep`.
GroupElement group_element(const MatrixRep& rep, std::vector<GVector> word);

/// `count` elements, each a product of 1..3 exponentials of rational vectors
/// with Euclidean norm <= 1. Reproducible for a given seed.
GroupSample sample_group(const MatrixRep& rep, std::size_t count, std::uint64_t seed);

/// Sample built from explicit words.
GroupSample make_sample(const MatrixRep& rep, const std::vector<std::vector<GVector>>& words);

/// phi(g) = <g v, v> per element.
std::vector<std::complex<double>> matrix_coefficient(const GroupSample& sample);

struct KernelReport {
  Eigen::MatrixXcd kernel;  // K_ij = phi(g_i g_j^{-1})
  double min_eigenvalue = 0.0;
  double max_unitarity_residual = 0.0;
  bool passed = false;
};

/// Throws std::invalid_argument when an element is not unitary to 1e-10.
KernelReport pd_kernel_check(const GroupSample& sample, double tol);

struct LocalHomRow {
  double scale = 0.0;
  double error = 0.0;
};

struct LocalHomReport {
  unsigned degree = 0;
  std::vector<LocalHomRow> rows;
  /// Least-squares slope of log E against log r (absent when every E is
  /// below the noise floor).
  std::optional<double> slope;
  bool exact = false;  // every E < 1e-12
  bool passed = false;
};

/// E(r) = ||e^{R(rx)} e^{R(ry)} - e^{R(bch(rx, ry, N))}||.
LocalHomReport local_hom_check(const MatrixRep& rep, const GVector& x, const GVector& y, unsigned degree,
                               const std::vector<double>& scales);

struct CauchyRow {
  unsigned n = 0;
  double lhs = 0.0;  // ||R(x)^n v||
  double rhs = 0.0;  // sqrt(C) n! r^{-n}
  bool holds = false;
};

struct CauchyReport {
  double radius = 0.0;
  double c = 0.0;  // 1.05 * grid maximum
  std::vector<CauchyRow> rows;
  bool passed = false;
};

/// C = 1.05 * max over a 64 x 64 grid on |z1| = |z2| = r (plus the origin) of
/// |<e^{z1 R(x)} v, e^{conj(z2) R(x)} v>|, then ||R(x)^n v|| <= sqrt(C) n! r^{-n}
/// for n <= n_max. Requires a skew-hermitian rep; x may be complex.
CauchyReport cauchy_estimate_check(const MatrixRep& rep, const std::vector<std::complex<double>>& x, double r,
                                   unsigned n_max);

struct ExtensionProbe {
  GVector x;
  std::complex<double> approx;
  std::complex<double> truth;
  double deviation = 0.0;
};

struct ExtensionLevel {
  unsigned d_max = 0;
  std::size_t quotient_rank = 0;
  std::vector<ExtensionProbe> probes;
  double max_deviation = 0.0;
};

struct ExtensionReport {
  std::vector<ExtensionLevel> levels;
  /// max_deviation is non-increasing in d_max (up to `noise_floor`).
  bool non_increasing = false;
  double noise_floor = 0.0;
};

/// Truncated GNS reconstruction at degree d_max: phi~(exp x) = <e^{A(x)} [1], [1]>
/// where A(x) is rho_lambda(x) composed with the orthogonal projection onto
/// V_{d-1}. Requires lambda of degree >= 2 d_max; throws std::domain_error
/// when the moment matrix is not PSD.
std::complex<double> truncated_gns_coefficient(const GnsModel& model, const GVector& x);

/// Ground truth phi(exp x) = <e^{R(x)} v, v> versus the GNS reconstruction of
/// functional_from_rep(rep, 2 d_max), for each d_max in `levels`.
ExtensionReport extension_demo(const MatrixRep& rep, const std::vector<unsigned>& levels,
                               const std::vector<GVector>& probes, double noise_floor = 1e-13);

/// Same with an explicit moment table and closed-form truth; lambda must have
/// degree >= 2 * max(levels).
ExtensionReport extension_demo(const FunctionalTable& lambda,
                               const std::function<std::complex<double>(const GVector&)>& truth,
                               const std::vector<unsigned>& levels, const std::vector<GVector>& probes,
                               double noise_floor = 1e-13);

/// Random n x n skew-hermitian generator (entries of (M - M^H)/2 with M
/// uniform in the unit square) and random unit cyclic vector, as a
/// representation of the abelian line.
MatrixRep random_skew_rep(unsigned n, std::uint64_t seed);

/// lambda(x^{2n}) = (-1)^n (2n-1)!! on the abelian line, the germ of e^{-t^2/2}.
FunctionalTable gaussian_functional(unsigned degree);

}  // namespace envalg
