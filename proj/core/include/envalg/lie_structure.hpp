#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "envalg/scalar.hpp"

namespace envalg {

/// Element of g (or of its complexification): coefficients in the basis of
/// the owning Lie algebra.
class GVector {
 public:
  GVector() = default;
  explicit GVector(unsigned dim) : coeffs_(dim) {}
  explicit GVector(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {}

  static GVector basis(unsigned dim, unsigned i);

  unsigned dim() const { return static_cast<unsigned>(coeffs_.size()); }
  const Scalar& operator[](unsigned i) const { return coeffs_[i]; }
  Scalar& operator[](unsigned i) { return coeffs_[i]; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  bool is_real() const;

  GVector& operator+=(const GVector& o);
  GVector& operator-=(const GVector& o);
  GVector& operator*=(const Scalar& c);
  GVector operator-() const;
  friend GVector operator+(GVector a, const GVector& b) { return a += b; }
  friend GVector operator-(GVector a, const GVector& b) { return a -= b; }
  friend GVector operator*(GVector a, const Scalar& c) { return a *= c; }
  friend GVector operator*(const Scalar& c, GVector a) { return a *= c; }
  friend bool operator==(const GVector&, const GVector&) = default;

  std::string to_string() const;

 private:
  std::vector<Scalar> coeffs_;
};

/// Exponent vector alpha of the PBW monomial x_1^{a_1} ... x_d^{a_d}. Ordered
/// by total degree, then with larger leading exponents first, so that
/// x_1 < x_2 < ... < x_d within each degree.
class MultiIndex {
 public:
  static constexpr unsigned kMaxDim = 8;

  MultiIndex() = default;
  explicit MultiIndex(unsigned dim);
  MultiIndex(std::initializer_list<unsigned> exps);

  static MultiIndex unit(unsigned dim, unsigned i);
  /// Parses "a,b,c"; the number of entries must equal `dim`.
  static MultiIndex parse(std::string_view text, unsigned dim);

  unsigned dim() const { return dim_; }
  unsigned degree() const { return degree_; }
  unsigned operator[](unsigned i) const { return exps_[i]; }
  void set(unsigned i, unsigned value);
  void increment(unsigned i) { set(i, exps_[i] + 1u); }
  void decrement(unsigned i) { set(i, exps_[i] - 1u); }
  /// Largest index with a positive exponent; nullopt for the unit monomial.
  std::optional<unsigned> last_index() const;
  /// Basis letters in PBW order, e.g. (2,0,1) -> {0,0,2}.
  std::vector<unsigned> letters() const;

  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::array<std::uint8_t, kMaxDim> exps_{};
  std::uint8_t dim_ = 0;
  std::uint16_t degree_ = 0;
};

/// All multi-indices of dimension `dim` with total degree <= max_degree, in
/// MultiIndex order.
std::vector<MultiIndex> monomials_up_to(unsigned dim, unsigned max_degree);

/// Element of U_C(g) in PBW normal form.
class PBWPoly {
 public:
  using TermMap = std::map<MultiIndex, Scalar>;

  PBWPoly() = default;
  explicit PBWPoly(unsigned dim) : dim_(dim) {}

  static PBWPoly constant(unsigned dim, const Scalar& c);
  static PBWPoly monomial(const MultiIndex& alpha, const Scalar& c = Scalar(1));
  static PBWPoly generator(unsigned dim, unsigned i);
  static PBWPoly from_vector(const GVector& x);

  unsigned dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Maximal |alpha| of a stored monomial; 0 for the zero polynomial.
  unsigned degree() const;
  Scalar coefficient(const MultiIndex& alpha) const;

  void add_term(const MultiIndex& alpha, const Scalar& c);

  PBWPoly& operator+=(const PBWPoly& o);
  PBWPoly& operator-=(const PBWPoly& o);
  PBWPoly& operator*=(const Scalar& c);
  friend PBWPoly operator+(PBWPoly a, const PBWPoly& b) { return a += b; }
  friend PBWPoly operator-(PBWPoly a, const PBWPoly& b) { return a -= b; }
  friend PBWPoly operator*(PBWPoly a, const Scalar& c) { return a *= c; }
  friend PBWPoly operator*(const Scalar& c, PBWPoly a) { return a *= c; }
  friend bool operator==(const PBWPoly&, const PBWPoly&) = default;

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  unsigned dim_ = 0;
  TermMap terms_;
};

/// Finite-dimensional real Lie algebra given by structure constants in a fixed
/// ordered basis, with a weighted-l1 seminorm p(x) = sum_i w_i |x_i|.
///
/// Only the brackets [e_i, e_j] with i < j are supplied; antisymmetry is
/// implied. Jacobi and submultiplicativity are not enforced by the
/// constructor: run jacobi_validate() and submult_check() (config loading
/// does both) before relying on PBW rewriting or the seminorm bounds.
///
/// PBW arithmetic memoizes monomial-times-generator products internally;
/// the cache is shared between copies and guarded by a mutex.
class LieAlgebra {
 public:
  struct Bracket {
    unsigned i;
    unsigned j;
    GVector value;  // real coefficients
  };

  LieAlgebra(std::string name, std::vector<std::string> basis_names,
             const std::vector<Bracket>& brackets, std::vector<Rational> weights);

  static LieAlgebra abelian(unsigned dim);
  static LieAlgebra heisenberg();
  /// [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2 (so(3) ~ su(2)).
  static LieAlgebra so3();
  /// Two-dimensional nonabelian algebra [e1,e2]=e2.
  static LieAlgebra affine_line();

  const std::string& name() const { return name_; }
  unsigned dim() const { return dim_; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  const std::vector<Rational>& weights() const { return weights_; }
  /// c_{ij}^k for any i, j (antisymmetric extension of the stored table).
  const Rational& structure(unsigned i, unsigned j, unsigned k) const;
  /// The supplied brackets with i < j and nonzero value, in (i, j) order.
  std::vector<Bracket> brackets() const;

  LieAlgebra with_weights(std::vector<Rational> weights) const;

  GVector bracket(const GVector& x, const GVector& y) const;
  /// p(x) for a real vector.
  Rational seminorm(const GVector& x) const;

  /// Normal form of the product x_{w_1} ... x_{w_n}.
  PBWPoly reduce(const std::vector<unsigned>& word) const;
  PBWPoly multiply(const PBWPoly& a, const PBWPoly& b) const;
  /// A * x_j.
  PBWPoly multiply_generator(const PBWPoly& a, unsigned j) const;
  /// x_j * A.
  PBWPoly left_multiply_generator(unsigned j, const PBWPoly& a) const;
  /// A^k.
  PBWPoly power(const PBWPoly& a, unsigned k) const;
  /// Antilinear antiautomorphism with x* = -x on g.
  PBWPoly star(const PBWPoly& a) const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.name_ == b.name_ && a.basis_names_ == b.basis_names_ && a.table_ == b.table_ &&
           a.weights_ == b.weights_;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<MultiIndex, unsigned>, PBWPoly> right;
  };

  const PBWPoly& monomial_times_generator(const MultiIndex& alpha, unsigned j) const;
  void check_vector(const GVector& x, const char* op) const;

  std::string name_;
  unsigned dim_ = 0;
  std::vector<std::string> basis_names_;
  std::vector<Rational> table_;  // dim^3, c_{ij}^k at (i*dim + j)*dim + k
  std::vector<Rational> weights_;
  std::shared_ptr<Cache> cache_;
};

struct JacobiReport {
  bool passed = true;
  /// First violating triple (i < j < k), zero-based.
  std::optional<std::array<unsigned, 3>> witness;
  GVector residual;
};

/// Exact check of [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0.
JacobiReport jacobi_validate(const LieAlgebra& g);

struct SubmultReport {
  bool passed = true;
  /// First violating pair (i < j), zero-based.
  std::optional<std::array<unsigned, 2>> witness;
  Rational lhs{0};
  Rational rhs{0};
};

/// Weighted-l1 submultiplicativity: sum_k w_k |c_ij^k| <= w_i w_j for i < j.
SubmultReport submult_check(const LieAlgebra& g);

/// x * y = log(exp x exp y) evaluated in g through the right-normed bracketing
/// of the truncated free BCH series.
GVector bch_in_g(const LieAlgebra& g, const GVector& x, const GVector& y, unsigned degree);

}  // namespace envalg
