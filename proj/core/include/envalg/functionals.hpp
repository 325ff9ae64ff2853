#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "envalg/lie_structure.hpp"
#include "envalg/scalar.hpp"

namespace envalg {

/// Linear functional on U_C(g), stored by its values on every PBW monomial of
/// degree <= max_degree (absent entries are zero).
class FunctionalTable {
 public:
  using ValueMap = std::map<MultiIndex, Scalar>;

  FunctionalTable(std::shared_ptr<const LieAlgebra> algebra, unsigned max_degree);

  /// lambda(1) = 1 and lambda = 0 on every monomial of positive degree.
  static FunctionalTable delta(std::shared_ptr<const LieAlgebra> algebra, unsigned max_degree);

  const LieAlgebra& algebra() const { return *algebra_; }
  const std::shared_ptr<const LieAlgebra>& algebra_ptr() const { return algebra_; }
  unsigned max_degree() const { return max_degree_; }
  const ValueMap& values() const { return values_; }

  Scalar value(const MultiIndex& alpha) const;
  void set(const MultiIndex& alpha, const Scalar& v);

  FunctionalTable scaled(const Scalar& c) const;
  /// Restriction to monomials of degree <= degree.
  FunctionalTable truncated(unsigned degree) const;

  friend bool operator==(const FunctionalTable& a, const FunctionalTable& b) {
    return a.max_degree_ == b.max_degree_ && a.values_ == b.values_ && *a.algebra_ == *b.algebra_;
  }

 private:
  std::shared_ptr<const LieAlgebra> algebra_;
  unsigned max_degree_;
  ValueMap values_;
};

/// Functional with lambda(1) = 1 and independent random real rationals
/// a/b (|a| <= 5, 1 <= b <= 4) on the other monomials. Reproducible per seed.
FunctionalTable random_functional(std::shared_ptr<const LieAlgebra> algebra, unsigned max_degree, std::uint64_t seed);

/// Linear extension of lambda to a PBW polynomial; throws when a monomial
/// exceeds the table degree.
Scalar eval(const FunctionalTable& lambda, const PBWPoly& a);

/// Multilinear component beta_n(e_{i_1},...,e_{i_n}) = lambda(x_{i_1}...x_{i_n}).
/// Stored densely: entry index is the base-d number i_1 i_2 ... i_n.
class BetaComponent {
 public:
  BetaComponent(unsigned dim, unsigned arity);

  unsigned dim() const { return dim_; }
  unsigned arity() const { return arity_; }
  bool symmetric() const { return symmetric_; }
  std::size_t size() const { return table_.size(); }

  const Scalar& at(std::size_t index) const { return table_[index]; }
  Scalar& at(std::size_t index) { return table_[index]; }
  const Scalar& at(const std::vector<unsigned>& letters) const { return table_[index_of(letters)]; }

  std::size_t index_of(const std::vector<unsigned>& letters) const;
  std::vector<unsigned> letters_of(std::size_t index) const;

  void mark_symmetric() { symmetric_ = true; }
  friend bool operator==(const BetaComponent&, const BetaComponent&) = default;

 private:
  unsigned dim_;
  unsigned arity_;
  bool symmetric_ = false;
  std::vector<Scalar> table_;
};

/// Refuses tables with more than this many entries.
inline constexpr std::size_t kMaxBetaTable = std::size_t{1} << 20;

BetaComponent beta_component(const FunctionalTable& lambda, unsigned n);

/// Average over all permutations of the arguments, exact.
BetaComponent symmetrize(const BetaComponent& beta);

/// Operator norm with respect to the weighted-l1 seminorm. The squared value
/// is exact; value() takes the square root for reporting.
struct PNorm {
  Rational squared{0};
  double value() const;
};

/// max over letter tuples of |beta(e_i1,...,e_in)| / (w_i1 ... w_in).
PNorm pnorm(const BetaComponent& beta, const LieAlgebra& algebra);

/// Per-degree term (||beta_n^s||_p / n!)^{1/n} of the Hadamard root test.
struct RootTerm {
  unsigned n = 0;
  Rational norm_sq{0};  // ||beta_n^s||_p^2
  double root = 0.0;
};

/// Truncated Hadamard estimate of the p-radius of convergence.
struct RadiusEstimate {
  unsigned max_degree = 0;
  std::vector<RootTerm> terms;  // nonzero components only
  /// [max_n root_n]^{-1}; +inf when every component vanishes.
  double radius = 0.0;
  std::optional<unsigned> argmax;
  /// 1/root_n at the largest nonzero n: the last root-test iterate.
  double tail_radius = 0.0;
};

RadiusEstimate radius_estimate(const FunctionalTable& lambda);

/// Partial sums of sum_n ||beta_n|| t^n/n! and sum_n ||beta_n^s|| t^n/n!. Both
/// sequences are reported; nothing is asserted about their relation.
struct NormGrowth {
  double t = 0.0;
  std::vector<double> full_norms;
  std::vector<double> sym_norms;
  std::vector<double> full_partial_sums;
  std::vector<double> sym_partial_sums;
};

NormGrowth norm_growth(const FunctionalTable& lambda, unsigned max_n, double t);

enum class Side { Left, Right };

/// Right: (lambda o rho_y)(x^a) = lambda(x^a y). Left: lambda(y x^a).
/// The result has max_degree one less than lambda.
FunctionalTable regular_act(const FunctionalTable& lambda, const GVector& y, Side side);

/// (i_y^k beta)_n(x_1..x_n) = beta_{n+1}(x_1..x_{k-1}, y, x_k..x_n) for y = e_i,
/// taken from a precomputed beta_{n+1}; k is 1-based.
BetaComponent insert_argument(const BetaComponent& beta_next, unsigned k, unsigned i);

struct InsertionConstant {
  unsigned n = 0;
  Rational squared{0};  // c_n^2
  unsigned argmax_k = 1;
  unsigned argmax_i = 0;
  double value() const;
};

/// c_n = max_{k, i} ||(i_{e_i}^k beta)_n^s||_p / w_i.
InsertionConstant insertion_constants(const FunctionalTable& lambda, unsigned n);

struct RecursionRow {
  unsigned n = 0;
  InsertionConstant c;
  PNorm beta_next;  // ||beta_{n+1}^s||_p
  bool bound_holds = false;  // c_n <= ||beta_{n+1}^s|| + n c_{n-1}
  bool right_invariance = false;  // ||(lambda o rho_{e_i})_n^s|| <= c_n w_i for all i
  bool left_invariance = false;
  bool insertion_identity = false;  // (lambda o rho_y)_n == (i_y^{n+1} beta)_n exactly
};

struct RecursionReport {
  std::vector<RecursionRow> rows;  // n = 0..n_max
  bool passed() const;
};

/// Verifies c_n <= ||beta_{n+1}^s||_p + n c_{n-1} for 1 <= n <= n_max together
/// with the regular-action bounds. Throws when the seminorm is not
/// submultiplicative.
RecursionReport recursion_check(const FunctionalTable& lambda, unsigned n_max);

}  // namespace envalg
