#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "envalg/scalar.hpp"

namespace envalg {

/// A word over an alphabet of at most 16 letters, packed four bits per letter
/// with the first letter in the most significant position. Words order by
/// length first, then lexicographically.
class Word {
 public:
  static constexpr unsigned kMaxLength = 16;
  static constexpr unsigned kMaxAlphabet = 16;

  Word() = default;
  Word(std::initializer_list<unsigned> letters);
  explicit Word(const std::vector<unsigned>& letters);

  unsigned size() const { return len_; }
  bool empty() const { return len_ == 0; }
  unsigned operator[](unsigned i) const {
    return static_cast<unsigned>((bits_ >> (4 * (len_ - 1 - i))) & 0xF);
  }
  std::vector<unsigned> letters() const;
  /// Number of occurrences of `letter`.
  unsigned count(unsigned letter) const;

  void push_back(unsigned letter);
  friend Word operator+(const Word& a, const Word& b);

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.len_ <=> b.len_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint64_t bits_ = 0;
  std::uint8_t len_ = 0;
};

/// Truncated noncommutative power series: the free associative algebra on
/// `alphabet_size` letters modulo words longer than `trunc_degree`.
class FreeSeries {
 public:
  using TermMap = std::map<Word, Scalar>;

  FreeSeries(unsigned alphabet_size, unsigned trunc_degree);

  static FreeSeries constant(unsigned alphabet_size, unsigned trunc_degree, const Scalar& c);
  static FreeSeries letter(unsigned alphabet_size, unsigned trunc_degree, unsigned index);

  unsigned alphabet_size() const { return alphabet_; }
  unsigned trunc_degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const Word& w) const;
  Scalar constant_term() const { return coefficient(Word{}); }

  /// Adds c*w; words longer than the truncation degree are dropped and
  /// cancelled coefficients are erased.
  void add_term(const Word& w, const Scalar& c);

  /// Homogeneous component of total degree k.
  FreeSeries homogeneous_part(unsigned k) const;
  /// Lowest degree of a stored word; trunc_degree()+1 for the zero series.
  unsigned valuation() const;

  FreeSeries& operator+=(const FreeSeries& o);
  FreeSeries& operator-=(const FreeSeries& o);
  FreeSeries& operator*=(const Scalar& c);
  FreeSeries operator-() const;

  friend FreeSeries operator+(FreeSeries a, const FreeSeries& b) { return a += b; }
  friend FreeSeries operator-(FreeSeries a, const FreeSeries& b) { return a -= b; }
  friend FreeSeries operator*(FreeSeries a, const Scalar& c) { return a *= c; }
  friend FreeSeries operator*(const Scalar& c, FreeSeries a) { return a *= c; }
  friend FreeSeries operator*(const FreeSeries& a, const FreeSeries& b);

  friend bool operator==(const FreeSeries&, const FreeSeries&) = default;

  /// Human-readable form; letters are named X, Y, Z, ... unless `names` is given.
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void check_compatible(const FreeSeries& o, const char* op) const;

  unsigned alphabet_;
  unsigned degree_;
  TermMap terms_;
};

/// Concatenation product, discarding words beyond the truncation degree.
FreeSeries multiply(const FreeSeries& a, const FreeSeries& b);

/// a^k for k >= 0.
FreeSeries power(const FreeSeries& a, unsigned k);

/// exp(a) = sum_k a^k/k!; requires a zero constant term.
FreeSeries exp(const FreeSeries& a);

/// log(a) = sum_k (-1)^{k+1} (a-1)^k / k; requires constant term 1.
FreeSeries log(const FreeSeries& a);

/// Z = log(exp(X) exp(Y)) on the two-letter alphabet {X=0, Y=1}, truncated at
/// total degree n.
FreeSeries bch_series(unsigned n);

/// Keeps exactly the words with m letters X (index 0) and n letters Y (index 1).
FreeSeries bidegree_part(const FreeSeries& a, unsigned m, unsigned n);

struct ExpIdentityReport {
  unsigned m = 0;
  unsigned n = 0;
  /// X^m Y^n / (m! n!)
  FreeSeries lhs{2, 0};
  /// sum_{k <= m+n} T_{m,n}(Z^k) / k!
  FreeSeries rhs{2, 0};
  bool bidegree_identity = false;
  /// exp(X) exp(Y) == exp(Z) at truncation m+n.
  bool exp_product_identity = false;

  bool passed() const { return bidegree_identity && exp_product_identity; }
};

/// Exact check of X^m Y^n/(m!n!) = sum_{k<=m+n} T_{m,n}((X*Y)^k)/k!.
ExpIdentityReport check_exp_identity(unsigned m, unsigned n);

}  // namespace envalg
