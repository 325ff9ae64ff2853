#include "envalg/free_algebra.hpp"

#include <mutex>
#include <stdexcept>

#include <fmt/format.h>

namespace envalg {

Word::Word(std::initializer_list<unsigned> letters) {
  for (unsigned l : letters) push_back(l);
}

Word::Word(const std::vector<unsigned>& letters) {
  for (unsigned l : letters) push_back(l);
}

std::vector<unsigned> Word::letters() const {
  std::vector<unsigned> out(len_);
  for (unsigned i = 0; i < len_; ++i) out[i] = (*this)[i];
  return out;
}

unsigned Word::count(unsigned letter) const {
  unsigned c = 0;
  for (unsigned i = 0; i < len_; ++i) c += (*this)[i] == letter;
  return c;
}

void Word::push_back(unsigned letter) {
  if (letter >= kMaxAlphabet) throw std::invalid_argument("letter index exceeds alphabet limit");
  if (len_ >= kMaxLength) throw std::length_error("word exceeds maximum packed length");
  bits_ = (bits_ << 4) | letter;
  ++len_;
}

Word operator+(const Word& a, const Word& b) {
  if (a.len_ + b.len_ > Word::kMaxLength) throw std::length_error("word exceeds maximum packed length");
  if (a.len_ == 0) return b;
  if (b.len_ == 0) return a;
  Word w;
  w.bits_ = (a.bits_ << (4 * b.len_)) | b.bits_;
  w.len_ = static_cast<std::uint8_t>(a.len_ + b.len_);
  return w;
}

FreeSeries::FreeSeries(unsigned alphabet_size, unsigned trunc_degree)
    : alphabet_(alphabet_size), degree_(trunc_degree) {
  if (alphabet_size == 0 || alphabet_size > Word::kMaxAlphabet) {
    throw std::invalid_argument(fmt::format("alphabet size {} outside [1, {}]", alphabet_size, Word::kMaxAlphabet));
  }
  if (trunc_degree > Word::kMaxLength) {
    throw std::invalid_argument(fmt::format("truncation degree {} exceeds {}", trunc_degree, Word::kMaxLength));
  }
}

FreeSeries FreeSeries::constant(unsigned alphabet_size, unsigned trunc_degree, const Scalar& c) {
  FreeSeries s(alphabet_size, trunc_degree);
  s.add_term(Word{}, c);
  return s;
}

FreeSeries FreeSeries::letter(unsigned alphabet_size, unsigned trunc_degree, unsigned index) {
  if (index >= alphabet_size) throw std::invalid_argument("letter index outside alphabet");
  FreeSeries s(alphabet_size, trunc_degree);
  s.add_term(Word{index}, Scalar(1));
  return s;
}

Scalar FreeSeries::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar() : it->second;
}

void FreeSeries::add_term(const Word& w, const Scalar& c) {
  if (w.size() > degree_ || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FreeSeries FreeSeries::homogeneous_part(unsigned k) const {
  FreeSeries out(alphabet_, degree_);
  for (const auto& [w, c] : terms_) {
    if (w.size() == k) out.terms_.emplace_hint(out.terms_.end(), w, c);
  }
  return out;
}

unsigned FreeSeries::valuation() const {
  return terms_.empty() ? degree_ + 1 : terms_.begin()->first.size();
}

void FreeSeries::check_compatible(const FreeSeries& o, const char* op) const {
  if (alphabet_ != o.alphabet_ || degree_ != o.degree_) {
    throw std::invalid_argument(fmt::format(
        "{}: mismatched series (alphabet {} vs {}, truncation degree {} vs {})", op, alphabet_,
        o.alphabet_, degree_, o.degree_));
  }
}

FreeSeries& FreeSeries::operator+=(const FreeSeries& o) {
  check_compatible(o, "add");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

FreeSeries& FreeSeries::operator-=(const FreeSeries& o) {
  check_compatible(o, "subtract");
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

FreeSeries& FreeSeries::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

FreeSeries FreeSeries::operator-() const {
  FreeSeries out = *this;
  for (auto& [w, v] : out.terms_) v = -v;
  return out;
}

FreeSeries operator*(const FreeSeries& a, const FreeSeries& b) { return multiply(a, b); }

std::string FreeSeries::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  auto letter_name = [&](unsigned l) {
    if (l < names.size()) return names[l];
    static const char* kDefault = "XYZUVWABCDEFGHIJ";
    return std::string(1, kDefault[l]);
  };
  std::string out;
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    for (unsigned i = 0; i < w.size(); ++i) out += "*" + letter_name(w[i]);
  }
  return out;
}

FreeSeries multiply(const FreeSeries& a, const FreeSeries& b) {
  if (a.alphabet_size() != b.alphabet_size() || a.trunc_degree() != b.trunc_degree()) {
    throw std::invalid_argument(fmt::format(
        "multiply: mismatched series (alphabet {} vs {}, truncation degree {} vs {})",
        a.alphabet_size(), b.alphabet_size(), a.trunc_degree(), b.trunc_degree()));
  }
  const unsigned n = a.trunc_degree();
  FreeSeries out(a.alphabet_size(), n);
  for (const auto& [u, cu] : a.terms()) {
    // terms are ordered by length, so the inner loop stops at the first word
    // that would overflow the truncation degree
    for (const auto& [v, cv] : b.terms()) {
      if (u.size() + v.size() > n) break;
      out.add_term(u + v, cu * cv);
    }
  }
  return out;
}

FreeSeries power(const FreeSeries& a, unsigned k) {
  FreeSeries out = FreeSeries::constant(a.alphabet_size(), a.trunc_degree(), Scalar(1));
  for (unsigned i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

FreeSeries exp(const FreeSeries& a) {
  if (!a.constant_term().is_zero()) {
    throw std::invalid_argument("exp: series has nonzero constant term " + a.constant_term().to_string());
  }
  FreeSeries sum = FreeSeries::constant(a.alphabet_size(), a.trunc_degree(), Scalar(1));
  FreeSeries term = sum;
  for (unsigned k = 1; k <= a.trunc_degree(); ++k) {
    term = multiply(term, a) * Scalar(Rational(1, k));
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

FreeSeries log(const FreeSeries& a) {
  if (a.constant_term() != Scalar(1)) {
    throw std::invalid_argument("log: constant term must be 1, got " + a.constant_term().to_string());
  }
  FreeSeries shifted = a - FreeSeries::constant(a.alphabet_size(), a.trunc_degree(), Scalar(1));
  FreeSeries sum(a.alphabet_size(), a.trunc_degree());
  FreeSeries pw = shifted;
  for (unsigned k = 1; k <= a.trunc_degree() && !pw.is_zero(); ++k) {
    Rational coeff(k % 2 == 1 ? 1 : -1, k);
    sum += pw * Scalar(coeff);
    pw = multiply(pw, shifted);
  }
  return sum;
}

FreeSeries bch_series(unsigned n) {
  if (n < 1) throw std::invalid_argument("bch_series: degree must be at least 1");
  static std::mutex mutex;
  static std::map<unsigned, FreeSeries> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  FreeSeries x = FreeSeries::letter(2, n, 0);
  FreeSeries y = FreeSeries::letter(2, n, 1);
  FreeSeries z = log(multiply(exp(x), exp(y)));
  std::lock_guard lock(mutex);
  return cache.try_emplace(n, std::move(z)).first->second;
}

FreeSeries bidegree_part(const FreeSeries& a, unsigned m, unsigned n) {
  if (a.alphabet_size() != 2) {
    throw std::invalid_argument(fmt::format("bidegree_part: alphabet size must be 2, got {}", a.alphabet_size()));
  }
  FreeSeries out(2, a.trunc_degree());
  for (const auto& [w, c] : a.terms()) {
    if (w.count(0) == m && w.count(1) == n) out.add_term(w, c);
  }
  return out;
}

ExpIdentityReport check_exp_identity(unsigned m, unsigned n) {
  if (m + n < 1) throw std::invalid_argument("check_exp_identity: m + n must be at least 1");
  const unsigned degree = m + n;
  ExpIdentityReport report;
  report.m = m;
  report.n = n;

  Word xy;
  for (unsigned i = 0; i < m; ++i) xy.push_back(0);
  for (unsigned i = 0; i < n; ++i) xy.push_back(1);
  report.lhs = FreeSeries(2, degree);
  report.lhs.add_term(xy, Scalar(Rational(1) / (factorial(m) * factorial(n))));

  const FreeSeries z = bch_series(degree);
  report.rhs = FreeSeries(2, degree);
  FreeSeries zk = FreeSeries::constant(2, degree, Scalar(1));
  for (unsigned k = 0; k <= degree; ++k) {
    if (k > 0) zk = multiply(zk, z);
    report.rhs += bidegree_part(zk, m, n) * Scalar(Rational(1) / factorial(k));
  }
  report.bidegree_identity = report.lhs == report.rhs;

  const FreeSeries x = FreeSeries::letter(2, degree, 0);
  const FreeSeries y = FreeSeries::letter(2, degree, 1);
  report.exp_product_identity = multiply(exp(x), exp(y)) == exp(z);
  return report;
}

}  // namespace envalg
