#include "envalg/lie_structure.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "envalg/free_algebra.hpp"

namespace envalg {

// ---------------------------------------------------------------- GVector

GVector GVector::basis(unsigned dim, unsigned i) {
  if (i >= dim) throw std::invalid_argument("basis index out of range");
  GVector v(dim);
  v[i] = Scalar(1);
  return v;
}

bool GVector::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool GVector::is_real() const {
  for (const auto& c : coeffs_) {
    if (!c.is_real()) return false;
  }
  return true;
}

GVector& GVector::operator+=(const GVector& o) {
  if (dim() != o.dim()) throw std::invalid_argument("GVector dimension mismatch");
  for (unsigned i = 0; i < dim(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

GVector& GVector::operator-=(const GVector& o) {
  if (dim() != o.dim()) throw std::invalid_argument("GVector dimension mismatch");
  for (unsigned i = 0; i < dim(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

GVector& GVector::operator*=(const Scalar& c) {
  for (auto& v : coeffs_) v *= c;
  return *this;
}

GVector GVector::operator-() const {
  GVector out = *this;
  for (auto& v : out.coeffs_) v = -v;
  return out;
}

std::string GVector::to_string() const {
  std::string out = "(";
  for (unsigned i = 0; i < dim(); ++i) {
    if (i) out += ", ";
    out += coeffs_[i].to_string();
  }
  return out + ")";
}

// ------------------------------------------------------------- MultiIndex

MultiIndex::MultiIndex(unsigned dim) {
  if (dim == 0 || dim > kMaxDim) throw std::invalid_argument(fmt::format("dimension {} outside [1, {}]", dim, kMaxDim));
  dim_ = static_cast<std::uint8_t>(dim);
}

MultiIndex::MultiIndex(std::initializer_list<unsigned> exps) : MultiIndex(static_cast<unsigned>(exps.size())) {
  unsigned i = 0;
  for (unsigned e : exps) set(i++, e);
}

MultiIndex MultiIndex::unit(unsigned dim, unsigned i) {
  MultiIndex m(dim);
  m.set(i, 1);
  return m;
}

MultiIndex MultiIndex::parse(std::string_view text, unsigned dim) {
  MultiIndex m(dim);
  unsigned i = 0;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view part = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (part.empty() || i >= dim) {
      throw std::invalid_argument(fmt::format("malformed multi-index '{}' for dimension {}", text, dim));
    }
    unsigned value = 0;
    for (char c : part) {
      if (c < '0' || c > '9') throw std::invalid_argument(fmt::format("malformed multi-index '{}'", text));
      value = value * 10 + static_cast<unsigned>(c - '0');
      if (value > 255) throw std::invalid_argument(fmt::format("exponent too large in '{}'", text));
    }
    m.set(i++, value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (i != dim) throw std::invalid_argument(fmt::format("multi-index '{}' has {} entries, expected {}", text, i, dim));
  return m;
}

void MultiIndex::set(unsigned i, unsigned value) {
  if (i >= dim_) throw std::out_of_range("multi-index position out of range");
  if (value > 255) throw std::overflow_error("multi-index exponent exceeds 255");
  degree_ = static_cast<std::uint16_t>(degree_ - exps_[i] + value);
  exps_[i] = static_cast<std::uint8_t>(value);
}

std::optional<unsigned> MultiIndex::last_index() const {
  for (unsigned i = dim_; i-- > 0;) {
    if (exps_[i] > 0) return i;
  }
  return std::nullopt;
}

std::vector<unsigned> MultiIndex::letters() const {
  std::vector<unsigned> out;
  out.reserve(degree_);
  for (unsigned i = 0; i < dim_; ++i) out.insert(out.end(), exps_[i], i);
  return out;
}

std::string MultiIndex::to_string() const {
  std::string out;
  for (unsigned i = 0; i < dim_; ++i) {
    if (i) out += ",";
    out += std::to_string(exps_[i]);
  }
  return out;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  for (unsigned i = 0; i < a.dim_; ++i) {
    if (auto c = b.exps_[i] <=> a.exps_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::vector<MultiIndex> monomials_up_to(unsigned dim, unsigned max_degree) {
  std::vector<MultiIndex> out;
  // enumerate degree by degree; within a degree, exponents in descending
  // lexicographic order, matching the MultiIndex ordering
  for (unsigned deg = 0; deg <= max_degree; ++deg) {
    MultiIndex m(dim);
    auto fill = [&](auto&& self, unsigned pos, unsigned remaining) -> void {
      if (pos + 1 == dim) {
        m.set(pos, remaining);
        out.push_back(m);
        m.set(pos, 0);
        return;
      }
      for (unsigned e = remaining + 1; e-- > 0;) {
        m.set(pos, e);
        self(self, pos + 1, remaining - e);
      }
      m.set(pos, 0);
    };
    fill(fill, 0, deg);
  }
  return out;
}

// ---------------------------------------------------------------- PBWPoly

PBWPoly PBWPoly::constant(unsigned dim, const Scalar& c) {
  PBWPoly p(dim);
  p.add_term(MultiIndex(dim), c);
  return p;
}

PBWPoly PBWPoly::monomial(const MultiIndex& alpha, const Scalar& c) {
  PBWPoly p(alpha.dim());
  p.add_term(alpha, c);
  return p;
}

PBWPoly PBWPoly::generator(unsigned dim, unsigned i) { return monomial(MultiIndex::unit(dim, i)); }

PBWPoly PBWPoly::from_vector(const GVector& x) {
  PBWPoly p(x.dim());
  for (unsigned i = 0; i < x.dim(); ++i) p.add_term(MultiIndex::unit(x.dim(), i), x[i]);
  return p;
}

unsigned PBWPoly::degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

Scalar PBWPoly::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Scalar() : it->second;
}

void PBWPoly::add_term(const MultiIndex& alpha, const Scalar& c) {
  if (alpha.dim() != dim_) {
    throw std::invalid_argument(fmt::format("monomial of dimension {} added to PBW polynomial of dimension {}", alpha.dim(), dim_));
  }
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PBWPoly& PBWPoly::operator+=(const PBWPoly& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("PBW polynomial dimension mismatch");
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

PBWPoly& PBWPoly::operator-=(const PBWPoly& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("PBW polynomial dimension mismatch");
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

PBWPoly& PBWPoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, v] : terms_) v *= c;
  return *this;
}

std::string PBWPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [alpha, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    for (unsigned i = 0; i < alpha.dim(); ++i) {
      if (alpha[i] == 0) continue;
      std::string name = i < names.size() ? names[i] : "x" + std::to_string(i + 1);
      out += "*" + name;
      if (alpha[i] > 1) out += "^" + std::to_string(alpha[i]);
    }
  }
  return out;
}

// ------------------------------------------------------------- LieAlgebra

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> basis_names,
                       const std::vector<Bracket>& brackets, std::vector<Rational> weights)
    : name_(std::move(name)),
      dim_(static_cast<unsigned>(basis_names.size())),
      basis_names_(std::move(basis_names)),
      weights_(std::move(weights)),
      cache_(std::make_shared<Cache>()) {
  if (dim_ == 0 || dim_ > MultiIndex::kMaxDim) {
    throw std::invalid_argument(fmt::format("Lie algebra dimension {} outside [1, {}]", dim_, MultiIndex::kMaxDim));
  }
  if (weights_.empty()) weights_.assign(dim_, Rational(1));
  if (weights_.size() != dim_) {
    throw std::invalid_argument(fmt::format("expected {} weights, got {}", dim_, weights_.size()));
  }
  for (unsigned i = 0; i < dim_; ++i) {
    if (sgn(weights_[i]) <= 0) {
      throw std::invalid_argument(fmt::format("weight of basis element '{}' must be positive", basis_names_[i]));
    }
  }
  table_.assign(static_cast<std::size_t>(dim_) * dim_ * dim_, Rational(0));
  std::vector<bool> seen(static_cast<std::size_t>(dim_) * dim_, false);
  for (const auto& b : brackets) {
    if (b.i >= dim_ || b.j >= dim_ || b.value.dim() != dim_) {
      throw std::invalid_argument("bracket entry refers to an index outside the basis");
    }
    if (b.i >= b.j) throw std::invalid_argument("brackets must be given for i < j only");
    if (!b.value.is_real()) throw std::invalid_argument("structure constants must be real rationals");
    if (seen[b.i * dim_ + b.j]) {
      throw std::invalid_argument(fmt::format("duplicate bracket [{},{}]", basis_names_[b.i], basis_names_[b.j]));
    }
    seen[b.i * dim_ + b.j] = true;
    for (unsigned k = 0; k < dim_; ++k) {
      table_[(static_cast<std::size_t>(b.i) * dim_ + b.j) * dim_ + k] = b.value[k].re();
      table_[(static_cast<std::size_t>(b.j) * dim_ + b.i) * dim_ + k] = -b.value[k].re();
    }
  }
}

LieAlgebra LieAlgebra::abelian(unsigned dim) {
  std::vector<std::string> names;
  for (unsigned i = 0; i < dim; ++i) names.push_back(dim == 1 ? "x" : "x" + std::to_string(i + 1));
  return LieAlgebra(dim == 1 ? "R" : fmt::format("R{}", dim), names, {}, {});
}

LieAlgebra LieAlgebra::heisenberg() {
  return LieAlgebra("heisenberg", {"p", "q", "z"}, {{0, 1, GVector::basis(3, 2)}}, {});
}

LieAlgebra LieAlgebra::so3() {
  return LieAlgebra("so3", {"e1", "e2", "e3"},
                    {{0, 1, GVector::basis(3, 2)}, {1, 2, GVector::basis(3, 0)}, {0, 2, -GVector::basis(3, 1)}},
                    {});
}

LieAlgebra LieAlgebra::affine_line() {
  return LieAlgebra("aff1", {"e1", "e2"}, {{0, 1, GVector::basis(2, 1)}}, {});
}

const Rational& LieAlgebra::structure(unsigned i, unsigned j, unsigned k) const {
  return table_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
}

std::vector<LieAlgebra::Bracket> LieAlgebra::brackets() const {
  std::vector<Bracket> out;
  for (unsigned i = 0; i < dim_; ++i) {
    for (unsigned j = i + 1; j < dim_; ++j) {
      GVector v(dim_);
      for (unsigned k = 0; k < dim_; ++k) v[k] = Scalar(structure(i, j, k));
      if (!v.is_zero()) out.push_back({i, j, std::move(v)});
    }
  }
  return out;
}

LieAlgebra LieAlgebra::with_weights(std::vector<Rational> weights) const {
  return LieAlgebra(name_, basis_names_, brackets(), std::move(weights));
}

void LieAlgebra::check_vector(const GVector& x, const char* op) const {
  if (x.dim() != dim_) {
    throw std::invalid_argument(fmt::format("{}: vector of dimension {} does not belong to '{}' (dimension {})", op, x.dim(), name_, dim_));
  }
}

GVector LieAlgebra::bracket(const GVector& x, const GVector& y) const {
  check_vector(x, "bracket");
  check_vector(y, "bracket");
  GVector out(dim_);
  for (unsigned i = 0; i < dim_; ++i) {
    if (x[i].is_zero() && y[i].is_zero()) continue;
    for (unsigned j = i + 1; j < dim_; ++j) {
      Scalar coeff = x[i] * y[j] - x[j] * y[i];
      if (coeff.is_zero()) continue;
      for (unsigned k = 0; k < dim_; ++k) {
        const Rational& c = structure(i, j, k);
        if (sgn(c) != 0) out[k] += coeff * Scalar(c);
      }
    }
  }
  return out;
}

Rational LieAlgebra::seminorm(const GVector& x) const {
  check_vector(x, "seminorm");
  if (!x.is_real()) throw std::invalid_argument("seminorm: vector has complex coefficients");
  Rational p(0);
  for (unsigned i = 0; i < dim_; ++i) p += weights_[i] * abs(x[i].re());
  return p;
}

const PBWPoly& LieAlgebra::monomial_times_generator(const MultiIndex& alpha, unsigned j) const {
  const auto key = std::make_pair(alpha, j);
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->right.find(key); it != cache_->right.end()) return it->second;
  }

  PBWPoly result(dim_);
  auto last = alpha.last_index();
  if (!last || *last <= j) {
    MultiIndex next = alpha;
    next.increment(j);
    result.add_term(next, Scalar(1));
  } else {
    // x^alpha e_j = x^{alpha'} x_k e_j = (x^{alpha'} e_j) x_k + x^{alpha'} [x_k, e_j]
    const unsigned k = *last;
    MultiIndex head = alpha;
    head.decrement(k);
    const PBWPoly& swapped = monomial_times_generator(head, j);
    for (const auto& [beta, c] : swapped.terms()) {
      for (const auto& [gamma, d] : monomial_times_generator(beta, k).terms()) result.add_term(gamma, c * d);
    }
    for (unsigned l = 0; l < dim_; ++l) {
      const Rational& c = structure(k, j, l);
      if (sgn(c) == 0) continue;
      for (const auto& [gamma, d] : monomial_times_generator(head, l).terms()) result.add_term(gamma, Scalar(c) * d);
    }
  }

  std::lock_guard lock(cache_->mutex);
  return cache_->right.try_emplace(key, std::move(result)).first->second;
}

PBWPoly LieAlgebra::multiply_generator(const PBWPoly& a, unsigned j) const {
  if (a.dim() != dim_ || j >= dim_) throw std::invalid_argument("multiply_generator: dimension mismatch");
  PBWPoly out(dim_);
  for (const auto& [alpha, c] : a.terms()) {
    for (const auto& [beta, d] : monomial_times_generator(alpha, j).terms()) out.add_term(beta, c * d);
  }
  return out;
}

PBWPoly LieAlgebra::reduce(const std::vector<unsigned>& word) const {
  PBWPoly out = PBWPoly::constant(dim_, Scalar(1));
  for (unsigned letter : word) {
    if (letter >= dim_) throw std::invalid_argument(fmt::format("letter {} outside basis of '{}'", letter, name_));
    out = multiply_generator(out, letter);
  }
  return out;
}

PBWPoly LieAlgebra::multiply(const PBWPoly& a, const PBWPoly& b) const {
  if (a.dim() != dim_ || b.dim() != dim_) {
    throw std::invalid_argument(fmt::format("multiply: PBW polynomial does not belong to '{}'", name_));
  }
  PBWPoly out(dim_);
  for (const auto& [beta, c] : b.terms()) {
    PBWPoly partial = a;
    for (unsigned letter : beta.letters()) partial = multiply_generator(partial, letter);
    out += partial * c;
  }
  return out;
}

PBWPoly LieAlgebra::left_multiply_generator(unsigned j, const PBWPoly& a) const {
  return multiply(PBWPoly::generator(dim_, j), a);
}

PBWPoly LieAlgebra::power(const PBWPoly& a, unsigned k) const {
  PBWPoly out = PBWPoly::constant(dim_, Scalar(1));
  for (unsigned i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

PBWPoly LieAlgebra::star(const PBWPoly& a) const {
  if (a.dim() != dim_) throw std::invalid_argument("star: dimension mismatch");
  PBWPoly out(dim_);
  for (const auto& [alpha, c] : a.terms()) {
    std::vector<unsigned> letters = alpha.letters();
    std::vector<unsigned> reversed(letters.rbegin(), letters.rend());
    Scalar coeff = c.conj();
    if (alpha.degree() % 2 == 1) coeff = -coeff;
    out += reduce(reversed) * coeff;
  }
  return out;
}

// ---------------------------------------------------------------- checks

JacobiReport jacobi_validate(const LieAlgebra& g) {
  JacobiReport report;
  const unsigned d = g.dim();
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = i + 1; j < d; ++j) {
      for (unsigned k = j + 1; k < d; ++k) {
        GVector ei = GVector::basis(d, i), ej = GVector::basis(d, j), ek = GVector::basis(d, k);
        GVector sum = g.bracket(ei, g.bracket(ej, ek)) + g.bracket(ej, g.bracket(ek, ei)) +
                      g.bracket(ek, g.bracket(ei, ej));
        if (!sum.is_zero()) {
          report.passed = false;
          report.witness = std::array<unsigned, 3>{i, j, k};
          report.residual = std::move(sum);
          return report;
        }
      }
    }
  }
  return report;
}

SubmultReport submult_check(const LieAlgebra& g) {
  SubmultReport report;
  const unsigned d = g.dim();
  const auto& w = g.weights();
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = i + 1; j < d; ++j) {
      Rational lhs(0);
      for (unsigned k = 0; k < d; ++k) lhs += w[k] * abs(g.structure(i, j, k));
      Rational rhs = w[i] * w[j];
      if (lhs > rhs) {
        report.passed = false;
        report.witness = std::array<unsigned, 2>{i, j};
        report.lhs = lhs;
        report.rhs = rhs;
        return report;
      }
    }
  }
  return report;
}

GVector bch_in_g(const LieAlgebra& g, const GVector& x, const GVector& y, unsigned degree) {
  if (x.dim() != g.dim() || y.dim() != g.dim()) throw std::invalid_argument("bch_in_g: dimension mismatch");
  const FreeSeries& z = bch_series(degree);
  // right-normed bracket r(w) = [w_1,[w_2,[...,w_l]]], memoized on suffixes
  std::map<Word, GVector> nested;
  auto right_normed = [&](auto&& self, const Word& w) -> const GVector& {
    if (auto it = nested.find(w); it != nested.end()) return it->second;
    GVector value;
    if (w.size() == 1) {
      value = w[0] == 0 ? x : y;
    } else {
      std::vector<unsigned> letters = w.letters();
      Word tail(std::vector<unsigned>(letters.begin() + 1, letters.end()));
      const GVector& inner_value = self(self, tail);
      value = g.bracket(letters[0] == 0 ? x : y, inner_value);
    }
    return nested.emplace(w, std::move(value)).first->second;
  };

  // a homogeneous Lie element L of degree l satisfies r(L) = l * L
  GVector out(g.dim());
  for (const auto& [w, c] : z.terms()) {
    if (w.empty()) continue;
    out += right_normed(right_normed, w) * (c * Scalar(Rational(1, w.size())));
  }
  return out;
}

}  // namespace envalg
