#include "envalg/exact_matrix.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace envalg {

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

ExactMatrix ExactMatrix::from_complex(const Eigen::MatrixXcd& m) {
  ExactMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = scalar_from_complex(m(i, j));
    }
  }
  return out;
}

ExactMatrix ExactMatrix::adjoint() const {
  ExactMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j).conj();
  }
  return out;
}

bool ExactMatrix::is_zero() const {
  for (const auto& s : data_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

bool ExactMatrix::is_hermitian() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i).conj()) return false;
    }
  }
  return true;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ExactMatrix& ExactMatrix::operator*=(const Scalar& c) {
  for (auto& s : data_) s *= c;
  return *this;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in *");
  ExactMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

ExactVector operator*(const ExactMatrix& a, const ExactVector& v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  ExactVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
    }
  }
  return out;
}

Eigen::MatrixXcd ExactMatrix::to_complex() const {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).to_complex();
    }
  }
  return out;
}

Scalar inner(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch in inner product");
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i) s += b[i].conj() * a[i];
  return s;
}

Scalar form(const ExactMatrix& m, const ExactVector& a, const ExactVector& b) { return inner(m * a, b); }

HermitianFactorization factor_hermitian(const ExactMatrix& m) {
  if (!m.is_hermitian()) throw std::invalid_argument("factor_hermitian: matrix is not hermitian");
  const std::size_t n = m.rows();
  ExactMatrix s = m;
  std::vector<ExactVector> u(n, ExactVector(n));
  for (std::size_t k = 0; k < n; ++k) u[k][k] = Scalar(1);
  std::vector<bool> active(n, true);

  HermitianFactorization f;
  auto add_scaled = [](ExactVector& dst, const ExactVector& src, const Scalar& c) {
    for (std::size_t i = 0; i < dst.size(); ++i) {
      if (!src[i].is_zero()) dst[i] -= c * src[i];
    }
  };

  while (true) {
    std::optional<std::size_t> pivot;
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k]) continue;
      const Rational& d = s(k, k).re();
      if (sgn(d) < 0) {
        f.psd = false;
        f.witness = u[k];
        f.witness_value = d;
        return f;
      }
      if (sgn(d) > 0 && !pivot) pivot = k;
    }

    if (!pivot) {
      // every remaining diagonal entry is zero; a nonzero off-diagonal entry
      // S_kl makes t*u_k + u_l indefinite for t = -(|S_ll|+1) S_kl / |S_kl|^2
      for (std::size_t k = 0; k < n; ++k) {
        if (!active[k]) continue;
        for (std::size_t l = 0; l < n; ++l) {
          if (l == k || !active[l] || s(k, l).is_zero()) continue;
          Scalar skl = s(k, l);
          Rational ll = s(l, l).re();
          Rational scale = (abs(ll) + 1) / skl.norm_sq();
          Scalar t = -(skl * Scalar(scale));
          ExactVector w = u[l];
          for (std::size_t i = 0; i < n; ++i) w[i] += t * u[k][i];
          f.psd = false;
          f.witness_value = form(m, w, w).re();
          f.witness = std::move(w);
          return f;
        }
      }
      break;
    }

    const std::size_t p = *pivot;
    const Rational spp = s(p, p).re();
    active[p] = false;
    f.pivots.push_back(p);
    f.pivot_values.push_back(spp);
    f.basis.push_back(u[p]);
    ++f.rank;

    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < n; ++k) {
      if (active[k]) rest.push_back(k);
    }
    for (std::size_t k : rest) {
      if (s(p, k).is_zero()) continue;
      add_scaled(u[k], u[p], s(p, k) / Scalar(spp));
    }
    for (std::size_t l : rest) {
      if (s(l, p).is_zero()) continue;
      for (std::size_t k : rest) {
        if (s(p, k).is_zero()) continue;
        s(l, k) -= s(l, p) * s(p, k) / Scalar(spp);
      }
    }
    for (std::size_t k : rest) {
      s(p, k) = Scalar();
      s(k, p) = Scalar();
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (active[k]) {
      f.null_indices.push_back(k);
      f.null_basis.push_back(u[k]);
    }
  }
  return f;
}

}  // namespace envalg
