// Dense matrices over exact fields.
#pragma once

#include "sheetslice/field.hpp"
#include "sheetslice/poly.hpp"

#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sheetslice {

template <FieldLike F>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const F& proto)
      : r_(rows), c_(cols), a_(rows * cols, proto.like(0)), zero_(proto.like(0)) {}

  static Matrix identity(std::size_t n, const F& proto) {
    Matrix m(n, n, proto);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = proto.like(1);
    return m;
  }
  static Matrix from_ints(const std::vector<std::vector<long long>>& rows, const F& proto) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), proto);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = proto.like(rows[i][j]);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  const F& zero() const { return zero_; }
  F one() const { return zero_.like(1); }
  F& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  const std::vector<F>& data() const { return a_; }

  Matrix transpose() const {
    Matrix t(c_, r_, zero_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(a.r_, b.c_, a.zero_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const F& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.c_; ++j) r(i, j) = r(i, j) + x * b(k, j);
      }
    return r;
  }
  friend Matrix operator*(const F& s, const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.a_) x = s * x;
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

  /// this - s*I
  Matrix shifted(const F& s) const {
    Matrix r = *this;
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) r(i, i) = r(i, i) - s;
    return r;
  }
  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_square() const { return r_ == c_; }

  Matrix block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc, zero_);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }
  void set_block(std::size_t i0, std::size_t j0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  /// Rows separated by ';' or newlines, entries by spaces or commas.
  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j).str();
      os << (i + 1 < r_ ? "; " : "");
    }
    return os.str();
  }

 private:
  void check_same(const Matrix& b) const {
    if (r_ != b.r_ || c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
  }
  std::size_t r_, c_;
  std::vector<F> a_;
  F zero_;
};

/// Row echelon form in place; returns pivot columns.
template <FieldLike F>
std::vector<std::size_t> row_reduce(Matrix<F>& m, bool reduced = false) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    F inv = m(row, col).inv();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = reduced ? 0 : row + 1; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      F f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <FieldLike F>
std::size_t rank(Matrix<F> m) {
  return row_reduce(m).size();
}

/// Fraction-free (Bareiss) rank over Q.
std::size_t rank(const Matrix<Rat>& m);

template <FieldLike F>
F det(Matrix<F> m) {
  if (!m.is_square()) throw std::invalid_argument("det of non-square matrix");
  F d = m.one();
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return m.zero();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d = d * m(c, c);
    F inv = m(c, c).inv();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      F f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return d;
}

template <FieldLike F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  const std::size_t n = m.rows();
  Matrix<F> aug(n, 2 * n, m.zero());
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix<F>::identity(n, m.zero()));
  auto piv = row_reduce(aug, true);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  return aug.block(0, n, n, n);
}

template <FieldLike F>
Matrix<F> inverse_or_throw(const Matrix<F>& m) {
  auto r = inverse(m);
  if (!r) throw std::domain_error("matrix is singular");
  return *r;
}

/// Basis of the right kernel, as column vectors.
template <FieldLike F>
std::vector<std::vector<F>> nullspace(Matrix<F> m) {
  auto piv = row_reduce(m, true);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_piv[free]) continue;
    std::vector<F> v(m.cols(), m.zero());
    v[free] = m.one();
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <FieldLike F>
Matrix<F> mat_pow(Matrix<F> m, unsigned e) {
  Matrix<F> r = Matrix<F>::identity(m.rows(), m.zero());
  while (e) {
    if (e & 1) r = r * m;
    m = m * m;
    e >>= 1;
  }
  return r;
}

template <FieldLike F>
Matrix<F> poly_eval(const Poly<F>& p, const Matrix<F>& m) {
  Matrix<F> acc(m.rows(), m.cols(), m.zero());
  for (int i = p.degree(); i >= 0; --i) acc = (acc * m).shifted(-p[static_cast<std::size_t>(i)]);
  return acc;
}

/// Characteristic polynomial det(xI - m) via Hessenberg reduction.
template <FieldLike F>
Poly<F> charpoly(Matrix<F> h) {
  const std::size_t n = h.rows();
  const F z = h.zero();
  for (std::size_t j = 0; j + 2 <= n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h(piv, j).is_zero()) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    F inv = h(j + 1, j).inv();
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h(i, j).is_zero()) continue;
      F f = h(i, j) * inv;
      for (std::size_t c = 0; c < n; ++c) h(i, c) = h(i, c) - f * h(j + 1, c);
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) = h(r, j + 1) + f * h(r, i);
    }
  }
  std::vector<Poly<F>> p;
  p.push_back(Poly<F>::constant(z.like(1)));
  for (std::size_t k = 0; k < n; ++k) {
    Poly<F> next = Poly<F>(z, {-h(k, k), z.like(1)}) * p[k];
    F prod = z.like(1);
    for (std::size_t i = k; i-- > 0;) {
      prod = prod * h(i + 1, i);
      next = next - Poly<F>::constant(prod * h(i, k)) * p[i];
    }
    p.push_back(next);
  }
  return p[n];
}

Matrix<Rat> parse_matrix_rat(const std::string& text);
Matrix<Fp> parse_matrix_fp(const std::string& text, std::uint32_t p);

}  // namespace sheetslice
