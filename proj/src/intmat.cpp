#include "sheetslice/intmat.hpp"

#include "sheetslice/matrix.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace sheetslice {

namespace {

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer matrix overflow");
  return r;
}

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer matrix overflow");
  return r;
}

}  // namespace

IntMat::IntMat(std::initializer_list<std::initializer_list<long long>> rows) {
  r_ = static_cast<int>(rows.size());
  c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
  for (auto& row : rows) {
    if (static_cast<int>(row.size()) != c_) throw std::invalid_argument("ragged integer matrix");
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<std::vector<long long>>& rows) {
  IntMat m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.r_; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.c_) throw std::invalid_argument("ragged integer matrix");
    for (int j = 0; j < m.c_; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

IntMat IntMat::transpose() const {
  IntMat t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<long long> IntMat::apply(const std::vector<long long>& v) const {
  if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("vector length mismatch");
  std::vector<long long> r(static_cast<std::size_t>(r_), 0);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if ((*this)(i, j)) r[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
  return r;
}

std::vector<int> IntMat::apply(const std::vector<int>& v) const {
  if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("vector length mismatch");
  std::vector<int> r(static_cast<std::size_t>(r_), 0);
  for (int i = 0; i < r_; ++i) {
    long long s = 0;
    for (int j = 0; j < c_; ++j) s += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(i)] = static_cast<int>(s);
  }
  return r;
}

std::vector<long long> IntMat::column(int j) const {
  std::vector<long long> c(static_cast<std::size_t>(r_));
  for (int i = 0; i < r_; ++i) c[static_cast<std::size_t>(i)] = (*this)(i, j);
  return c;
}

IntMat operator*(const IntMat& a, const IntMat& b) {
  if (a.c_ != b.r_) throw std::invalid_argument("integer matrix product shape mismatch");
  IntMat r(a.r_, b.c_);
  for (int i = 0; i < a.r_; ++i)
    for (int k = 0; k < a.c_; ++k) {
      long long x = a(i, k);
      if (!x) continue;
      for (int j = 0; j < b.c_; ++j) r(i, j) = checked_add(r(i, j), checked_mul(x, b(k, j)));
    }
  return r;
}

IntMat operator+(const IntMat& a, const IntMat& b) {
  IntMat r = a;
  for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = checked_add(a.a_[k], b.a_[k]);
  return r;
}

IntMat operator-(const IntMat& a, const IntMat& b) { return a + (-b); }

IntMat IntMat::operator-() const {
  IntMat r = *this;
  for (auto& x : r.a_) x = -x;
  return r;
}

bool IntMat::is_identity() const { return r_ == c_ && *this == identity(r_); }

bool IntMat::is_zero() const {
  for (auto x : a_)
    if (x) return false;
  return true;
}

std::size_t IntMat::hash() const {
  std::size_t h = static_cast<std::size_t>(r_) * 131 + static_cast<std::size_t>(c_);
  for (auto x : a_) h = h * 1000003u ^ static_cast<std::size_t>(x + 0x9e37);
  return h;
}

std::string IntMat::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < r_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j);
  }
  os << "]";
  return os.str();
}

int rank_q(const IntMat& m) {
  Matrix<Rat> q(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()), Rat(0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) q(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rat(m(i, j));
  return static_cast<int>(rank(q));
}

IntMat unimodular_inverse(const IntMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("non-square matrix");
  const auto n = static_cast<std::size_t>(m.rows());
  Matrix<Rat> q(n, n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = Rat(m(static_cast<int>(i), static_cast<int>(j)));
  auto inv = inverse(q);
  if (!inv) throw std::domain_error("matrix is singular");
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const mpq_class& v = (*inv)(i, j).q();
      if (v.get_den() != 1) throw std::domain_error("matrix is not unimodular");
      r(static_cast<int>(i), static_cast<int>(j)) = v.get_num().get_si();
    }
  return r;
}

namespace {

void swap_rows(IntMat& m, int a, int b) {
  for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMat& m, int a, int b) {
  for (int i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row a += f * row b
void add_row(IntMat& m, int a, int b, long long f) {
  for (int j = 0; j < m.cols(); ++j) m(a, j) = checked_add(m(a, j), checked_mul(f, m(b, j)));
}
void add_col(IntMat& m, int a, int b, long long f) {
  for (int i = 0; i < m.rows(); ++i) m(i, a) = checked_add(m(i, a), checked_mul(f, m(i, b)));
}
void neg_row(IntMat& m, int a) {
  for (int j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
}

}  // namespace

SmithForm smith_normal_form(const IntMat& a) {
  SmithForm s;
  s.D = a;
  s.U = IntMat::identity(a.rows());
  s.V = IntMat::identity(a.cols());
  IntMat& D = s.D;
  const int R = a.rows(), C = a.cols();
  for (int t = 0; t < std::min(R, C); ++t) {
    for (;;) {
      // smallest nonzero entry in the trailing block
      int bi = -1, bj = -1;
      for (int i = t; i < R; ++i)
        for (int j = t; j < C; ++j)
          if (D(i, j) && (bi < 0 || std::llabs(D(i, j)) < std::llabs(D(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) goto done;
      swap_rows(D, t, bi);
      swap_rows(s.U, t, bi);
      swap_cols(D, t, bj);
      swap_cols(s.V, t, bj);
      bool clean = true;
      for (int i = t + 1; i < R; ++i) {
        long long f = D(i, t) / D(t, t);
        if (f) {
          add_row(D, i, t, -f);
          add_row(s.U, i, t, -f);
        }
        if (D(i, t)) clean = false;
      }
      for (int j = t + 1; j < C; ++j) {
        long long f = D(t, j) / D(t, t);
        if (f) {
          add_col(D, j, t, -f);
          add_col(s.V, j, t, -f);
        }
        if (D(t, j)) clean = false;
      }
      if (!clean) continue;
      // divisibility of the trailing block
      int bad = -1;
      for (int i = t + 1; i < R && bad < 0; ++i)
        for (int j = t + 1; j < C; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row(D, t, bad, 1);
      add_row(s.U, t, bad, 1);
    }
    if (D(t, t) < 0) {
      neg_row(D, t);
      neg_row(s.U, t);
    }
  }
done:
  for (int t = 0; t < std::min(R, C); ++t) s.diagonal.push_back(D(t, t));
  return s;
}

std::vector<std::vector<long long>> integer_kernel(const IntMat& m) {
  SmithForm s = smith_normal_form(m);
  int r = 0;
  for (auto d : s.diagonal)
    if (d) ++r;
  std::vector<std::vector<long long>> basis;
  for (int j = r; j < m.cols(); ++j) basis.push_back(s.V.column(j));
  return basis;
}

}  // namespace sheetslice
