// Small dense integer matrices and Smith normal form.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sheetslice {

class IntMat {
 public:
  IntMat() = default;
  IntMat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows * cols), 0) {}
  IntMat(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMat identity(int n);
  static IntMat from_rows(const std::vector<std::vector<long long>>& rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  long long& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * c_ + j)]; }
  long long operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * c_ + j)]; }
  const std::vector<long long>& data() const { return a_; }

  IntMat transpose() const;
  std::vector<long long> apply(const std::vector<long long>& v) const;
  std::vector<int> apply(const std::vector<int>& v) const;
  std::vector<long long> column(int j) const;

  friend IntMat operator*(const IntMat& a, const IntMat& b);
  friend IntMat operator+(const IntMat& a, const IntMat& b);
  friend IntMat operator-(const IntMat& a, const IntMat& b);
  IntMat operator-() const;
  friend bool operator==(const IntMat& a, const IntMat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
  bool is_identity() const;
  bool is_zero() const;

  std::size_t hash() const;
  std::string str() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<long long> a_;
};

struct IntMatHash {
  std::size_t operator()(const IntMat& m) const { return m.hash(); }
};

/// Rank over Q.
int rank_q(const IntMat& m);
/// Integer kernel basis (saturated), columns as vectors.
std::vector<std::vector<long long>> integer_kernel(const IntMat& m);
/// Integer inverse of a unimodular matrix; throws otherwise.
IntMat unimodular_inverse(const IntMat& m);

/// U * A * V = D with U, V unimodular and D diagonal d_1 | d_2 | ... (nonnegative).
struct SmithForm {
  IntMat U, V, D;
  std::vector<long long> diagonal;  // length min(rows, cols)
};
SmithForm smith_normal_form(const IntMat& a);

}  // namespace sheetslice
