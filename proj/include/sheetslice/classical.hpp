// Classical matrix groups GL/SL, SO_{2n+1}, Sp_{2n}, SO_{2n} in fixed coordinates: root elements,
// Weyl representatives, Bruhat decoding, Jordan data and class dimensions.
//
// Coordinates: B_n uses (e0, e1..en, e-1..e-n) with weights (0, eps_i, -eps_i); C_n and D_n use
// (e1..en, e-1..e-n); A_n uses e0..en with weight eps_k. Forms: B J00 = 1, J[i][n+i] = J[n+i][i] = 1;
// C [[0,I],[-I,0]]; D [[0,I],[I,0]]. The Borel subgroup is upper triangular after reordering the
// basis by decreasing weight.
#pragma once

#include "sheetslice/matrix.hpp"
#include "sheetslice/poly.hpp"
#include "sheetslice/rootsys.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sheetslice {

enum class GroupKind { GL, SL, SOOdd, Sp, SOEven };

struct Weight {
  int index = -1;  // -1 for the zero weight
  int sign = 0;
  bool operator==(const Weight&) const = default;
};

class GroupContext {
 public:
  /// type A gives SL_{n+1} (or GL_{n+1} when special is false); B, C, D give SO_{2n+1}, Sp_{2n}, SO_{2n}.
  static GroupContext make(char type, int n, bool special = true);

  char type() const { return type_; }
  int rank() const { return n_; }
  int size() const { return N_; }
  GroupKind kind() const { return kind_; }
  const RootSystem& roots() const { return *rs_; }
  std::shared_ptr<const RootSystem> roots_ptr() const { return rs_; }
  bool has_form() const { return !J_.empty(); }
  /// Signed permutation form matrix (empty for A).
  const std::vector<std::vector<int>>& form() const { return J_; }
  const Weight& weight(int k) const { return wt_[static_cast<std::size_t>(k)]; }
  /// Ambient vector of the weight of basis vector k.
  std::vector<int> weight_vector(int k) const;
  /// Basis indices ordered by decreasing weight.
  const std::vector<int>& flag_order() const { return flag_; }
  int group_dimension() const;
  std::string name() const;

 private:
  char type_ = 'A';
  int n_ = 0, N_ = 0;
  GroupKind kind_ = GroupKind::SL;
  std::shared_ptr<const RootSystem> rs_;
  std::vector<std::vector<int>> J_;
  std::vector<Weight> wt_;
  std::vector<int> flag_;
};

/// Weyl element from its action on the ambient epsilon space (signed permutation); throws when the
/// matrix is not in W.
WeylElement weyl_from_ambient(const RootSystem& rs, const std::vector<std::vector<int>>& m);
/// Partition from the kernel-dimension sequence dim ker N^k, k = 0, 1, ...
std::vector<int> partition_from_kernels(const std::vector<int>& dims, int divisor = 1);
std::string partition_str(const std::vector<int>& p);
/// "(3,2^2,1)"-style string to parts.
std::vector<int> parse_partition(const std::string& s);

template <FieldLike F>
Matrix<F> form_matrix(const GroupContext& ctx, const F& proto) {
  const auto N = static_cast<std::size_t>(ctx.size());
  Matrix<F> J(N, N, proto);
  if (!ctx.has_form()) return Matrix<F>::identity(N, proto);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) J(i, j) = proto.like(ctx.form()[i][j]);
  return J;
}

template <FieldLike F>
bool preserves_form(const GroupContext& ctx, const Matrix<F>& g) {
  if (!ctx.has_form()) return true;
  Matrix<F> J = form_matrix(ctx, g.zero());
  return g.transpose() * J * g == J;
}

/// Form preserved and the determinant condition of the group.
template <FieldLike F>
bool in_group(const GroupContext& ctx, const Matrix<F>& g) {
  if (g.rows() != static_cast<std::size_t>(ctx.size()) || !g.is_square()) return false;
  if (!preserves_form(ctx, g)) return false;
  F d = det(g);
  if (ctx.kind() == GroupKind::GL) return !d.is_zero();
  if (ctx.kind() == GroupKind::Sp) return true;
  return d == g.one();
}

/// Lie algebra root vector X_alpha, normalized to have entry 1 at its first support position.
template <FieldLike F>
Matrix<F> lie_root_vector(const GroupContext& ctx, int root_idx, const F& proto) {
  const RootSystem& rs = ctx.roots();
  auto amb = rs.ambient(rs.root(root_idx));
  const int N = ctx.size();
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      if (a == b) continue;
      auto wa = ctx.weight_vector(a), wb = ctx.weight_vector(b);
      bool match = true;
      for (std::size_t i = 0; i < amb.size(); ++i)
        if (!(Rat(wa[i] - wb[i]) == amb[i])) match = false;
      if (!match) continue;
      Matrix<F> X(static_cast<std::size_t>(N), static_cast<std::size_t>(N), proto);
      X(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = proto.like(1);
      if (ctx.has_form()) {
        // X + sigma(X), sigma(X) = -J^T X^T J
        Matrix<F> J = form_matrix(ctx, proto);
        X = X - J.transpose() * X.transpose() * J;
      }
      F lead = X(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      if (lead.is_zero()) continue;
      return lead.inv() * X;
    }
  throw std::logic_error("no root vector for " + rs.ambient_str(rs.root(root_idx)));
}

/// exp(t X) for nilpotent X (characteristic larger than the nilpotency index).
template <FieldLike F>
Matrix<F> exp_nilpotent(const Matrix<F>& X, const F& t) {
  Matrix<F> r = Matrix<F>::identity(X.rows(), t);
  Matrix<F> term = Matrix<F>::identity(X.rows(), t);
  for (long long k = 1; k <= static_cast<long long>(X.rows()); ++k) {
    term = (t / t.like(k)) * (term * X);
    if (term.is_zero()) return r;
    r = r + term;
  }
  if (!term.is_zero()) throw std::invalid_argument("exp of a non-nilpotent matrix");
  return r;
}

template <FieldLike F>
Matrix<F> root_element(const GroupContext& ctx, int root_idx, const F& t) {
  return exp_nilpotent(lie_root_vector(ctx, root_idx, t), t);
}

/// X_{-alpha} scaled so that [[X_a, X_-a], X_a] = 2 X_a.
template <FieldLike F>
Matrix<F> lie_negative_partner(const GroupContext& ctx, int root_idx, const F& proto) {
  Matrix<F> X = lie_root_vector(ctx, root_idx, proto);
  Matrix<F> Y = lie_root_vector(ctx, ctx.roots().negative_index(root_idx), proto);
  Matrix<F> H = X * Y - Y * X;
  Matrix<F> C = H * X - X * H;
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t j = 0; j < X.cols(); ++j)
      if (!X(i, j).is_zero()) return (proto.like(2) * X(i, j) / C(i, j)) * Y;
  throw std::logic_error("zero root vector");
}

/// n_alpha = x_alpha(1) x_{-alpha}(-1) x_alpha(1).
template <FieldLike F>
Matrix<F> weyl_rep_root(const GroupContext& ctx, int root_idx, const F& proto) {
  Matrix<F> X = lie_root_vector(ctx, root_idx, proto);
  Matrix<F> Y = lie_negative_partner(ctx, root_idx, proto);
  Matrix<F> xa = exp_nilpotent(X, proto.like(1));
  return xa * exp_nilpotent(Y, proto.like(-1)) * xa;
}

/// Product of the simple n_i along the greedy reduced word of w.
template <FieldLike F>
Matrix<F> weyl_rep(const GroupContext& ctx, const WeylElement& w, const F& proto) {
  Matrix<F> m = Matrix<F>::identity(static_cast<std::size_t>(ctx.size()), proto);
  for (int i : reduced_word(w)) m = m * weyl_rep_root(ctx, ctx.roots().simple_index(i), proto);
  return m;
}

/// diag with entry prod_i eps_values[i]^{weight_i}.
template <FieldLike F>
Matrix<F> torus_element(const GroupContext& ctx, const std::vector<F>& eps_values) {
  const auto N = static_cast<std::size_t>(ctx.size());
  Matrix<F> t(N, N, eps_values.at(0));
  for (std::size_t k = 0; k < N; ++k) {
    auto w = ctx.weight_vector(static_cast<int>(k));
    F v = eps_values[0].like(1);
    for (std::size_t i = 0; i < w.size(); ++i) v = v * power(eps_values[i], w[i]);
    t(k, k) = v;
  }
  return t;
}

/// Permutation sigma (as column -> row) with g in B sigma B for upper-triangular B.
template <FieldLike F>
std::vector<int> bruhat_permutation(const Matrix<F>& g) {
  const std::size_t N = g.rows();
  // r[i][j] = rank of rows i.., columns 0..j-1
  std::vector<std::vector<int>> r(N + 1, std::vector<int>(N + 1, 0));
  for (std::size_t i = N; i-- > 0;) {
    Matrix<F> sub = g.block(i, 0, N - i, N);
    auto piv = row_reduce(sub);
    for (std::size_t j = 1; j <= N; ++j) {
      int c = 0;
      for (auto p : piv)
        if (p < j) ++c;
      r[i][j] = c;
    }
  }
  if (r[0][N] != static_cast<int>(N)) throw std::invalid_argument("matrix is not invertible");
  std::vector<int> sigma(N, -1);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (r[i][j + 1] - r[i + 1][j + 1] - r[i][j] + r[i + 1][j] == 1) sigma[j] = static_cast<int>(i);
  return sigma;
}

WeylElement weyl_from_flag_permutation(const GroupContext& ctx, const std::vector<int>& sigma);

/// The w with g in BwB.
template <FieldLike F>
WeylElement bruhat_word(const GroupContext& ctx, const Matrix<F>& g) {
  if (ctx.has_form() && !preserves_form(ctx, g)) throw std::invalid_argument("matrix does not preserve the form");
  const auto& fl = ctx.flag_order();
  const std::size_t N = g.rows();
  Matrix<F> h(N, N, g.zero());
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) h(a, b) = g(static_cast<std::size_t>(fl[a]), static_cast<std::size_t>(fl[b]));
  return weyl_from_flag_permutation(ctx, bruhat_permutation(h));
}

/// dim ker (m)^k for k = 0..N.
template <FieldLike F>
std::vector<int> kernel_dims(const Matrix<F>& m) {
  std::vector<int> d{0};
  Matrix<F> p = Matrix<F>::identity(m.rows(), m.zero());
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    p = p * m;
    d.push_back(static_cast<int>(m.rows() - rank(p)));
    if (d.back() == d[d.size() - 2]) break;
  }
  return d;
}

template <FieldLike F>
bool is_unipotent(const Matrix<F>& u) {
  auto d = kernel_dims(u.shifted(u.one()));
  return d.back() == static_cast<int>(u.rows());
}

template <FieldLike F>
std::vector<int> unipotent_partition(const Matrix<F>& u) {
  auto d = kernel_dims(u.shifted(u.one()));
  if (d.back() != static_cast<int>(u.rows())) throw std::invalid_argument("matrix is not unipotent");
  return partition_from_kernels(d);
}

/// Jordan partition at eigenvalue lambda (empty when lambda is not an eigenvalue).
template <FieldLike F>
std::vector<int> jordan_partition(const Matrix<F>& g, const F& lambda) {
  return partition_from_kernels(kernel_dims(g.shifted(lambda)));
}

/// dim of the Lie-algebra centralizer {X : Xg = gX} within the group's Lie algebra.
template <FieldLike F>
int centralizer_dimension(const GroupContext& ctx, const Matrix<F>& g) {
  const std::size_t N = g.rows();
  const std::size_t U = N * N;
  const bool form = ctx.has_form();
  Matrix<F> J = form_matrix(ctx, g.zero());
  Matrix<F> A((form ? 2 : 1) * U, U, g.zero());
  auto var = [N](std::size_t a, std::size_t b) { return a * N + b; };
  // (Xg - gX)_{ij} = sum_k X_ik g_kj - g_ik X_kj
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      std::size_t row = var(i, j);
      for (std::size_t k = 0; k < N; ++k) {
        A(row, var(i, k)) = A(row, var(i, k)) + g(k, j);
        A(row, var(k, j)) = A(row, var(k, j)) - g(i, k);
      }
    }
  if (form) {
    // (X^T J + J X)_{ij} = sum_k X_ki J_kj + J_ik X_kj
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        std::size_t row = U + var(i, j);
        for (std::size_t k = 0; k < N; ++k) {
          if (!J(k, j).is_zero()) A(row, var(k, i)) = A(row, var(k, i)) + J(k, j);
          if (!J(i, k).is_zero()) A(row, var(k, j)) = A(row, var(k, j)) + J(i, k);
        }
      }
  }
  int dim = static_cast<int>(U - rank(A));
  // the SL centralizer is the GL one modulo scalars
  if (ctx.kind() == GroupKind::SL) --dim;
  return dim;
}

template <FieldLike F>
int class_dimension(const GroupContext& ctx, const Matrix<F>& g) {
  return ctx.group_dimension() - centralizer_dimension(ctx, g);
}

struct FactorBlock {
  std::string factor;
  int degree = 0;
  std::vector<int> partition;
};

struct ClassInvariants {
  std::string charpoly;
  std::vector<FactorBlock> blocks;  // sorted by factor
  std::optional<std::vector<int>> unipotent;
  int dimension = -1;
  /// Canonical string: factors with Jordan partitions.
  std::string key() const;
};

/// Charpoly factorization with per-factor Jordan partitions; dimension when a context is given.
template <FiniteFieldLike F>
ClassInvariants class_invariants(const Matrix<F>& g, const GroupContext* ctx = nullptr) {
  ClassInvariants inv;
  Poly<F> cp = charpoly(g);
  inv.charpoly = cp.str();
  for (const auto& pf : factor_finite(cp)) {
    FactorBlock b;
    b.factor = pf.factor.str();
    b.degree = pf.factor.degree();
    b.partition = partition_from_kernels(kernel_dims(poly_eval(pf.factor, g)), b.degree);
    inv.blocks.push_back(std::move(b));
  }
  if (inv.blocks.size() == 1 && inv.blocks[0].degree == 1 && cp(g.one()).is_zero()) inv.unipotent = inv.blocks[0].partition;
  if (ctx) inv.dimension = class_dimension(*ctx, g);
  return inv;
}

}  // namespace sheetslice
