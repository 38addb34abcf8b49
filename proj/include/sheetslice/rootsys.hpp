// Root systems of simple type and their Weyl groups acting on the root lattice.
#pragma once

#include "sheetslice/field.hpp"
#include "sheetslice/intmat.hpp"

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace sheetslice {

class WeylElement;

using RootVec = std::vector<int>;  // coordinates in the simple-root basis

class RootSystem : public std::enable_shared_from_this<RootSystem> {
 public:
  /// Types A..G with the usual rank ranges (B,C >= 2, D >= 4 accepted from 3, E 6..8, F 4, G 2).
  static std::shared_ptr<const RootSystem> build(char type, int rank);

  char type() const { return type_; }
  int rank() const { return rank_; }
  std::string label() const { return std::string(1, type_) + std::to_string(rank_); }

  /// Positive roots first (by height, then coordinates), then their negatives in the same order.
  const std::vector<RootVec>& roots() const { return roots_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  int num_positive() const { return static_cast<int>(roots_.size() / 2); }
  const RootVec& root(int idx) const { return roots_[static_cast<std::size_t>(idx)]; }
  bool is_positive_index(int idx) const { return idx < num_positive(); }
  int negative_index(int idx) const { return idx < num_positive() ? idx + num_positive() : idx - num_positive(); }
  /// -1 when v is not a root.
  int root_index(const RootVec& v) const;
  int simple_index(int i) const { return root_index(unit(i)); }
  int highest_root() const { return num_positive() - 1; }

  /// a_ij = <alpha_i, alpha_j^vee>
  const IntMat& cartan() const { return cartan_; }
  /// (alpha_i, alpha_j) in the ambient Euclidean form
  const std::vector<std::vector<Rat>>& gram() const { return gram_; }
  Rat inner(const RootVec& a, const RootVec& b) const;
  /// <a, b^vee> = 2(a,b)/(b,b)
  int pairing(const RootVec& a, const RootVec& b) const;
  /// b^vee expressed in the basis of simple coroots
  RootVec coroot(const RootVec& b) const;
  /// simple-root coordinates of the coroot-space vector sum c_i alpha_i^vee, when it is a coroot
  int coroot_index(const RootVec& c) const;
  /// Sum of the coefficients.
  static int height(const RootVec& v);
  static bool is_positive_vec(const RootVec& v);

  /// Standard orthonormal-coordinate realization.
  int ambient_dim() const { return ambient_dim_; }
  std::vector<Rat> ambient(const RootVec& v) const;
  /// Inverse of ambient(); throws when the vector is not in the root lattice.
  RootVec from_ambient(const std::vector<Rat>& x) const;
  std::string ambient_str(const RootVec& v) const;
  /// One root per line in ambient coordinates.
  std::string debug_dump() const;

  RootVec unit(int i) const;
  WeylElement identity() const;
  WeylElement simple_reflection(int i) const;
  WeylElement reflection(const RootVec& beta) const;
  WeylElement longest() const;

  /// Order of W by the product of (degrees).
  long long weyl_order() const;

 private:
  RootSystem() = default;
  void generate();

  char type_ = 'A';
  int rank_ = 0;
  int ambient_dim_ = 0;
  std::vector<std::vector<Rat>> simple_ambient_;
  IntMat cartan_;
  std::vector<std::vector<Rat>> gram_;
  std::vector<RootVec> roots_;
  std::map<RootVec, int> index_;
  std::vector<std::vector<Rat>> ambient_to_simple_;  // left inverse of the simple-root matrix
};

/// Element of W stored as its integer matrix on the root lattice (column j = w(alpha_j)).
class WeylElement {
 public:
  WeylElement() = default;
  WeylElement(std::shared_ptr<const RootSystem> rs, IntMat m);

  const RootSystem& system() const { return *rs_; }
  std::shared_ptr<const RootSystem> system_ptr() const { return rs_; }
  const IntMat& matrix() const { return m_; }
  RootVec apply(const RootVec& v) const { return m_.apply(v); }
  int apply_index(int root_idx) const;
  int length() const { return len_; }
  bool is_identity() const { return m_.is_identity(); }
  bool is_involution() const;
  WeylElement inverse() const;
  /// Right descent: l(w s_i) < l(w).
  bool has_right_descent(int i) const;
  bool has_left_descent(int i) const;
  /// Action on the coroot lattice in the basis of simple coroots.
  IntMat coroot_matrix() const;
  /// Action on the ambient space of the standard realization.
  std::vector<std::vector<Rat>> ambient_matrix() const;

  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.m_ == b.m_; }
  friend bool operator<(const WeylElement& a, const WeylElement& b) {
    if (a.len_ != b.len_) return a.len_ < b.len_;
    return a.m_.data() < b.m_.data();
  }
  std::size_t hash() const { return m_.hash(); }

 private:
  std::shared_ptr<const RootSystem> rs_;
  IntMat m_;
  int len_ = 0;
};

struct WeylHash {
  std::size_t operator()(const WeylElement& w) const { return w.hash(); }
};

int length(const WeylElement& w);
/// Reduced word (simple reflection indices, 0-based) by greedy right descent; w = s_{i1} ... s_{ik}.
std::vector<int> reduced_word(const WeylElement& w);
WeylElement from_word(const RootSystem& rs, const std::vector<int>& word);
/// Longest element of the parabolic subgroup generated by the simple reflections in pi (0-based).
WeylElement longest_element(const RootSystem& rs, const std::vector<int>& pi);

struct W0WPiResult {
  WeylElement w;
  bool fixes_pi_pointwise = false;
};
/// w0 * w_Pi; throws std::invalid_argument when -w0 does not stabilize Pi.
W0WPiResult w0_wPi(const RootSystem& rs, const std::vector<int>& pi);
int minus_one_rank(const WeylElement& w);
bool bruhat_leq(const WeylElement& u, const WeylElement& v);
/// Literal subword check over all subwords of one reduced word (exponential; test use).
bool bruhat_leq_subword(const WeylElement& u, const WeylElement& v);
/// Conjugacy class by closure under simple-reflection conjugation, sorted.
std::vector<WeylElement> conjugacy_class(const WeylElement& w);
bool is_bruhat_max_in_class(const WeylElement& w);
/// All of W (refuses beyond max_size).
std::vector<WeylElement> all_elements(const RootSystem& rs, std::size_t max_size = 500000);
/// Conjugacy classes of involutions (identity included), each sorted, classes ordered by representative.
std::vector<std::vector<WeylElement>> involution_classes(const RootSystem& rs);
/// Elements of the parabolic subgroup W_Pi.
std::vector<WeylElement> parabolic_elements(const RootSystem& rs, const std::vector<int>& pi);

}  // namespace sheetslice
