// Brute-force oracle on tiny groups of Lie type: GF(q) by tables, full enumeration, conjugacy
// classes by orbit expansion, Bruhat cells by elimination, w_O, the dimension formula, slice-orbit
// checks and normalization into the fixed torus.
//
// Coordinates: SL_N on e1..eN; Sp_{2n} and SO_{2n+1} on e1..en, (e0), e-n..e-1 with antidiagonal
// forms J(i, N-1-i) = 1 (Sp: -1 for i >= n). B is upper triangular. None of the arithmetic below
// goes through the exact-arithmetic layer; the catalog is only consulted to compare answers.
#pragma once

#include "sheetslice/sheetcat.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sheetslice {

/// SHEETSLICE_BUDGET or 10^7 group elements.
long long default_budget();

class TableField {
 public:
  using Elt = std::uint8_t;
  /// q = p^k <= 256, cached per q.
  static std::shared_ptr<const TableField> get(std::uint32_t q);

  std::uint32_t q() const { return q_; }
  std::uint32_t p() const { return p_; }
  int degree() const { return k_; }
  Elt add(Elt a, Elt b) const { return add_[a * q_ + b]; }
  Elt mul(Elt a, Elt b) const { return mul_[a * q_ + b]; }
  Elt neg(Elt a) const { return neg_[a]; }
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  /// Throws on zero.
  Elt inv(Elt a) const;
  Elt pow(Elt a, long long e) const;
  Elt from_int(long long v) const;
  Elt one() const { return 1; }
  /// A generator of the multiplicative group.
  Elt generator() const { return gen_; }
  bool in_subfield(Elt a, std::uint32_t sub_q) const { return pow(a, sub_q) == a; }
  /// Image of GF(small) in this field, indexed by the elements of small.
  std::vector<Elt> embedding_from(const TableField& small) const;
  /// Solutions of x^n = 1.
  std::vector<Elt> roots_of_unity(int n) const;
  /// Integers for prime fields, "g^k" for powers of the generator otherwise.
  std::string str(Elt a) const;
  std::string name() const;
  /// Coefficients over F_p of the modulus, constant term first.
  const std::vector<int>& modulus() const { return modulus_; }

 private:
  TableField(std::uint32_t p, int k);
  std::uint32_t q_ = 0, p_ = 0;
  int k_ = 1;
  std::vector<int> modulus_;
  std::vector<Elt> add_, mul_, neg_, inv_, log_;
  Elt gen_ = 1;
};

/// Square matrix of size at most 6 with entries in a TableField.
struct OMat {
  int n = 0;
  std::array<TableField::Elt, 36> a{};
  TableField::Elt& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  TableField::Elt operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  bool operator==(const OMat&) const = default;
};

OMat omat_identity(int n);
OMat omat_mul(const TableField& F, const OMat& A, const OMat& B);
OMat omat_inverse(const TableField& F, const OMat& A);
TableField::Elt omat_det(const TableField& F, const OMat& A);
/// Entrywise image under a field embedding.
OMat omat_map(const OMat& A, const std::vector<TableField::Elt>& emb);
/// Preimage of an embedding; nullopt when an entry is outside the subfield.
std::optional<OMat> omat_restrict(const OMat& A, const std::vector<TableField::Elt>& emb);
std::string omat_str(const TableField& F, const OMat& A);

/// Characteristic polynomial det(xI - A), constant term first (division-free).
std::vector<TableField::Elt> omat_charpoly(const TableField& F, const OMat& A);

/// Jordan data over GF(q): monic irreducible factors of the characteristic polynomial with the
/// partition of each primary component, and the matching catalog record.
struct OracleJordan {
  std::string key;  // determines the class over the algebraic closure
  std::vector<EigenData> data;
};
OracleJordan oracle_jordan(const TableField& F, const OMat& A);

struct BudgetExceeded : std::runtime_error {
  long long estimated;
  BudgetExceeded(const std::string& what, long long est) : std::runtime_error(what), estimated(est) {}
};

class FiniteGroup {
 public:
  /// |G(F_q)| for SL_N (type A, rank N-1), Sp_4 (C2) and SO_5 (B2).
  static long long order_formula(char type, int rank, std::uint32_t q);
  /// Types A1, A2 (any q), C2 and B2 (odd q). Other types and char 2 outside type A are refused;
  /// an order above the budget throws BudgetExceeded with the order as the estimated cost.
  static FiniteGroup enumerate(char type, int rank, std::uint32_t q, long long budget = default_budget());

  char type() const { return type_; }
  int rank() const { return rank_; }
  std::uint32_t q() const { return field_->q(); }
  int size() const { return N_; }
  const TableField& field() const { return *field_; }
  std::shared_ptr<const TableField> field_ptr() const { return field_; }
  std::string name() const;
  int dimension() const;
  long long order() const { return static_cast<long long>(elements_.size()); }
  const std::vector<std::uint64_t>& elements() const { return elements_; }
  const std::vector<OMat>& generators() const { return gens_; }
  /// Form matrix entries (identity for SL).
  const std::vector<int>& form() const { return J_; }

  std::uint64_t encode(const OMat& g) const;
  OMat decode(std::uint64_t code) const;
  /// Position in elements(), -1 when absent.
  long long index_of(std::uint64_t code) const;
  long long index_of(const OMat& g) const { return index_of(encode(g)); }

  /// Form and determinant conditions over any field containing the entries.
  bool in_group(const TableField& F, const OMat& g) const;
  /// Ambient epsilon-vector of the weight of basis position j.
  std::vector<int> weight(int j) const;
  int ambient_dim() const;
  /// Positive roots as ambient vectors with one Lie algebra root vector each (over F).
  struct Root {
    std::vector<int> vec;
    int a = 0, b = 0;  // first support position of the root vector
  };
  const std::vector<Root>& positive_roots() const { return roots_; }
  /// exp(c X_alpha) for a root, positive or negative.
  OMat root_element(const TableField& F, const std::vector<int>& alpha, TableField::Elt c) const;

 private:
  char type_ = 'A';
  int rank_ = 0, N_ = 0;
  std::shared_ptr<const TableField> field_;
  std::vector<int> J_;
  std::vector<OMat> gens_;
  std::vector<std::uint64_t> elements_;
  std::vector<std::uint32_t> table_;  // open addressing index into elements_
  std::uint64_t mask_ = 0;
  std::vector<Root> roots_;
  void build_roots();
  OMat lie_root_vector(const TableField& F, const std::vector<int>& alpha) const;
};

/// Permutation pi with g in B pi B, pi[j] = row of the pivot in column j.
std::vector<int> bruhat_cell(const TableField& F, const OMat& g);
/// Rank-pattern Bruhat order on permutations.
bool bruhat_leq(const std::vector<int>& u, const std::vector<int>& v);

struct OracleWeyl {
  std::vector<int> perm;
  std::vector<std::vector<int>> ambient;  // signed permutation on the epsilon basis
  int length = 0;
  int minus_rank = 0;
  std::string str() const;
};
OracleWeyl oracle_weyl(const FiniteGroup& G, const std::vector<int>& perm);
/// Catalog Weyl element with the same action on the epsilon basis.
WeylElement to_catalog_weyl(const FiniteGroup& G, const OracleWeyl& w);

struct OracleClass {
  int index = 0;
  std::uint64_t rep = 0;
  long long size = 0;
  int geometric = 0;  // index of the class over the algebraic closure
  std::string jordan;
  int dimension = 0;
  bool spherical = false;
  std::string spherical_kind;
  std::map<std::vector<int>, long long> cells;  // incident Bruhat cells with multiplicities
};

struct ClassData {
  std::vector<std::int32_t> class_of;  // per element index
  std::vector<OracleClass> classes;
  std::vector<std::string> geometric;  // Jordan keys
  long long class_size_sum = 0;
  bool sizes_divide = true;
  std::map<std::vector<int>, long long> cell_sizes;
};
/// Classes, their Jordan data, class dimensions from the Lie algebra centralizer, and the Bruhat
/// cells met by every class.
ClassData conjugacy_classes(const FiniteGroup& G);

/// Centralizer dimension of g in Lie(G) (in gl_N minus one for SL).
int oracle_centralizer_dimension(const FiniteGroup& G, const OMat& g);

struct WClassResult {
  std::vector<std::vector<int>> incident;
  std::vector<std::vector<int>> maximal;
  bool unique = false;
  std::vector<int> w;  // the maximum when unique
};
WClassResult w_of_class(const ClassData& cd, int c);

struct DimensionRow {
  int class_index = 0;
  std::string rep;
  long long size = 0;
  std::string jordan;
  int dimension = 0;
  std::string w_O;  // maximal cells, '|' separated for antichains
  int length = 0, minus_rank = 0;
  bool unique_max = false;
  bool inequality = false;  // dim O >= l(w) + rk(1 - w) for every incident w
  bool equality_at_wO = false;
  bool spherical = false;
  std::string spherical_kind;
  bool ok() const { return inequality && (equality_at_wO == spherical) && (!spherical || unique_max); }
};
DimensionRow verify_dimension_formula(const FiniteGroup& G, const ClassData& cd, int c);

struct OracleSuite {
  std::string group;
  long long order = 0, order_formula = 0;
  int classes = 0, geometric_classes = 0;
  bool sizes_divide = false;
  bool bruhat_partition = false;  // cells cover the group with sizes |B| q^l(w)
  std::vector<std::string> cell_failures;
  std::vector<DimensionRow> rows;
  int catalog_compared = 0;
  std::vector<std::string> catalog_mismatches;  // w_O against w_S for classes in a catalog sheet
  bool ok() const;
};
OracleSuite run_oracle_suite(const FiniteGroup& G, const ClassData& cd);

/// The set w T^w U^w inside G over F, with w given by a monomial representative.
struct SliceSet {
  std::vector<int> perm;
  OMat wdot;
  std::vector<OMat> torus;      // T^w (coset when wdot is outside SL)
  std::vector<OMat> unipotent;  // U^w
};
SliceSet slice_set(const FiniteGroup& G, const TableField& F, const std::vector<int>& perm, const OMat& wdot);
/// A monomial matrix in G with permutation perm, first sign pattern found.
OMat oracle_wdot(const FiniteGroup& G, const std::vector<int>& perm);
/// Catalog representative moved to oracle coordinates.
OMat catalog_wdot(const FiniteGroup& G, const SheetDescriptor& d);

/// Gamma_w = {t in (T_w)° : t^2 in T^w} over F, from a basis of cocharacters in ker(1 + w).
std::vector<OMat> oracle_gamma(const FiniteGroup& G, const TableField& F, const std::vector<int>& perm);

struct SliceOrbitReport {
  std::string group;
  int geometric = 0;
  std::string jordan;
  std::string w;
  std::string wdot_source;
  long long slice_points = 0;
  long long intersection = 0;
  bool nonempty = false;
  std::string nonempty_field;
  long long gamma_order = 0, gamma_rational = 0;
  bool stable = false;
  int orbits_rational = 0;  // under Gamma_w(F_q)
  int orbits = 0;           // after escalation
  bool transitive = false;
  bool escalated = false;
  std::vector<std::string> log;
  bool ok() const { return nonempty && stable && transitive; }
};
/// O the geometric class, w = w_O; wdot from the catalog when given.
SliceOrbitReport slice_orbit_check(const FiniteGroup& G, const ClassData& cd, int geometric,
                                   std::optional<OMat> wdot = std::nullopt, const std::string& source = "oracle");
/// Every spherical geometric class with the catalog representative when a catalog sheet contains it.
std::vector<SliceOrbitReport> slice_orbit_suite(const FiniteGroup& G, const ClassData& cd);

struct NormalizeResult {
  bool found = false;
  std::uint32_t field_q = 0;  // field of s and of the output
  std::string extension;      // "F_9" when s needs the quadratic extension
  OMat s, result;
  bool verified = false;      // result in w T^w U
  std::string note;
};
/// x = wdot t_w t^w u with t_w in (T_w)°: conjugates x by s with s^-2 = t_w (output s^-1 x s).
NormalizeResult normalize_to_fixed_torus(const FiniteGroup& G, const std::vector<int>& perm, const OMat& wdot,
                                         const OMat& x, const OMat& t_w);

/// Oracle coordinates to catalog coordinates (prime q).
Matrix<Fp> to_library(const FiniteGroup& G, const OMat& g);
OMat from_library(const FiniteGroup& G, const Matrix<Fp>& g);

/// Points of the certified components of a sheet that lie in G against the oracle's
/// union of O cap wdot_S T^w U^w over the classes O of the sheet.
struct ContainmentReport {
  std::string sheet;
  long long family_points = 0;
  long long family_in_group = 0;
  long long oracle_points = 0;
  long long missing_from_oracle = 0;
  long long missing_from_family = 0;
  std::string note;
  bool ok() const { return family_in_group > 0 && missing_from_oracle == 0 && missing_from_family == 0; }
};
ContainmentReport slice_containment(const FiniteGroup& G, const ClassData& cd, const SheetDescriptor& d);

}  // namespace sheetslice
