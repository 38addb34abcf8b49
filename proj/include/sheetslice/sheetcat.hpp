// Catalog of the non-trivial sheets of spherical conjugacy classes per simple type, with the
// Weyl data, slice representatives, expected slice components and smoothness verdicts.
#pragma once

#include "sheetslice/classical.hpp"
#include "sheetslice/rootsys.hpp"
#include "sheetslice/toruslat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sheetslice {

enum class FamilyKind { None, A, BS, BSp, CS1, CS2, DS, DSp, DR, E6, E7 };

std::string family_label(FamilyKind k);

struct SheetDescriptor {
  char type = 'A';
  int rank = 0;
  Isogeny isogeny = Isogeny::SimplyConnected;
  std::string label;  // S_m, S, S', S1, -S1, S2, theta(S), R, theta(R)
  int m = 0;          // type A only
  std::string semisimple;
  std::vector<std::string> unipotent;  // partitions or Bala-Carter labels
  std::vector<std::string> twists;     // central / isolated twists of members
  std::vector<int> pi;                 // 0-based simple roots
  WeylElement w;
  FamilyKind family = FamilyKind::None;
  std::string twin_of;  // empty unless obtained from another sheet by -1 or theta
  long long components = 0;
  std::string component_shape;
  bool sheet_smooth = true;
  bool stratum_smooth = true;
  std::string stratum;
  bool in_hypothesis = true;
  std::string citation;
  std::vector<std::string> notes;

  int length() const { return w.length(); }
  int minus_rank() const { return minus_one_rank(w); }
  /// l(w_S) + rk(1 - w_S)
  int class_dimension() const { return length() + minus_rank(); }
  std::string id() const;
};

/// Rank ranges: A n >= 1, B n >= 2, C n >= 2 (n = 2 flagged), D n >= 4, E6/E7; E8, F4, G2 give an empty list.
std::vector<SheetDescriptor> sheet_catalog(char type, int rank, Isogeny iso = Isogeny::SimplyConnected);
const SheetDescriptor& find_sheet(const std::vector<SheetDescriptor>& cat, const std::string& label);

struct SmoothnessVerdict {
  bool smooth = true;
  std::string reason;
  std::string witness;  // shared class when singular
};
/// stratum is a sheet label or a unipotent partition such as "(3,1^2)".
SmoothnessVerdict smoothness_verdict(char type, int rank, const std::string& stratum);

struct ParamSpec {
  std::string name;
  std::string domain;
};

struct SliceRepresentative {
  Matrix<Rat> wdot{0, 0, Rat(0)};
  std::string schema;
  std::vector<ParamSpec> params;
};
/// Classical types only; exceptional descriptors throw "root-datum only".
SliceRepresentative slice_representative(const SheetDescriptor& d);

/// Image of a rational matrix with small entries in another field.
template <FieldLike F>
Matrix<F> rat_to_field(const Matrix<Rat>& m, const F& proto) {
  Matrix<F> r(m.rows(), m.cols(), proto);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& q = m(i, j).q();
      r(i, j) = proto.like(q.get_num().get_si()) / proto.like(q.get_den().get_si());
    }
  return r;
}

/// theta: the graph automorphism of SO_{2n} as conjugation by the swap of e_n and e_-n.
Matrix<Rat> theta_matrix(int n);

/// Structured-text catalog table for one type.
std::string catalog_report(char type, int rank, Isogeny iso = Isogeny::SimplyConnected);

/// Internal consistency of a descriptor: w_S = w0 w_Pi, involution, Bruhat-maximal in its class,
/// slice representative maps to w_S and preserves the form.
struct DescriptorCheck {
  bool w_matches = false;
  bool involution = false;
  bool bruhat_max = false;
  bool representative_ok = true;
  std::string detail;
  bool ok() const { return w_matches && involution && bruhat_max && representative_ok; }
};
DescriptorCheck check_descriptor(const SheetDescriptor& d);

// ---- sphericity of a class from its Jordan data ----

/// One monic irreducible factor of the characteristic polynomial with its Jordan partition.
struct EigenData {
  int degree = 1;
  std::vector<int> partition;
  int sign = 0;  // +1 or -1 for the factors x - 1, x + 1; 0 otherwise
  int multiplicity() const;
  bool semisimple() const;
};

template <FiniteFieldLike F>
std::vector<EigenData> eigen_data(const Matrix<F>& g) {
  std::vector<EigenData> out;
  for (const auto& pf : factor_finite(charpoly(g))) {
    EigenData e;
    e.degree = pf.factor.degree();
    e.partition = partition_from_kernels(kernel_dims(poly_eval(pf.factor, g)), e.degree);
    if (e.degree == 1) {
      F r = -pf.factor[0];
      if (r == g.one()) e.sign = 1;
      else if (r == -g.one()) e.sign = -1;
    }
    out.push_back(std::move(e));
  }
  return out;
}

struct SphericalVerdict {
  bool spherical = false;
  std::string kind;  // central, semisimple, unipotent, mixed, or the failing shape
};
/// Classical groups in good characteristic; exceptional types throw.
SphericalVerdict classify_spherical(const GroupContext& ctx, const std::vector<EigenData>& data);

template <FiniteFieldLike F>
SphericalVerdict classify_spherical(const GroupContext& ctx, const Matrix<F>& g) {
  return classify_spherical(ctx, eigen_data(g));
}

}  // namespace sheetslice
