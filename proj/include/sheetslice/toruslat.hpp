// Cocharacter lattices of maximal tori with an involution acting: T^w, T_w, S_w, Gamma_w.
#pragma once

#include "sheetslice/field.hpp"
#include "sheetslice/intmat.hpp"
#include "sheetslice/rootsys.hpp"

#include <string>
#include <vector>

namespace sheetslice {

enum class Isogeny { SimplyConnected, Adjoint, Classical };

std::string isogeny_label(Isogeny iso);
Isogeny parse_isogeny(const std::string& s);

/// Finite abelian group by invariant factors d1 | d2 | ... (all >= 2).
struct GroupShape {
  std::vector<long long> divisors;
  long long order() const;
  std::string str() const;
  /// Normalizes any list of cyclic orders (1s dropped).
  static GroupShape from_cyclic(const std::vector<long long>& orders);
  bool operator==(const GroupShape&) const = default;
};

/// Torsion point y in Y (x) Q/Z, stored with entries reduced to [0,1).
struct TorsionPoint {
  std::vector<Rat> y;
  long long order() const;
  std::string str() const;
};

struct TorusData {
  std::shared_ptr<const RootSystem> rs;
  Isogeny isogeny = Isogeny::SimplyConnected;
  /// w on the cocharacter lattice Y in the chosen basis.
  IntMat action;
  int lattice_rank() const { return action.rows(); }
};

/// Y = coroot lattice (sc), coweight lattice (adjoint) or the natural diagonal lattice of
/// GL_{n+1}, SO_{2n+1}, Sp_{2n}, SO_{2n} (classical; exceptional types are rejected).
TorusData torus_data(const WeylElement& w, Isogeny iso);
/// Rank-n lattice with an explicit action; validates finite order (<= 12).
TorusData torus_from_matrix(std::shared_ptr<const RootSystem> rs, Isogeny iso, IntMat action);

struct FixedPart {
  int torus_rank = 0;          // dim (T^w)°
  GroupShape component_group;  // T^w / (T^w)°
};

/// Kernel of (1-w) on T via Smith form; rejects non-involutions.
FixedPart fixed_part(const TorusData& t);
/// Same for T_w = kernel of (1+w).
FixedPart antifixed_part(const TorusData& t);
/// S_w = T^w ∩ T_w: the w-fixed 2-torsion, elementary abelian.
GroupShape s_w_group(const TorusData& t);

struct GammaData {
  GroupShape shape;
  int rank = 0;                          // dim (T_w)°
  std::vector<std::vector<long long>> y_minus;  // Z-basis of ker(1+w) on Y
  std::vector<TorsionPoint> generators;  // y/4 for y in y_minus
  GroupShape s_w_in_torus;               // S_w ∩ (T_w)°
};

/// Gamma_w = {t in (T_w)° : t^2 in T^w} = (T_w)°[4]; char 2 is refused.
GammaData gamma_w(const TorusData& t, unsigned characteristic = 0);

/// All elements of Gamma_w as points of Y (x) Q/Z, sorted.
std::vector<TorsionPoint> gamma_elements(const GammaData& g);

/// Image of the simply connected Gamma_w in the adjoint torus: shape of the image subgroup
/// and whether the adjoint shape is a quotient shape of the sc one.
struct IsogenyCheck {
  GroupShape sc, adj, image;
  bool quotient_shape = false;
};
IsogenyCheck isogeny_check(const WeylElement& w);

/// Torsion point -> reduced representative.
TorsionPoint reduce_point(std::vector<Rat> y);

}  // namespace sheetslice
