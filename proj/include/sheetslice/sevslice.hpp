// Positive systems adapted to an involution from a basis of its (-1)-eigenspace.
#pragma once

#include "sheetslice/field.hpp"
#include "sheetslice/rootsys.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sheetslice {

using CorootVec = std::vector<Rat>;  // coordinates in the simple-coroot basis

struct EigenBasisChoice {
  WeylElement w;
  std::vector<CorootVec> basis;  // v_1 .. v_r
  /// Positive roots of Psi are those with f(beta) > 0; unset means "positive in the standard system".
  std::optional<CorootVec> psi_functional;
};

class PositiveSystem {
 public:
  PositiveSystem(std::shared_ptr<const RootSystem> rs, std::vector<bool> positive);
  const RootSystem& system() const { return *rs_; }
  bool is_positive(int root_idx) const { return pos_[static_cast<std::size_t>(root_idx)]; }
  /// Root indices, in root-system order.
  std::vector<int> positive_roots() const;
  std::vector<int> simple_roots() const;
  /// #{alpha > 0 : w alpha < 0}
  int length(const WeylElement& w) const;

 private:
  std::shared_ptr<const RootSystem> rs_;
  std::vector<bool> pos_;
};

/// <beta, v> for a root in simple-root coordinates and v in coroot coordinates.
Rat pairing_with(const RootSystem& rs, const RootVec& beta, const CorootVec& v);
/// Ambient vector -> simple-coroot coordinates (throws if outside the span).
CorootVec coroot_coords(const RootSystem& rs, const std::vector<Rat>& ambient);
/// Rational basis of ker(w + 1) on the coroot space.
std::vector<CorootVec> minus_eigenspace(const WeylElement& w);
/// Indices of roots fixed by w.
std::vector<int> psi_roots(const WeylElement& w);

/// Sign of the pairing with v_i for i maximal with a nonzero pairing decides; Psi uses the free choice.
/// Rejects bases that are not (-1)-eigenvectors, dependent, or not generic (naming the root).
PositiveSystem positive_system(const EigenBasisChoice& choice);

struct SystemReport {
  bool valid = false;           // exactly one of +-beta, closed under sums
  bool complement_ok = false;   // Phi+ \ Psi = {alpha > 0 : w alpha < 0}
  bool swap_ok = false;         // w(Phi+ \ Psi) = (-Phi+) \ Psi
  std::string detail;
};
SystemReport validate_system(const PositiveSystem& ps, const WeylElement& w);

/// l_{Phi+}(w) >= l_{Phi+}(w') for all w' conjugate to w.
bool check_max_length(const WeylElement& w, const PositiveSystem& ps);

/// Random integer combinations of an eigenspace basis until independent and generic.
EigenBasisChoice random_eigenbasis(const WeylElement& w, std::mt19937_64& rng, bool random_psi = false);

}  // namespace sheetslice
