// Explicit slice families over F_p for the classical sheets, membership in the sheet from Jordan
// data, Monte Carlo certification of the claimed slice components, Gamma_w checks, the B_n
// equation chain, the SL_{n+1} restriction, stratum witnesses and the E6/E7 root-level checks.
#pragma once

#include "sheetslice/ratfunc.hpp"
#include "sheetslice/sheetcat.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace sheetslice {

/// SHEETSLICE_P or 1009.
std::uint32_t default_prime();
/// SHEETSLICE_SAMPLES or 64.
int default_samples();

struct SliceConfig {
  std::uint32_t p = 1009;
  std::uint32_t gamma_p = 13;  // small field for the exhaustive Gamma checks, p = 1 mod 4
  int n_in = 64;
  int n_out = 64;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  static SliceConfig from_env();
};

/// A point of a slice family: sign choices and field-valued parameters.
struct FamilyPoint {
  std::vector<int> signs;
  std::vector<Fp> vals;
  bool operator==(const FamilyPoint&) const = default;
};

struct MembershipResult {
  bool member = false;
  std::string reason;
};

struct Located {
  int component = -1;
  std::vector<Fp> coords;
};

class SliceFamily {
 public:
  SliceFamily(SheetDescriptor d, std::uint32_t p, bool special);
  virtual ~SliceFamily() = default;

  const SheetDescriptor& descriptor() const { return d_; }
  const GroupContext& context() const { return ctx_; }
  std::uint32_t prime() const { return p_; }
  Fp zero() const { return Fp(p_, 0); }

  virtual std::string parameters() const = 0;
  virtual std::string claim() const = 0;
  virtual int num_components() const = 0;
  virtual std::string component_label(int c) const = 0;
  /// Number of coordinates on one component (2 for type A, 1 otherwise).
  virtual int coordinate_count() const { return 1; }
  virtual bool coordinate_nonzero(int) const { return false; }
  /// Per-value flag: the parameter ranges over k^* instead of k.
  virtual std::vector<bool> nonzero_values() const = 0;
  virtual int sign_count() const = 0;
  virtual FamilyPoint claimed_point(int c, const std::vector<Fp>& coords) const = 0;
  /// Components whose closed form the point satisfies.
  virtual std::vector<int> matching_components(const FamilyPoint& x) const = 0;
  virtual Matrix<Fp> build(const FamilyPoint& x) const = 0;
  virtual MembershipResult member(const Matrix<Fp>& g) const = 0;
  /// Every claimed point equal to g, found by solving for the coordinate at an affine entry.
  virtual std::vector<Located> locate(const Matrix<Fp>& g) const;

  FamilyPoint random_point(std::mt19937_64& rng) const;
  std::vector<Fp> random_coords(std::mt19937_64& rng) const;
  /// Shift one parameter by a random nonzero amount.
  FamilyPoint perturb(FamilyPoint x, std::mt19937_64& rng) const;
  /// Class key used to compare conjugacy classes of members (Jordan data, plus the isotropic
  /// family of an eigenspace for SO_{2n}).
  std::string class_key(const Matrix<Fp>& g) const;

 protected:
  Fp random_value(std::mt19937_64& rng, bool nonzero) const;
  SheetDescriptor d_;
  std::uint32_t p_;
  GroupContext ctx_;
};

/// Fails with an explicit extension request when F_p lacks the square roots the family needs.
std::unique_ptr<SliceFamily> make_family(const SheetDescriptor& d, std::uint32_t p);

MembershipResult membership_test(const SliceFamily& f, const FamilyPoint& x);

struct ComponentRecord {
  int index = 0;
  std::string label;
  int in_total = 0, in_member = 0, in_cell = 0;
  int out_total = 0, out_rejected = 0, out_discarded = 0;
  bool disjoint = true;
  std::string counterexample;
  bool ok() const;
};

struct ComponentCertificate {
  std::string sheet;
  std::uint32_t p = 0;
  std::uint64_t seed = 0;
  int n_in = 0, n_out = 0;
  long long expected = 0;
  long long count = 0;
  bool in_hypothesis = true;
  bool count_matches = false;
  bool disjoint = false;
  bool certified = false;
  std::vector<ComponentRecord> components;
  std::vector<std::string> transcript;
};

/// Components are certified on worker threads with per-component seeds, so the transcript does
/// not depend on scheduling.
ComponentCertificate certify_components(const SliceFamily& f, const SliceConfig& cfg);

/// All points of the family over a small field: members against claimed points.
struct ExhaustiveReport {
  long long points = 0, members = 0, claimed = 0;
  long long member_not_claimed = 0, claimed_not_member = 0;
  std::vector<long long> per_component;
  std::string first_mismatch;
  bool ok() const { return member_not_claimed == 0 && claimed_not_member == 0; }
};
/// Throws when the parameter space exceeds limit.
ExhaustiveReport exhaustive_check(const SliceFamily& f, long long limit = 2'000'000);

struct GammaReport {
  std::uint32_t p = 0;
  std::string shape;
  long long order = 0;
  int generators = 0;
  long long claimed_points = 0;
  int classes = 0;
  int stable = 0;      // classes whose Gamma-orbit stays on the claimed components
  int transitive = 0;  // classes that are a single Gamma-orbit
  std::vector<std::string> failures;
  bool ok() const { return classes > 0 && stable == classes && transitive == classes; }
};
/// Gamma_w = (T_w)°[4] acting by conjugation, every claimed point over F_{gamma_p}.
GammaReport gamma_checks(const SliceFamily& f, const SliceConfig& cfg);

// ---- B_n equation chain ----

struct ChainStep {
  std::string name;
  bool holds = false;
};

struct ChainReport {
  std::string field;
  std::vector<ChainStep> steps;
  bool all_hold() const;
  /// First identity that fails, empty when all hold.
  std::string first_failure() const;
};

struct ChainPerturbation {
  enum class Target { None, Q, A, V, Lambda } target = Target::None;
  int i = 0, j = 1;
  long long delta = 1;
};

/// lambda = -2/mu^2 and a = (lambda - (-1)^n) mu over Q(i)(mu); zeta_i = 1 or i.
ChainReport verify_equation_chain_Bn(int n, const std::vector<int>& E, const std::vector<int>& eta,
                                     ChainPerturbation pert = {});
/// Same chain at a numeric lambda over F_p, moving to F_{p^2} when sqrt(-2/lambda) or sqrt(-1) is missing.
ChainReport verify_equation_chain_Bn_fp(int n, std::uint32_t p, long long lambda, const std::vector<int>& E,
                                        const std::vector<int>& eta, ChainPerturbation pert = {});
/// The double root lambda = -(-1)^n, a^2 = 8(-1)^n: rank of (X - lambda) and (X - lambda)^2.
ChainReport verify_special_branch_Bn(int n, std::uint32_t p, const std::vector<int>& E, const std::vector<int>& eta);

struct ChainSuite {
  int n = 0;
  int combinations = 0, passed = 0;
  int controls = 0, controls_caught = 0;
  std::vector<std::string> lines;
  bool ok() const { return passed == combinations && controls_caught == controls; }
};
/// Every (E, eta) symbolically, plus perturbation controls that must be caught.
ChainSuite equation_chain_suite(int n);

// ---- SL_{n+1} ----

struct SlRestrictionReport {
  int n = 0, m = 0;
  std::uint32_t p = 0;
  std::string curve;
  bool det_formula = false;    // det X = a^{2m} b^{n+1-2m} on every sampled point
  bool sl_points_on_curve = false;
  bool non_reduced = false;    // p divides gcd(2m, n+1-2m)
  bool reduced_smooth = true;  // Jacobian of the reduced equation nonzero on sampled points
  int samples = 0;
  std::vector<std::string> notes;
  bool ok() const { return det_formula && sl_points_on_curve && reduced_smooth; }
};
/// p = 0 works over Q with rational points on the curve.
SlRestrictionReport verify_sl_restriction(int n, int m, std::uint32_t p, int samples = 16);

// ---- strata ----

struct WitnessReport {
  char type = 'A';
  int rank = 0;
  bool found = false;
  std::string witness;  // "none" when no class is shared
  std::vector<std::string> details;
};
/// Searches the claimed components of every sheet of the type for a class shared by two sheets
/// whose Jordan data matches the stratum (a sheet label, "stratum:LABEL", or a partition).
WitnessReport stratum_singularity_witness(char type, int rank, const std::string& stratum, std::uint32_t p);

/// Lambda^2 of Sp4 restricted to the 5-dimensional complement of the form: the SO5 image.
Matrix<Fp> sp4_to_so5(const Matrix<Fp>& g);

// ---- E6 / E7 ----

struct ERootReport {
  int rank = 0;
  std::string beta, gamma;
  bool beta_highest = false;
  bool gamma_highest_orthogonal = false;
  bool w_matches = false;
  int length = 0, minus_rank = 0;
  int class_dimension = 0;  // from the sl2 grading of e = sum of the root vectors
  bool dimension_matches = false;
  bool gamma_generators = false;
  bool torus_identity = false;  // torus exponents of the conjugated family
  int components = 0;
  std::vector<std::string> notes;
  bool ok() const;
};
ERootReport etype_root_checks(int rank, std::uint32_t p);

}  // namespace sheetslice
