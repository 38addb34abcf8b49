#include "doctest.h"

#include "sheetslice/sliceverify.hpp"

using namespace sheetslice;

namespace {

SheetDescriptor sheet(char t, int n, const std::string& label) { return find_sheet(sheet_catalog(t, n), label); }

SliceConfig small_config(int samples = 8) {
  SliceConfig c;
  c.n_in = c.n_out = samples;
  return c;
}

}  // namespace

TEST_CASE("C3 S2 membership examples over F_7") {
  auto f = make_family(sheet('C', 3, "S2"), 7);
  // lambda = 2: c = lambda + lambda^-1 = 6
  auto x = f->claimed_point(0b010, {Fp(7, 6)});
  auto m = membership_test(*f, x);
  CHECK(m.member);
  CHECK(m.reason.find("semisimple") != std::string::npos);
  auto g = f->build(x);
  CHECK(jordan_partition(g, Fp(7, 2)) == std::vector<int>{1, 1, 1});
  auto y = x;
  y.vals[0] = Fp(7, 3);  // V_12
  CHECK_FALSE(membership_test(*f, y).member);
}

TEST_CASE("B S' claimed point has rk(X - I) = 2") {
  for (int n : {2, 3, 4}) {
    auto f = make_family(sheet('B', n, "S'"), 1009);
    for (int c = 0; c < 4; ++c) {
      auto x = f->claimed_point(c, {Fp(1009, 37)});
      auto g = f->build(x);
      CHECK(membership_test(*f, x).member);
      CHECK(rank(g.shifted(Fp(1009, 1))) == 2);
    }
  }
}

TEST_CASE("type A components are graphs of (a, b) -> (a, b, a^2/b + b)") {
  auto f = make_family(sheet('A', 4, "S_2"), 1009);
  const Fp a(1009, 5), b(1009, 11);
  auto x = f->claimed_point(1, {a, b});
  CHECK(x.vals[0] == a);
  CHECK(x.vals[1] == -a);
  CHECK(x.vals[2] == b);
  CHECK(x.vals[3] == a * a / b + b);
  CHECK(x.vals[4] == a * a / b + b);
  CHECK(membership_test(*f, x).member);
  auto loc = f->locate(f->build(x));
  REQUIRE(loc.size() == 1);
  CHECK(loc[0].component == 1);
}

TEST_CASE("certified component counts") {
  struct Case {
    char t;
    int n;
    const char* label;
    long long count;
  };
  for (auto c : std::vector<Case>{{'B', 3, "S", 32}, {'B', 2, "S'", 4}, {'D', 4, "S'", 4}, {'C', 3, "S2", 8}, {'C', 3, "S1", 4},
                                  {'D', 4, "S", 4}, {'D', 5, "R", 4}, {'A', 5, "S_3", 4}}) {
    auto f = make_family(sheet(c.t, c.n, c.label), 1009);
    auto cert = certify_components(*f, small_config());
    CAPTURE(cert.sheet);
    CHECK(cert.count == c.count);
    CHECK(cert.certified);
    CHECK(cert.transcript.size() == static_cast<std::size_t>(c.count) + 2);
  }
}

TEST_CASE("C2 S1 is certified-shaped but outside the hypothesis") {
  auto f = make_family(sheet('C', 2, "S1"), 1009);
  auto cert = certify_components(*f, small_config());
  CHECK_FALSE(cert.certified);
  CHECK_FALSE(cert.in_hypothesis);
  for (const auto& r : cert.components) CHECK(r.ok());
}

TEST_CASE("certificate transcript is independent of scheduling") {
  auto f = make_family(sheet('B', 3, "S"), 1009);
  auto c1 = small_config(6), c2 = small_config(6);
  c1.threads = 1;
  c2.threads = 4;
  CHECK(certify_components(*f, c1).transcript == certify_components(*f, c2).transcript);
  c2.seed = 99;
  CHECK(certify_components(*f, c1).transcript != certify_components(*f, c2).transcript);
}

TEST_CASE("a wrong claim is refused with a counterexample") {
  // certify S' points against the S membership test: the claimed S' points are not S members
  auto d = sheet('B', 2, "S'");
  auto f = make_family(d, 1009);
  auto wrong = sheet('B', 2, "S");
  auto fs = make_family(wrong, 1009);
  int rejected = 0;
  for (int c = 0; c < 4; ++c)
    if (!fs->member(f->build(f->claimed_point(c, {Fp(1009, 5)}))).member) ++rejected;
  CHECK(rejected == 4);
}

TEST_CASE("exhaustive agreement over small fields") {
  struct Case {
    char t;
    int n;
    const char* label;
    std::uint32_t p;
  };
  for (auto c : std::vector<Case>{{'B', 2, "S", 5}, {'B', 2, "S'", 5}, {'C', 2, "S2", 5}, {'D', 4, "S", 13}, {'D', 4, "theta(S)", 13},
                                  {'D', 4, "S'", 7}, {'D', 5, "R", 13}, {'A', 3, "S_2", 13}, {'A', 4, "S_1", 13}, {'C', 3, "S1", 5}}) {
    auto f = make_family(sheet(c.t, c.n, c.label), c.p);
    auto r = exhaustive_check(*f);
    CAPTURE(f->descriptor().id());
    CAPTURE(r.first_mismatch);
    CHECK(r.ok());
    CHECK(r.members > 0);
    for (auto k : r.per_component) CHECK(k > 0);
  }
}

TEST_CASE("every member of a sheet has the sheet's class dimension and is spherical") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 3}, {'B', 3}, {'C', 3}, {'D', 4}, {'D', 5}}) {
    for (const auto& d : sheet_catalog(t, n)) {
      auto f = make_family(d, 1009);
      std::mt19937_64 rng(5);
      for (int k = 0; k < 4; ++k) {
        int c = static_cast<int>(rng() % static_cast<std::uint64_t>(f->num_components()));
        auto g = f->build(f->claimed_point(c, f->random_coords(rng)));
        CAPTURE(d.id());
        CHECK(class_dimension(f->context(), g) == d.class_dimension());
        if (t != 'A') CHECK(classify_spherical(f->context(), g).spherical);
      }
    }
  }
}

TEST_CASE("missing square roots ask for an extension") {
  CHECK_THROWS_WITH(make_family(sheet('B', 3, "S"), 7), doctest::Contains("extension"));
  CHECK_THROWS_WITH(make_family(sheet('E', 6, "S"), 1009), doctest::Contains("root-datum only"));
}

TEST_CASE("Gamma_w stability and transitivity") {
  SliceConfig cfg;
  for (auto [t, n, label] : std::vector<std::tuple<char, int, const char*>>{
           {'B', 3, "S"}, {'B', 3, "S'"}, {'C', 3, "S2"}, {'C', 3, "-S1"}, {'D', 4, "S"}, {'D', 5, "R"}, {'A', 3, "S_2"}}) {
    auto f = make_family(sheet(t, n, label), 1009);
    auto r = gamma_checks(*f, cfg);
    CAPTURE(f->descriptor().id());
    CHECK(r.ok());
    CHECK(r.failures.empty());
  }
  auto f = make_family(sheet('B', 3, "S"), 1009);
  auto r = gamma_checks(*f, cfg);
  CHECK(r.order == 64);
  CHECK(r.claimed_points == 32 * 13);
}

TEST_CASE("B_n equation chain") {
  auto r = verify_equation_chain_Bn_fp(2, 13, 3, {1, 1}, {1, 1});
  CHECK(r.all_hold());
  CHECK(r.field.find("^2") != std::string::npos);
  CHECK(verify_equation_chain_Bn_fp(2, 17, 8, {1, -1}, {1, -1}).all_hold());
  ChainPerturbation q{ChainPerturbation::Target::Q, 0, 1, 1};
  auto bad = verify_equation_chain_Bn_fp(2, 13, 3, {1, 1}, {1, 1}, q);
  CHECK_FALSE(bad.all_hold());
  CHECK(bad.first_failure().find("M - lambda") == 0);
  CHECK_THROWS(verify_equation_chain_Bn_fp(2, 13, 1, {1, 1}, {1, 1}));
  for (int n : {2, 3}) {
    auto s = equation_chain_suite(n);
    CHECK(s.ok());
    CHECK(s.combinations == (1 << (2 * n - 1)));
  }
  for (int n : {2, 3, 4}) CHECK(verify_special_branch_Bn(n, 17, std::vector<int>(static_cast<std::size_t>(n), 1), std::vector<int>(static_cast<std::size_t>(n), 1)).all_hold());
}

TEST_CASE("SL restriction") {
  auto r = verify_sl_restriction(3, 1, 0);
  CHECK(r.ok());
  CHECK(r.curve == "a^1 b^1 = +-1");
  auto s = verify_sl_restriction(3, 1, 5);
  CHECK(s.ok());
  CHECK_FALSE(s.non_reduced);
  auto t = verify_sl_restriction(5, 3, 3);
  CHECK(t.non_reduced);
  CHECK(t.reduced_smooth);
  CHECK(verify_sl_restriction(8, 3, 3).non_reduced);
}

TEST_CASE("stratum witnesses") {
  auto b2 = stratum_singularity_witness('B', 2, "(3,1^2)", 13);
  CHECK(b2.found);
  CHECK(b2.witness.find("S, S'") != std::string::npos);
  auto c2 = stratum_singularity_witness('C', 2, "(2^2)", 13);
  CHECK(c2.found);
  bool image = false;
  for (const auto& d : c2.details) image = image || d.find("Lambda^2: (3,1^2)") != std::string::npos;
  CHECK(image);
  CHECK(stratum_singularity_witness('D', 5, "stratum:R", 13).found);
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'B', 3}, {'C', 3}, {'D', 4}, {'D', 6}, {'A', 4}}) {
    auto w = stratum_singularity_witness(t, n, "*", 13);
    CHECK_FALSE(w.found);
    CHECK(w.witness == "none");
  }
}

TEST_CASE("sp4 to so5 is a homomorphism into SO5") {
  auto c2 = GroupContext::make('C', 2);
  const Fp one(1009, 1);
  Matrix<Fp> g = root_element(c2, 0, Fp(1009, 3)), h = root_element(c2, 3, Fp(1009, 7));
  auto G = sp4_to_so5(g), H = sp4_to_so5(h), GH = sp4_to_so5(g * h);
  CHECK(G * H == GH);
  CHECK(det(G) == one);
}

TEST_CASE("E6 and E7 root-level checks") {
  auto e6 = etype_root_checks(6, 1009);
  CHECK(e6.ok());
  CHECK(e6.class_dimension == 32);
  CHECK(e6.components == 2);
  auto e7 = etype_root_checks(7, 1009);
  CHECK(e7.ok());
  CHECK(e7.class_dimension == 54);
  CHECK(e7.components == 8);
}
