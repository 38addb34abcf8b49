#include "doctest.h"

#include "sheetslice/sheetcat.hpp"

#include <set>

using namespace sheetslice;

namespace {

std::vector<std::pair<char, int>> catalog_types() {
  return {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'A', 5}, {'B', 2}, {'B', 3}, {'B', 4}, {'B', 5}, {'C', 2},
          {'C', 3}, {'C', 4}, {'C', 5}, {'D', 4}, {'D', 5}, {'D', 6}, {'D', 7}, {'E', 6}, {'E', 7}};
}

std::set<std::string> labels(const std::vector<SheetDescriptor>& c) {
  std::set<std::string> s;
  for (const auto& d : c) s.insert(d.label);
  return s;
}

// a semisimple member of the sheet as a torus element, lambda generic
Matrix<Fp> semisimple_member(const SheetDescriptor& d, std::uint32_t p, long long lam) {
  auto ctx = GroupContext::make(d.type, d.rank, d.type != 'A');
  const Fp one(p, 1), l(p, lam);
  std::vector<Fp> eps(static_cast<std::size_t>(ctx.roots().ambient_dim()), one);
  switch (d.family) {
    case FamilyKind::A:
      for (int k = 0; k < d.m; ++k) eps[static_cast<std::size_t>(k)] = l;
      break;
    case FamilyKind::BS:
    case FamilyKind::CS2:
    case FamilyKind::DS:
    case FamilyKind::DR:
      for (auto& e : eps) e = l;
      break;
    case FamilyKind::BSp:
    case FamilyKind::CS1:
    case FamilyKind::DSp: eps[0] = l; break;
    default: break;
  }
  Matrix<Fp> t = torus_element(ctx, eps);
  if (d.label == "-S1") t = Fp(p, -1) * t;
  return t;
}

IntMat theta_on_roots(const IntMat& m) {
  const int n = m.rows();
  IntMat P = IntMat::identity(n);
  P(n - 2, n - 2) = 0;
  P(n - 1, n - 1) = 0;
  P(n - 2, n - 1) = 1;
  P(n - 1, n - 2) = 1;
  return P * m * P;
}

}  // namespace

TEST_CASE("catalog contents") {
  CHECK(labels(sheet_catalog('C', 3)) == std::set<std::string>{"S1", "-S1", "S2"});
  auto c3 = sheet_catalog('C', 3);
  const auto& s2 = find_sheet(c3, "S2");
  CHECK(s2.unipotent[0] == "(2^3)");
  CHECK(s2.components == 8);
  CHECK(sheet_catalog('G', 2).empty());
  CHECK(sheet_catalog('F', 4).empty());
  CHECK(sheet_catalog('E', 8).empty());
  auto e6 = sheet_catalog('E', 6);
  REQUIRE(e6.size() == 1);
  CHECK(e6[0].unipotent[0] == "2A1");
  CHECK(e6[0].pi == std::vector<int>{2, 3, 4});
  CHECK(labels(sheet_catalog('B', 3)) == std::set<std::string>{"S", "S'"});
  CHECK(labels(sheet_catalog('D', 4)) == std::set<std::string>{"S", "theta(S)", "S'"});
  CHECK(labels(sheet_catalog('D', 5)) == std::set<std::string>{"R", "theta(R)", "S'"});
  CHECK(sheet_catalog('A', 5).size() == 3);
  CHECK_THROWS(sheet_catalog('D', 3));
  CHECK_THROWS(find_sheet(sheet_catalog('B', 3), "S1"));
  for (const auto& d : sheet_catalog('C', 2)) CHECK_FALSE(d.in_hypothesis);
}

TEST_CASE("component counts") {
  for (int n = 2; n <= 4; ++n) {
    auto c = sheet_catalog('B', n);
    CHECK(find_sheet(c, "S").components == (1LL << (2 * n - 1)));
    CHECK(find_sheet(c, "S'").components == 4);
  }
  for (int n = 3; n <= 4; ++n) {
    auto c = sheet_catalog('C', n);
    CHECK(find_sheet(c, "S1").components == 4);
    CHECK(find_sheet(c, "S2").components == (1LL << n));
  }
  CHECK(find_sheet(sheet_catalog('D', 4), "S").components == 4);
  CHECK(find_sheet(sheet_catalog('D', 4), "S'").components == 4);
  CHECK(sheet_catalog('E', 7)[0].components == 8);
  CHECK(find_sheet(sheet_catalog('A', 5), "S_3").components == 4);
}

TEST_CASE("descriptor consistency") {
  for (auto [t, n] : catalog_types()) {
    for (const auto& d : sheet_catalog(t, n)) {
      CAPTURE(d.id());
      CHECK_FALSE(d.semisimple.empty());
      CHECK_FALSE(d.unipotent.empty());
      CHECK_FALSE(d.citation.empty());
      auto chk = check_descriptor(d);
      CAPTURE(chk.detail);
      CHECK(chk.w_matches);
      CHECK(chk.involution);
      CHECK(chk.bruhat_max);
      CHECK(chk.representative_ok);
    }
  }
}

TEST_CASE("slice representatives") {
  auto c3 = sheet_catalog('C', 3);
  auto w0 = slice_representative(find_sheet(c3, "S2")).wdot;
  Matrix<Rat> expect(6, 6, Rat(0));
  for (std::size_t i = 0; i < 3; ++i) {
    expect(i, 3 + i) = Rat(1);
    expect(3 + i, i) = Rat(-1);
  }
  CHECK(w0 == expect);
  auto b3 = slice_representative(find_sheet(sheet_catalog('B', 3), "S")).wdot;
  CHECK(b3(0, 0) == Rat(-1));
  auto b2 = slice_representative(find_sheet(sheet_catalog('B', 2), "S")).wdot;
  CHECK(b2(0, 0) == Rat(1));
  auto d4 = slice_representative(find_sheet(sheet_catalog('D', 4), "S")).wdot;
  CHECK(d4(0, 5) == Rat(1));
  CHECK(d4(1, 4) == Rat(-1));
  CHECK_THROWS_WITH(slice_representative(sheet_catalog('E', 6)[0]), doctest::Contains("root-datum only"));
}

TEST_CASE("theta twins") {
  for (int n : {4, 6}) {
    auto c = sheet_catalog('D', n);
    const auto& s = find_sheet(c, "S");
    const auto& t = find_sheet(c, "theta(S)");
    CHECK_FALSE(theta_on_roots(s.w.matrix()) == s.w.matrix());
    CHECK(theta_on_roots(s.w.matrix()) == t.w.matrix());
  }
  for (int n : {5, 7}) {
    auto c = sheet_catalog('D', n);
    const auto& r = find_sheet(c, "R");
    CHECK(theta_on_roots(r.w.matrix()) == r.w.matrix());
  }
}

TEST_CASE("member class dimension equals l(w) + rk(1 - w)") {
  const std::uint32_t p = 1009;
  for (auto [t, n] : catalog_types()) {
    if (t == 'E') continue;
    auto ctx = GroupContext::make(t, n, t != 'A');
    for (const auto& d : sheet_catalog(t, n)) {
      CAPTURE(d.id());
      auto g = semisimple_member(d, p, 5);
      CHECK(in_group(ctx, g));
      CHECK(class_dimension(ctx, g) == d.class_dimension());
      CHECK(classify_spherical(ctx, g).spherical);
    }
  }
}

TEST_CASE("smoothness verdicts") {
  CHECK(smoothness_verdict('B', 3, "S").smooth);
  CHECK(smoothness_verdict('D', 5, "R").smooth);
  auto c2 = smoothness_verdict('C', 2, "(2^2)");
  CHECK_FALSE(c2.smooth);
  CHECK(c2.witness.find("(2^2)") != std::string::npos);
  CHECK_FALSE(smoothness_verdict('B', 2, "(3,1^2)").smooth);
  auto d5 = smoothness_verdict('D', 5, "(2^4,1^2)");
  CHECK_FALSE(d5.smooth);
  CHECK(d5.witness.find("theta(R)") != std::string::npos);
  CHECK_FALSE(smoothness_verdict('D', 5, "stratum:R").smooth);
  CHECK(smoothness_verdict('B', 3, "(3,2^2)").smooth);
  CHECK(smoothness_verdict('D', 4, "stratum:S").smooth);
  CHECK(smoothness_verdict('C', 3, "(2^2,1^2)").smooth);
}

TEST_CASE("sphericity classifier") {
  const Fp z(1009, 0);
  auto a2 = GroupContext::make('A', 2);
  CHECK(classify_spherical(a2, root_element(a2, 0, Fp(1009, 1))).spherical);
  CHECK_FALSE(classify_spherical(a2, root_element(a2, 0, Fp(1009, 1)) * root_element(a2, 1, Fp(1009, 1))).spherical);
  auto c2 = GroupContext::make('C', 2);
  const auto& rs = c2.roots();
  Matrix<Fp> reg = Matrix<Fp>::identity(4, z);
  for (int i = 0; i < rs.rank(); ++i) reg = reg * root_element(c2, rs.simple_index(i), Fp(1009, 1));
  CHECK_FALSE(classify_spherical(c2, reg).spherical);
  auto b2 = GroupContext::make('B', 2);
  Matrix<Fp> u3 = root_element(b2, b2.roots().simple_index(1), Fp(1009, 1));
  CHECK(unipotent_partition(u3) == std::vector<int>{3, 1, 1});
  CHECK(classify_spherical(b2, u3).spherical);
  Matrix<Fp> breg = u3 * root_element(b2, b2.roots().simple_index(0), Fp(1009, 1));
  CHECK_FALSE(classify_spherical(b2, breg).spherical);
  // three distinct eigenvalues in SL3
  auto t3 = torus_element(a2, std::vector<Fp>{Fp(1009, 2), Fp(1009, 3), Fp(1009, 2 * 3).inv()});
  CHECK_FALSE(classify_spherical(a2, t3).spherical);
}

TEST_CASE("catalog report") {
  auto r = catalog_report('B', 3);
  CHECK(r.find("S | ") != std::string::npos);
  CHECK(r.find(" 32 ") != std::string::npos);
  CHECK(catalog_report('G', 2).find("no non-trivial") != std::string::npos);
}
