#include "doctest.h"

#include "sheetslice/fforacle.hpp"
#include "sheetslice/sliceverify.hpp"

#include <random>

using namespace sheetslice;

namespace {

struct Enumerated {
  FiniteGroup G;
  ClassData cd;
};

const Enumerated& group(char t, int n, std::uint32_t q) {
  static std::map<std::tuple<char, int, std::uint32_t>, std::unique_ptr<Enumerated>> cache;
  auto& slot = cache[{t, n, q}];
  if (!slot) {
    auto G = FiniteGroup::enumerate(t, n, q);
    auto cd = conjugacy_classes(G);
    slot.reset(new Enumerated{std::move(G), std::move(cd)});
  }
  return *slot;
}

OMat diag(std::initializer_list<int> d) {
  OMat m;
  m.n = static_cast<int>(d.size());
  int i = 0;
  for (int x : d) {
    m(i, i) = static_cast<TableField::Elt>(x);
    ++i;
  }
  return m;
}

int class_of(const Enumerated& e, const OMat& g) {
  long long idx = e.G.index_of(g);
  REQUIRE(idx >= 0);
  return e.cd.class_of[static_cast<std::size_t>(idx)];
}

}  // namespace

TEST_CASE("GF(q) tables") {
  for (std::uint32_t q : {2u, 3u, 4u, 9u, 25u, 49u, 121u}) {
    auto F = TableField::get(q);
    CAPTURE(q);
    for (std::uint32_t a = 1; a < q; ++a) CHECK(F->mul(static_cast<TableField::Elt>(a), F->inv(static_cast<TableField::Elt>(a))) == 1);
    CHECK(F->pow(F->generator(), q - 1) == 1);
    CHECK(F->roots_of_unity(static_cast<int>(q - 1)).size() == q - 1);
  }
  auto F9 = TableField::get(9);
  auto emb = F9->embedding_from(*TableField::get(3));
  CHECK(emb == std::vector<TableField::Elt>{0, 1, 2});
  auto F49 = TableField::get(49);
  auto e7 = F49->embedding_from(*TableField::get(7));
  for (std::uint32_t a = 0; a < 7; ++a)
    for (std::uint32_t b = 0; b < 7; ++b)
      CHECK(e7[(a * b) % 7] == F49->mul(e7[a], e7[b]));
  CHECK(TableField::get(4)->roots_of_unity(4).size() == 1);
  CHECK_THROWS(TableField::get(6));
}

TEST_CASE("characteristic polynomial agrees with the determinant") {
  auto F = TableField::get(25);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    OMat A;
    A.n = 1 + trial % 5;
    for (int i = 0; i < A.n * A.n; ++i) A.a[static_cast<std::size_t>(i)] = static_cast<TableField::Elt>(rng() % 25);
    auto cp = omat_charpoly(*F, A);
    REQUIRE(cp.size() == static_cast<std::size_t>(A.n + 1));
    CHECK(cp.back() == 1);
    for (std::uint32_t x = 0; x < 25; x += 4) {
      OMat M = A;
      for (int i = 0; i < A.n * A.n; ++i) M.a[static_cast<std::size_t>(i)] = F->neg(M.a[static_cast<std::size_t>(i)]);
      for (int i = 0; i < A.n; ++i) M(i, i) = F->add(M(i, i), static_cast<TableField::Elt>(x));
      TableField::Elt v = 0;
      for (auto it = cp.rbegin(); it != cp.rend(); ++it) v = F->add(F->mul(v, static_cast<TableField::Elt>(x)), *it);
      CHECK(v == omat_det(*F, M));
    }
  }
}

TEST_CASE("group orders and refusals") {
  CHECK(group('A', 1, 3).G.order() == 24);
  CHECK(group('C', 2, 3).G.order() == 51840);
  CHECK(group('A', 1, 2).G.order() == 6);
  CHECK(group('B', 2, 3).G.order() == 51840);
  CHECK(group('A', 1, 4).G.order() == 60);
  CHECK(group('A', 2, 3).G.order() == FiniteGroup::order_formula('A', 2, 3));
  try {
    FiniteGroup::enumerate('A', 2, 9);
    FAIL("SL3(F_9) should exceed the budget");
  } catch (const BudgetExceeded& e) {
    CHECK(e.estimated == 42456960);
    CHECK(std::string(e.what()).find("42456960") != std::string::npos);
  }
  CHECK_THROWS_WITH(FiniteGroup::enumerate('C', 2, 2), doctest::Contains("characteristic 2"));
  CHECK_THROWS_WITH(FiniteGroup::enumerate('B', 2, 4), doctest::Contains("characteristic 2"));
  CHECK_THROWS(FiniteGroup::enumerate('D', 4, 3));
}

TEST_CASE("SL2(F_3) has 7 classes") {
  const auto& e = group('A', 1, 3);
  CHECK(e.cd.classes.size() == 7);
  CHECK(e.cd.sizes_divide);
  CHECK(e.cd.class_size_sum == 24);
}

TEST_CASE("Bruhat cells partition the group") {
  for (auto [t, n, q] : std::vector<std::tuple<char, int, std::uint32_t>>{{'A', 1, 4}, {'A', 2, 3}, {'C', 2, 3}, {'B', 2, 3}}) {
    const auto& e = group(t, n, q);
    auto s = run_oracle_suite(e.G, e.cd);
    CAPTURE(s.group);
    CHECK(s.bruhat_partition);
    CHECK(s.cell_failures.empty());
  }
}

TEST_CASE("Bruhat cells agree with the catalog Bruhat word") {
  for (auto [t, n, q] : std::vector<std::tuple<char, int, std::uint32_t>>{{'A', 2, 3}, {'C', 2, 3}, {'B', 2, 3}}) {
    const auto& e = group(t, n, q);
    auto ctx = GroupContext::make(t, n);
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
      OMat g = e.G.decode(e.G.elements()[rng() % e.G.elements().size()]);
      auto w = oracle_weyl(e.G, bruhat_cell(e.G.field(), g));
      CHECK(to_catalog_weyl(e.G, w) == bruhat_word(ctx, to_library(e.G, g)));
    }
  }
}

TEST_CASE("oracle class dimensions agree with the catalog") {
  for (auto [t, n, q] : std::vector<std::tuple<char, int, std::uint32_t>>{{'A', 2, 3}, {'C', 2, 3}, {'B', 2, 3}, {'A', 1, 5}}) {
    const auto& e = group(t, n, q);
    auto ctx = GroupContext::make(t, n);
    for (const auto& oc : e.cd.classes) CHECK(oc.dimension == class_dimension(ctx, to_library(e.G, e.G.decode(oc.rep))));
  }
}

TEST_CASE("w_O examples") {
  const auto& sl2 = group('A', 1, 5);
  auto wc = w_of_class(sl2.cd, class_of(sl2, diag({2, 3})));
  REQUIRE(wc.unique);
  auto w = oracle_weyl(sl2.G, wc.w);
  CHECK(w.length == 1);
  CHECK(w.str() == "[2,1]");

  // minimal unipotent class of Sp4: x_{2 e1}(1)
  const auto& sp4 = group('C', 2, 3);
  OMat u = sp4.G.root_element(sp4.G.field(), {2, 0}, 1);
  int c = class_of(sp4, u);
  auto wu = w_of_class(sp4.cd, c);
  REQUIRE(wu.unique);
  auto ow = oracle_weyl(sp4.G, wu.w);
  CHECK(ow.str() == "[-1,2]");
  auto row = verify_dimension_formula(sp4.G, sp4.cd, c);
  CHECK(row.dimension == 4);
  CHECK(row.length == 3);
  CHECK(row.minus_rank == 1);
  CHECK(row.ok());

  // regular unipotent in SL2: 2 = 1 + 1
  const auto& sl23 = group('A', 1, 3);
  OMat r = sl23.G.root_element(sl23.G.field(), {1, -1}, 1);
  auto rr = verify_dimension_formula(sl23.G, sl23.cd, class_of(sl23, r));
  CHECK(rr.dimension == 2);
  CHECK(rr.length + rr.minus_rank == 2);
  CHECK(rr.equality_at_wO);
}

TEST_CASE("dimension formula on every class of the small groups") {
  for (auto [t, n, q] : std::vector<std::tuple<char, int, std::uint32_t>>{
           {'A', 1, 3}, {'A', 1, 5}, {'A', 2, 3}, {'C', 2, 3}, {'B', 2, 3}}) {
    const auto& e = group(t, n, q);
    auto s = run_oracle_suite(e.G, e.cd);
    CAPTURE(s.group);
    CHECK(s.ok());
    int spherical = 0;
    for (const auto& r : s.rows) {
      CAPTURE(r.jordan);
      CHECK(r.inequality);
      CHECK(r.equality_at_wO == r.spherical);
      spherical += r.spherical;
    }
    CHECK(spherical > 0);
    if (n == 2) CHECK(spherical < static_cast<int>(s.rows.size()));
  }
}

TEST_CASE("w_O matches the catalog w_S") {
  const auto& e = group('A', 1, 5);
  auto s = run_oracle_suite(e.G, e.cd);
  CHECK(s.catalog_compared == 7);
  CHECK(s.catalog_mismatches.empty());
  const auto& a2 = group('A', 2, 5);
  auto s2 = run_oracle_suite(a2.G, a2.cd);
  CHECK(s2.catalog_compared > 0);
  CHECK(s2.catalog_mismatches.empty());
}

TEST_CASE("the mixed class with both +-1 parts unipotent is not spherical") {
  // regular in Sp2 x Sp2: dimension 8 exceeds l(w0) + rank = 6
  const auto& e = group('C', 2, 3);
  auto s = run_oracle_suite(e.G, e.cd);
  int found = 0;
  for (const auto& r : s.rows)
    if (r.jordan == "{1,1}(2){2,1}(2)") {
      ++found;
      CHECK(r.dimension == 8);
      CHECK_FALSE(r.spherical);
    }
  CHECK(found > 0);
}

TEST_CASE("slice orbits in SL2(F_5)") {
  const auto& e = group('A', 1, 5);
  int c = class_of(e, diag({2, 3}));
  auto r = slice_orbit_check(e.G, e.cd, e.cd.classes[static_cast<std::size_t>(c)].geometric);
  CHECK(r.nonempty);
  CHECK(r.stable);
  CHECK(r.transitive);
  CHECK(r.gamma_order == 4);
  CHECK(r.gamma_rational == 4);
  CHECK_FALSE(r.escalated);
  auto gam = oracle_gamma(e.G, e.G.field(), {1, 0});
  CHECK(gam.size() == 4);
  for (const auto& g : gam) CHECK(e.G.field().pow(g(0, 0), 4) == 1);
}

TEST_CASE("slice orbit suites on the small groups") {
  for (auto [t, n, q] : std::vector<std::tuple<char, int, std::uint32_t>>{{'A', 1, 3}, {'A', 1, 5}, {'A', 2, 3}, {'C', 2, 3}, {'B', 2, 3}}) {
    const auto& e = group(t, n, q);
    for (const auto& r : slice_orbit_suite(e.G, e.cd)) {
      CAPTURE(r.group);
      CAPTURE(r.jordan);
      CHECK(r.ok());
    }
  }
  // over F_3 the Sp4 slices need the quadratic extension for Gamma_w
  const auto& sp = group('C', 2, 3);
  bool escalated = false;
  for (const auto& r : slice_orbit_suite(sp.G, sp.cd)) escalated = escalated || r.escalated;
  CHECK(escalated);
}

TEST_CASE("normalizing into the fixed torus") {
  const auto& e = group('A', 1, 5);
  const std::vector<int> perm{1, 0};
  OMat wdot = oracle_wdot(e.G, perm);
  OMat tw = diag({4, 4});
  OMat x = omat_mul(e.G.field(), wdot, tw);
  auto r = normalize_to_fixed_torus(e.G, perm, wdot, x, tw);
  REQUIRE(r.found);
  CHECK(r.extension.empty());
  CHECK((r.s(0, 0) == 2 || r.s(0, 0) == 3));
  CHECK(r.verified);
  OMat rs = omat_mul(e.G.field(), r.s, r.s);
  CHECK(omat_mul(e.G.field(), tw, rs) == omat_identity(2));

  const auto& e3 = group('A', 1, 3);
  OMat w3 = oracle_wdot(e3.G, perm);
  OMat minus = diag({2, 2});
  auto r3 = normalize_to_fixed_torus(e3.G, perm, w3, omat_mul(e3.G.field(), w3, minus), minus);
  CHECK(r3.found);
  CHECK(r3.extension == "F_9");
  CHECK(r3.field_q == 9);
  CHECK(r3.verified);
}

TEST_CASE("catalog slices and oracle slices contain each other") {
  for (auto [t, n, q] : std::vector<std::tuple<char, int, std::uint32_t>>{{'A', 1, 5}, {'A', 1, 7}, {'A', 2, 5}}) {
    const auto& e = group(t, n, q);
    for (const auto& d : sheet_catalog(t, n)) {
      auto r = slice_containment(e.G, e.cd, d);
      CAPTURE(r.sheet);
      CHECK(r.ok());
    }
  }
}

TEST_CASE("library coordinates round trip") {
  for (auto [t, n, q] : std::vector<std::tuple<char, int, std::uint32_t>>{{'C', 2, 3}, {'B', 2, 3}}) {
    const auto& e = group(t, n, q);
    auto ctx = GroupContext::make(t, n);
    for (std::size_t k = 0; k < e.G.elements().size(); k += 997) {
      OMat g = e.G.decode(e.G.elements()[k]);
      auto lib = to_library(e.G, g);
      CHECK(from_library(e.G, lib) == g);
      CHECK(in_group(ctx, lib));
    }
  }
}
