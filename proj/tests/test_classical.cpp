#include "doctest.h"

#include "sheetslice/classical.hpp"

#include <random>

using namespace sheetslice;

namespace {

Fp rnd(std::mt19937_64& rng, std::uint32_t p) { return Fp(p, static_cast<long long>(rng() % p)); }

// random element of the upper-triangular Borel: torus times positive root elements
Matrix<Fp> random_borel(const GroupContext& ctx, std::mt19937_64& rng, std::uint32_t p) {
  const RootSystem& rs = ctx.roots();
  std::vector<Fp> eps;
  for (int i = 0; i < rs.ambient_dim(); ++i) eps.push_back(Fp(p, 1 + static_cast<long long>(rng() % (p - 1))));
  if (ctx.type() == 'A') {
    // det 1
    Fp prod(p, 1);
    for (std::size_t i = 0; i + 1 < eps.size(); ++i) prod = prod * eps[i];
    eps.back() = prod.inv();
  }
  Matrix<Fp> b = torus_element(ctx, eps);
  for (int k = 0; k < rs.num_positive(); ++k) b = b * root_element(ctx, k, rnd(rng, p));
  return b;
}

}  // namespace

TEST_CASE("contexts and forms") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'B', 3}, {'C', 2}, {'C', 3}, {'D', 4}}) {
    auto ctx = GroupContext::make(t, n);
    CAPTURE(ctx.name());
    Fp z(1009, 0);
    for (int k = 0; k < ctx.roots().num_roots(); ++k) {
      auto x = root_element(ctx, k, Fp(1009, 17));
      CHECK(in_group(ctx, x));
      CHECK(is_unipotent(x));
    }
    for (int i = 0; i < n; ++i) CHECK(in_group(ctx, weyl_rep_root(ctx, ctx.roots().simple_index(i), z)));
  }
  CHECK(GroupContext::make('C', 2).group_dimension() == 10);
  CHECK(GroupContext::make('B', 2).group_dimension() == 10);
  CHECK(GroupContext::make('A', 2).group_dimension() == 8);
  CHECK(GroupContext::make('D', 4).name() == "SO8");
  CHECK_THROWS(GroupContext::make('E', 6));
}

TEST_CASE("Bruhat decoding of Weyl representatives and Borel elements") {
  std::mt19937_64 rng(7);
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 2}, {'C', 3}, {'D', 4}}) {
    auto ctx = GroupContext::make(t, n);
    const std::uint32_t p = 1009;
    Fp z(p, 0);
    CAPTURE(ctx.name());
    CHECK(bruhat_word(ctx, random_borel(ctx, rng, p)).is_identity());
    for (const auto& w : all_elements(ctx.roots())) {
      auto wd = weyl_rep(ctx, w, z);
      REQUIRE(in_group(ctx, wd));
      CHECK(bruhat_word(ctx, wd) == w);
      // B-biinvariance
      if (rng() % 4 == 0) CHECK(bruhat_word(ctx, random_borel(ctx, rng, p) * wd * random_borel(ctx, rng, p)) == w);
    }
    // x_{-alpha}(t) lies in B s_alpha B
    for (int k = ctx.roots().num_positive(); k < ctx.roots().num_roots(); ++k) {
      auto x = root_element(ctx, k, Fp(p, 5));
      CHECK(bruhat_word(ctx, x) == ctx.roots().reflection(ctx.roots().root(k)));
    }
  }
}

TEST_CASE("Bruhat cells of SL2(F5) by enumeration") {
  auto ctx = GroupContext::make('A', 1);
  const std::uint32_t p = 5;
  int cell[2] = {0, 0};
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c)
        for (int d = 0; d < 5; ++d) {
          if ((a * d - b * c) % 5 != 1 && (a * d - b * c) % 5 != -4) continue;
          auto g = Matrix<Fp>::from_ints({{a, b}, {c, d}}, Fp(p, 0));
          auto w = bruhat_word(ctx, g);
          ++cell[w.length()];
          CHECK((w.length() == 1) == (c != 0));
        }
  // |B| = 20, cells 20 and 20 * 5
  CHECK(cell[0] == 20);
  CHECK(cell[1] == 100);
}

TEST_CASE("unipotent partitions") {
  Fp z(7, 0);
  CHECK(unipotent_partition(Matrix<Fp>::identity(4, z)) == std::vector<int>{1, 1, 1, 1});
  auto j = Matrix<Fp>::from_ints({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}, z);
  CHECK(unipotent_partition(j) == std::vector<int>{3});
  CHECK_THROWS(unipotent_partition(Matrix<Fp>::from_ints({{2, 0}, {0, 4}}, z)));
  CHECK(partition_str({3, 2, 2, 1}) == "(3,2^2,1)");
  CHECK(parse_partition("(3,2^2,1)") == std::vector<int>{3, 2, 2, 1});
}

TEST_CASE("class dimensions") {
  auto sl2 = GroupContext::make('A', 1);
  Fp z(7, 0);
  CHECK(class_dimension(sl2, Matrix<Fp>::identity(2, z)) == 0);
  CHECK(class_dimension(sl2, Matrix<Fp>::from_ints({{-1, 0}, {0, -1}}, z)) == 0);
  CHECK(class_dimension(sl2, Matrix<Fp>::from_ints({{2, 0}, {0, 4}}, z)) == 2);
  CHECK(class_dimension(sl2, Matrix<Fp>::from_ints({{1, 1}, {0, 1}}, z)) == 2);
  auto sp4 = GroupContext::make('C', 2);
  // long root element x_{2e1}(1): transvection, partition (2,1,1)
  int k = sp4.roots().root_index(sp4.roots().from_ambient({Rat(2), Rat(0)}));
  auto x = root_element(sp4, k, Fp(7, 1));
  CHECK(unipotent_partition(x) == std::vector<int>{2, 1, 1});
  CHECK(class_dimension(sp4, x) == 4);
  // s_beta for the highest root: l + rk(1-w) = 3 + 1
  auto sb = sp4.roots().reflection(sp4.roots().root(k));
  CHECK(sb.length() + minus_one_rank(sb) == 4);
  // conjugation invariance
  std::mt19937_64 rng(3);
  auto so5 = GroupContext::make('B', 2);
  auto u = root_element(so5, 0, Fp(1009, 3)) * root_element(so5, 3, Fp(1009, 5));
  int d = class_dimension(so5, u);
  auto inv = class_invariants(u, &so5);
  for (int trial = 0; trial < 5; ++trial) {
    auto g = weyl_rep(so5, so5.roots().longest(), Fp(1009, 0)) * root_element(so5, static_cast<int>(rng() % 8), Fp(1009, 11));
    auto gi = inverse_or_throw(g);
    auto c = g * u * gi;
    CHECK(class_dimension(so5, c) == d);
    CHECK(class_invariants(c, &so5).key() == inv.key());
  }
}

TEST_CASE("class invariants") {
  Fp z(7, 0);
  auto g = Matrix<Fp>::from_ints({{2, 1, 0}, {0, 2, 0}, {0, 0, 3}}, z);
  auto inv = class_invariants(g);
  REQUIRE(inv.blocks.size() == 2);
  CHECK(inv.blocks[0].partition.size() + inv.blocks[1].partition.size() == 2);
  CHECK_FALSE(inv.unipotent);
  auto u = class_invariants(Matrix<Fp>::from_ints({{1, 1}, {0, 1}}, z));
  REQUIRE(u.unipotent);
  CHECK(*u.unipotent == std::vector<int>{2});
  // x^2 + 1 irreducible over F_7: one block of degree 2
  auto r = class_invariants(Matrix<Fp>::from_ints({{0, -1}, {1, 0}}, z));
  REQUIRE(r.blocks.size() == 1);
  CHECK(r.blocks[0].degree == 2);
  CHECK(r.blocks[0].partition == std::vector<int>{1});
}
