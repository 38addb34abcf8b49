#include "doctest.h"
#include "oracles.hpp"

#include "sheetslice/toruslat.hpp"

using namespace sheetslice;

TEST_CASE("group shapes") {
  CHECK(GroupShape::from_cyclic({2, 3}).divisors == std::vector<long long>{6});
  CHECK(GroupShape::from_cyclic({1, 4, 2}).divisors == std::vector<long long>{2, 4});
  CHECK(GroupShape::from_cyclic({}).order() == 1);
  CHECK(GroupShape::from_cyclic({2, 2, 2}).str() == "Z/2 x Z/2 x Z/2");
}

TEST_CASE("fixed part") {
  auto a1 = RootSystem::build('A', 1);
  auto s1 = a1->simple_reflection(0);
  auto f = fixed_part(torus_data(a1->identity(), Isogeny::SimplyConnected));
  CHECK(f.torus_rank == 1);
  CHECK(f.component_group.order() == 1);
  // T^{s1} = {+-1} in SL2
  f = fixed_part(torus_data(s1, Isogeny::SimplyConnected));
  CHECK(f.torus_rank == 0);
  CHECK(f.component_group.divisors == std::vector<long long>{2});
  // PGL2: (1 - s1) = 2 on the coweight lattice as well
  CHECK(fixed_part(torus_data(s1, Isogeny::Adjoint)).component_group.order() == 2);
  auto b3 = RootSystem::build('B', 3);
  f = fixed_part(torus_data(b3->longest(), Isogeny::SimplyConnected));
  CHECK(f.torus_rank == 0);
  CHECK(f.component_group.divisors == std::vector<long long>{2, 2, 2});
  auto a2 = RootSystem::build('A', 2);
  CHECK_THROWS(fixed_part(torus_data(a2->simple_reflection(0) * a2->simple_reflection(1), Isogeny::SimplyConnected)));
}

TEST_CASE("S_w shapes") {
  auto a1 = RootSystem::build('A', 1);
  CHECK(s_w_group(torus_data(a1->simple_reflection(0), Isogeny::SimplyConnected)).divisors == std::vector<long long>{2});
  auto c2 = RootSystem::build('C', 2);
  CHECK(s_w_group(torus_data(c2->longest(), Isogeny::Classical)).divisors == std::vector<long long>{2, 2});
  // w = id: all of T[2]
  CHECK(s_w_group(torus_data(c2->identity(), Isogeny::Classical)).order() == 4);
}

TEST_CASE("Gamma_w basic cases") {
  auto a1 = RootSystem::build('A', 1);
  auto g = gamma_w(torus_data(a1->identity(), Isogeny::SimplyConnected));
  CHECK(g.shape.order() == 1);
  g = gamma_w(torus_data(a1->simple_reflection(0), Isogeny::SimplyConnected));
  CHECK(g.shape.divisors == std::vector<long long>{4});
  REQUIRE(g.generators.size() == 1);
  CHECK(g.generators[0].order() == 4);
  CHECK_THROWS(gamma_w(torus_data(a1->simple_reflection(0), Isogeny::SimplyConnected), 2));
}

TEST_CASE("Gamma_w agrees with torsion-point enumeration on all involutions (rank <= 3)") {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 3}, {'G', 2}}) {
    auto rs = RootSystem::build(t, n);
    for (const auto& cls : involution_classes(*rs)) {
      for (Isogeny iso : {Isogeny::SimplyConnected, Isogeny::Adjoint}) {
        auto td = torus_data(cls.front(), iso);
        auto g = gamma_w(td);
        auto pts = oracle::gamma_points(td.action);
        CAPTURE(rs->label());
        CAPTURE(td.action.str());
        CHECK(static_cast<long long>(pts.size()) == g.shape.order());
        CHECK(oracle::shape_from_counts(oracle::order_counts(pts)) == g.shape.divisors);
        CHECK(static_cast<long long>(gamma_elements(g).size()) == g.shape.order());
        // torus decomposition: rank ker(1-w) + rank ker(1+w) = n
        CHECK(fixed_part(td).torus_rank + antifixed_part(td).torus_rank == td.lattice_rank());
      }
    }
  }
}

TEST_CASE("E6 and E7 generators are beta, gamma (and alpha7) coroots over 4") {
  auto e6 = RootSystem::build('E', 6);
  auto w = w0_wPi(*e6, {2, 3, 4}).w;
  auto g = gamma_w(torus_data(w, Isogeny::SimplyConnected));
  CHECK(g.shape.divisors == std::vector<long long>{4, 4});
  RootVec beta = e6->root(e6->highest_root());
  RootVec gamma{1, 0, 1, 1, 1, 1};
  // beta^vee, gamma^vee span Y_-: solve in the lattice spanned by the computed basis
  IntMat B(6, 2), C(6, 4);
  for (int i = 0; i < 6; ++i) {
    B(i, 0) = e6->coroot(beta)[static_cast<std::size_t>(i)];
    B(i, 1) = e6->coroot(gamma)[static_cast<std::size_t>(i)];
    C(i, 0) = B(i, 0);
    C(i, 1) = B(i, 1);
    C(i, 2) = g.y_minus[0][static_cast<std::size_t>(i)];
    C(i, 3) = g.y_minus[1][static_cast<std::size_t>(i)];
  }
  CHECK(rank_q(C) == 2);
  auto snf = smith_normal_form(B);
  CHECK(snf.diagonal == std::vector<long long>{1, 1});
}

TEST_CASE("isogeny check on SL2 / PGL2") {
  auto a1 = RootSystem::build('A', 1);
  auto r = isogeny_check(a1->simple_reflection(0));
  CHECK(r.sc.order() == 4);
  CHECK(r.adj.order() == 4);
  CHECK(r.quotient_shape);
  // alpha^vee / 4 = omega^vee / 2 has order 2
  CHECK(r.image.order() == 2);
}

TEST_CASE("classical lattices") {
  auto b2 = RootSystem::build('B', 2);
  auto td = torus_data(b2->longest(), Isogeny::Classical);
  CHECK(td.action == -IntMat::identity(2));
  auto a2 = RootSystem::build('A', 2);
  CHECK(torus_data(a2->longest(), Isogeny::Classical).lattice_rank() == 3);
  CHECK_THROWS(torus_data(RootSystem::build('G', 2)->longest(), Isogeny::Classical));
  CHECK(parse_isogeny("adj") == Isogeny::Adjoint);
  CHECK_THROWS(parse_isogeny("spin"));
}
