#include "doctest.h"

#include "sheetslice/sevslice.hpp"

#include <random>

using namespace sheetslice;

namespace {

std::vector<Rat> amb(std::initializer_list<int> xs) {
  std::vector<Rat> v;
  for (int x : xs) v.push_back(Rat(x));
  return v;
}

std::vector<std::string> names(const PositiveSystem& ps) {
  std::vector<std::string> out;
  for (int k : ps.positive_roots()) out.push_back(ps.system().ambient_str(ps.system().root(k)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("A1") {
  auto a1 = RootSystem::build('A', 1);
  EigenBasisChoice ch{a1->simple_reflection(0), {{Rat(1)}}, std::nullopt};
  auto ps = positive_system(ch);
  CHECK(ps.positive_roots() == std::vector<int>{0});
}

TEST_CASE("B2 with w0 and the basis e1, e2") {
  auto b2 = RootSystem::build('B', 2);
  EigenBasisChoice ch{b2->longest(), {coroot_coords(*b2, amb({1, 0})), coroot_coords(*b2, amb({0, 1}))}, std::nullopt};
  auto ps = positive_system(ch);
  CHECK(names(ps) == std::vector<std::string>{"-e1+e2", "e1", "e1+e2", "e2"});
  auto rep = validate_system(ps, ch.w);
  CHECK(rep.valid);
  CHECK(rep.complement_ok);
  CHECK(check_max_length(ch.w, ps));
}

TEST_CASE("B2 with the highest-root reflection") {
  auto b2 = RootSystem::build('B', 2);
  auto beta = b2->from_ambient(amb({1, 1}));
  auto w = b2->reflection(beta);
  // psi = {+-(e1-e2)}, made positive by a functional with <e1-e2, f> > 0
  EigenBasisChoice ch{w, {coroot_coords(*b2, amb({1, 1}))}, coroot_coords(*b2, amb({1, 0}))};
  auto ps = positive_system(ch);
  CHECK(ps.length(w) == 3);
  CHECK(validate_system(ps, w).valid);
  CHECK(check_max_length(w, ps));
}

TEST_CASE("maximal length fails for s1 in A2") {
  auto a2 = RootSystem::build('A', 2);
  std::vector<bool> pos(6, false);
  for (int k = 0; k < 3; ++k) pos[static_cast<std::size_t>(k)] = true;
  PositiveSystem std_ps(a2, pos);
  CHECK_FALSE(check_max_length(a2->simple_reflection(0), std_ps));
  CHECK(check_max_length(a2->longest(), std_ps));
}

TEST_CASE("rejections") {
  auto b2 = RootSystem::build('B', 2);
  // not an eigenvector
  CHECK_THROWS_AS(positive_system({b2->reflection(b2->from_ambient(amb({1, 1}))), {coroot_coords(*b2, amb({1, 0}))}, std::nullopt}),
                  std::invalid_argument);
  // dependent
  CHECK_THROWS_AS(positive_system({b2->longest(), {coroot_coords(*b2, amb({1, 0})), coroot_coords(*b2, amb({2, 0}))}, std::nullopt}),
                  std::invalid_argument);
  auto a3 = RootSystem::build('A', 3);
  auto w13 = a3->simple_reflection(0) * a3->simple_reflection(2);
  CHECK_NOTHROW(positive_system({w13, {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1)}}, std::nullopt}));
  // spans only half of the eigenspace
  CHECK_THROWS_AS(positive_system({w13, {{Rat(1), Rat(0), Rat(-1)}}, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_WITH_AS(positive_system({w13, {{Rat(1), Rat(0), Rat(-1)}, {Rat(1), Rat(0), Rat(-1)}}, std::nullopt}),
                       doctest::Contains("dependent"), std::invalid_argument);
}

TEST_CASE("property suite on small Weyl groups") {
  std::mt19937_64 rng(20240601);
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 3}, {'B', 3}, {'C', 3}}) {
    auto rs = RootSystem::build(t, n);
    for (const auto& cls : involution_classes(*rs)) {
      const auto& w = cls.front();
      for (int trial = 0; trial < 5; ++trial) {
        auto ch = random_eigenbasis(w, rng, trial % 2 == 1);
        auto ps = positive_system(ch);
        auto rep = validate_system(ps, w);
        CAPTURE(rs->label());
        CAPTURE(rep.detail);
        CHECK(rep.valid);
        CHECK(rep.complement_ok);
        CHECK(rep.swap_ok);
        CHECK(check_max_length(w, ps));
        // positive rescaling leaves the system unchanged
        auto ch2 = ch;
        for (auto& v : ch2.basis)
          for (auto& x : v) x = x * Rat(7, 3);
        CHECK(positive_system(ch2).positive_roots() == ps.positive_roots());
        // the simple system of Psi+ sits inside the simple roots of Phi+
        auto simple = ps.simple_roots();
        CHECK(static_cast<int>(simple.size()) == rs->rank());
        std::vector<bool> mask(static_cast<std::size_t>(rs->num_roots()), false);
        for (int k : psi_roots(w))
          if (ps.is_positive(k)) mask[static_cast<std::size_t>(k)] = true;
        PositiveSystem psi_sys(rs, std::vector<bool>(mask));
        for (int k : psi_roots(w)) {
          if (!ps.is_positive(k)) continue;
          bool psi_simple = true;
          for (int a : psi_roots(w))
            for (int b : psi_roots(w)) {
              if (!ps.is_positive(a) || !ps.is_positive(b)) continue;
              RootVec s = rs->root(a);
              for (std::size_t i = 0; i < s.size(); ++i) s[i] += rs->root(b)[i];
              if (s == rs->root(k)) psi_simple = false;
            }
          if (psi_simple) CHECK(std::find(simple.begin(), simple.end(), k) != simple.end());
        }
      }
    }
  }
}
