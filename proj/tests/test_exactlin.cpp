#include "doctest.h"

#include "sheetslice/fq.hpp"
#include "sheetslice/matrix.hpp"
#include "sheetslice/ratfunc.hpp"

#include <random>

using namespace sheetslice;

TEST_CASE("prime field arithmetic") {
  Fp a(1009, 5), b(1009, -3);
  CHECK((a + b).value() == 2);
  CHECK((a * b).value() == 1009 - 15);
  CHECK((a * a.inv()).value() == 1);
  CHECK(next_prime_congruent(1000, 4, 1) == 1009);
  auto r = sqrt_fp(Fp(1009, -1));
  REQUIRE(r);
  CHECK((*r * *r) == Fp(1009, -1));
  CHECK_FALSE(sqrt_fp(Fp(7, 3)));
  CHECK(smallest_nonresidue(7) == 3);
}

TEST_CASE("extension fields") {
  const FqContext* f9 = FqContext::get(3, 2);
  CHECK(f9->q == 9);
  Fq t = Fq::gen(f9);
  // t^2 = nonresidue 2 mod 3
  CHECK(t * t == Fq(f9, 2));
  int units = 0;
  for (std::uint64_t k = 1; k < 9; ++k) {
    Fq x = t.from_index(k);
    CHECK(x * x.inv() == Fq(f9, 1));
    ++units;
  }
  CHECK(units == 8);
  const FqContext* f4 = FqContext::get(2, 2);
  Fq u = Fq::gen(f4);
  CHECK(u * u * u == Fq(f4, 1));
  const FqContext* f8 = FqContext::get(2, 3);
  Fq v = Fq::gen(f8);
  CHECK(power(v, 7) == Fq(f8, 1));
  CHECK_FALSE(power(v, 1) == Fq(f8, 1));
  auto s = sqrt_fq(Fq(f9, 2));
  REQUIRE(s);
  CHECK(*s * *s == Fq(f9, 2));
}

TEST_CASE("polynomial factorization over finite fields") {
  Fp z(7, 0);
  auto X = Poly<Fp>::x(z);
  auto one = Poly<Fp>::constant(z.like(1));
  // (x-1)^2 (x^2+1) (x+3)
  auto f = (X - one) * (X - one) * (X * X + one) * (X + Poly<Fp>::constant(z.like(3)));
  auto fs = factor_finite(f);
  REQUIRE(fs.size() == 3);
  int total = 0;
  for (auto& pf : fs) total += pf.factor.degree() * pf.multiplicity;
  CHECK(total == 5);
  auto roots = roots_finite(f);
  CHECK(roots.size() == 2);
  // x^7 - x splits completely
  std::vector<Fp> c(8, z);
  c[7] = z.like(1);
  c[1] = z.like(-1);
  CHECK(factor_finite(Poly<Fp>(z, c)).size() == 7);
  // char 2 over F_4: x^4 + x = x (x+1) (x+u) (x+u^2)
  const FqContext* f4 = FqContext::get(2, 2);
  Fq w(f4, 0);
  std::vector<Fq> d(5, w);
  d[4] = w.like(1);
  d[1] = w.like(1);
  CHECK(factor_finite(Poly<Fq>(w, d)).size() == 4);
  CHECK(is_irreducible(X * X + one));
}

TEST_CASE("rational matrix rank, determinant, inverse") {
  auto m = parse_matrix_rat("1 2 3; 4 5 6; 7 8 9");
  CHECK(rank(m) == 2);
  CHECK(det(m).is_zero());
  auto n = parse_matrix_rat("2 1/2; 0 3");
  CHECK(det(n) == Rat(6));
  auto ni = inverse(n);
  REQUIRE(ni);
  CHECK((*ni * n) == Matrix<Rat>::identity(2, Rat(0)));
  CHECK(rank(Matrix<Rat>::identity(5, Rat(0))) == 5);
  CHECK(rank(Matrix<Rat>(4, 4, Rat(0))) == 0);
  CHECK_THROWS(parse_matrix_rat("1 2; 3"));
}

TEST_CASE("Bareiss rank agrees with field elimination on random rational matrices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix<Rat> m(5, 6, Rat(0));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 6; ++j) m(i, j) = Rat(static_cast<long long>(rng() % 5) - 2, 1 + rng() % 3);
    // force a dependency half of the time
    if (trial % 2)
      for (std::size_t j = 0; j < 6; ++j) m(4, j) = m(0, j) + m(1, j);
    Matrix<Rat> copy = m;
    CHECK(rank(m) == row_reduce(copy).size());
  }
}

TEST_CASE("characteristic polynomial") {
  auto m = parse_matrix_fp("0 1 0; 0 0 1; 6 -11 6", 1009);
  auto cp = charpoly(m);
  Fp z(1009, 0);
  CHECK(cp.degree() == 3);
  for (long long r : {1, 2, 3}) CHECK(cp(z.like(r)).is_zero());
  CHECK(poly_eval(cp, m).is_zero());
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix<Fp> a(6, 6, z);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) a(i, j) = z.like(rng() % 1009);
    auto p = charpoly(a);
    CHECK(poly_eval(p, a).is_zero());
    CHECK(p[0] == (det(a) * z.like(1)));  // n even: constant term = det
  }
}

TEST_CASE("nullspace") {
  auto m = parse_matrix_rat("1 1 0; 0 0 1");
  auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == Rat(-1));
  CHECK(ns[0][1] == Rat(1));
  CHECK(ns[0][2] == Rat(0));
}

TEST_CASE("rational functions") {
  using K = RatFunc<GaussRat>;
  K mu = K::variable(GaussRat(0));
  K one = mu.like(1);
  K f = (mu * mu - one) / (mu - one);
  CHECK(f == mu + one);
  K g = one / mu + one / (mu * mu);
  CHECK(g * mu * mu == mu + one);
  CHECK((f - f).is_zero());
  K i(GaussRat::i());
  CHECK(i * i == -one);
}

TEST_CASE("matrix literal parsing over F_p") {
  auto m = parse_matrix_fp("1, -1\n 3 4", 5);
  CHECK(m(0, 1).value() == 4);
  CHECK(m(1, 0).value() == 3);
  CHECK_THROWS(parse_matrix_fp("1 x", 5));
}
