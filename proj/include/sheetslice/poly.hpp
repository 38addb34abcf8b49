// Dense univariate polynomials over an exact field, with factorization over finite fields.
#pragma once

#include "sheetslice/field.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace sheetslice {

template <FieldLike F>
class Poly {
 public:
  explicit Poly(F proto) : zero_(proto.like(0)) {}
  Poly(F proto, std::vector<F> coeffs) : zero_(proto.like(0)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(const F& c) { return Poly(c, {c}); }
  static Poly x(const F& proto) { return Poly(proto, {proto.like(0), proto.like(1)}); }
  /// x - r
  static Poly linear(const F& r) { return Poly(r, {-r, r.like(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const F& operator[](std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
  const std::vector<F>& coeffs() const { return c_; }
  const F& lead() const { return c_.empty() ? zero_ : c_.back(); }
  const F& zero() const { return zero_; }

  F operator()(const F& t) const {
    F acc = zero_;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
  }

  Poly monic() const {
    if (c_.empty()) return *this;
    F li = c_.back().inv();
    std::vector<F> r;
    r.reserve(c_.size());
    for (const auto& a : c_) r.push_back(a * li);
    return Poly(zero_, std::move(r));
  }

  Poly derivative() const {
    std::vector<F> r;
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * zero_.like(static_cast<long long>(i)));
    return Poly(zero_, std::move(r));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return Poly(a.zero_, std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<F> r(std::max(a.c_.size(), b.c_.size()), a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
    return Poly(a.zero_, std::move(r));
  }
  Poly operator-() const { return Poly(zero_) - *this; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.zero_);
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(a.zero_, std::move(r));
  }
  friend Poly operator*(const F& s, const Poly& a) { return Poly::constant(s) * a; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder; b must be nonzero.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(a.zero_), a};
    std::vector<F> rem = a.c_;
    std::vector<F> q(a.c_.size() - b.c_.size() + 1, a.zero_);
    F li = b.c_.back().inv();
    for (std::size_t k = q.size(); k-- > 0;) {
      F t = rem[k + b.c_.size() - 1] * li;
      q[k] = t;
      if (t.is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] = rem[k + j] - t * b.c_[j];
    }
    rem.resize(b.c_.size() - 1, a.zero_);
    return {Poly(a.zero_, std::move(q)), Poly(a.zero_, std::move(rem))};
  }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

  std::string str(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      bool unit = c_[i] == zero_.like(1);
      if (i == 0 || !unit) s += c_[i].str();
      if (i > 0) {
        if (!unit) s += "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  F zero_;
  std::vector<F> c_;
};

template <FieldLike F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    Poly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// base^e mod m for a big exponent.
template <FieldLike F>
Poly<F> poly_powmod(const Poly<F>& base, const mpz_class& e, const Poly<F>& m) {
  Poly<F> result = Poly<F>::constant(base.zero().like(1)) % m;
  Poly<F> b = base % m;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
  }
  return result;
}

/// Irreducible factor with multiplicity.
template <FieldLike F>
struct PolyFactor {
  Poly<F> factor;
  int multiplicity;
};

namespace detail {

template <FiniteFieldLike F>
Poly<F> frobenius_power(const Poly<F>& g, const Poly<F>& f, int times) {
  // g^(q^times) mod f
  mpz_class q = static_cast<unsigned long>(g.zero().order());
  Poly<F> r = g;
  for (int i = 0; i < times; ++i) r = poly_powmod(r, q, f);
  return r;
}

// p-th root of a polynomial whose derivative vanishes (char p).
template <FiniteFieldLike F>
Poly<F> pth_root(const Poly<F>& f) {
  std::uint64_t p = f.zero().characteristic();
  std::uint64_t q = f.zero().order();
  // a^(1/p) = a^(q/p)
  std::vector<F> r;
  for (std::size_t i = 0; i * p < f.coeffs().size(); ++i) {
    F a = f[i * p];
    r.push_back(power(a, static_cast<long long>(q / p)));
  }
  return Poly<F>(f.zero(), std::move(r));
}

template <FiniteFieldLike F>
std::vector<std::pair<Poly<F>, int>> squarefree(const Poly<F>& f0) {
  std::vector<std::pair<Poly<F>, int>> out;
  Poly<F> f = f0.monic();
  std::uint64_t p = f.zero().characteristic();
  if (f.degree() <= 0) return out;
  Poly<F> d = f.derivative();
  if (d.is_zero()) {
    for (auto& [g, m] : squarefree(pth_root(f))) out.push_back({g, m * static_cast<int>(p)});
    return out;
  }
  Poly<F> c = poly_gcd(f, d);
  Poly<F> w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly<F> y = poly_gcd(w, c);
    Poly<F> z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) {
    for (auto& [g, m] : squarefree(pth_root(c))) out.push_back({g, m * static_cast<int>(p)});
  }
  return out;
}

template <FiniteFieldLike F>
void equal_degree_split(const Poly<F>& f, int d, std::mt19937_64& rng, std::vector<Poly<F>>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const F z = f.zero();
  std::uint64_t q = z.order();
  std::uint64_t p = z.characteristic();
  mpz_class qd;
  mpz_ui_pow_ui(qd.get_mpz_t(), q, static_cast<unsigned long>(d));
  for (;;) {
    std::vector<F> rc;
    for (int i = 0; i < f.degree(); ++i) rc.push_back(z.from_index(rng() % q));
    Poly<F> a(z, rc);
    if (a.degree() <= 0) continue;
    Poly<F> g(z);
    if (p != 2) {
      mpz_class e = (qd - 1) / 2;
      g = poly_powmod(a, e, f) - Poly<F>::constant(z.like(1));
    } else {
      // trace map a + a^2 + ... + a^(2^(kd-1))
      int kd = 0;
      for (std::uint64_t t = q; t > 1; t /= 2) ++kd;
      kd *= d;
      Poly<F> t = a % f;
      Poly<F> acc = t;
      for (int i = 1; i < kd; ++i) {
        t = (t * t) % f;
        acc = acc + t;
      }
      g = acc;
    }
    Poly<F> h = poly_gcd(f, g);
    if (h.degree() > 0 && h.degree() < f.degree()) {
      equal_degree_split(h, d, rng, out);
      equal_degree_split(f / h, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Complete factorization over a finite field into monic irreducibles, sorted by (degree, coefficients).
template <FiniteFieldLike F>
std::vector<PolyFactor<F>> factor_finite(const Poly<F>& f) {
  std::vector<PolyFactor<F>> out;
  std::mt19937_64 rng(0x5eedULL + static_cast<std::uint64_t>(f.degree()));
  for (auto& [sf, mult] : detail::squarefree(f)) {
    Poly<F> rest = sf;
    Poly<F> xq = Poly<F>::x(f.zero());
    int d = 0;
    while (rest.degree() > 0) {
      ++d;
      if (2 * d > rest.degree()) {
        std::vector<Poly<F>> pieces{rest.monic()};
        for (auto& g : pieces) out.push_back({g, mult});
        break;
      }
      xq = detail::frobenius_power(xq, rest, 1);
      Poly<F> g = poly_gcd(rest, xq - Poly<F>::x(f.zero()));
      if (g.degree() > 0) {
        std::vector<Poly<F>> pieces;
        detail::equal_degree_split(g, d, rng, pieces);
        for (auto& h : pieces) out.push_back({h, mult});
        rest = rest / g;
        xq = xq % rest;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor<F>& a, const PolyFactor<F>& b) {
    if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
    for (int i = a.factor.degree(); i >= 0; --i) {
      auto ia = a.factor[i].index(), ib = b.factor[i].index();
      if (ia != ib) return ia < ib;
    }
    return false;
  });
  return out;
}

template <FiniteFieldLike F>
bool is_irreducible(const Poly<F>& f) {
  if (f.degree() <= 0) return false;
  auto fs = factor_finite(f);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

/// Roots in the base field, with multiplicity.
template <FiniteFieldLike F>
std::vector<std::pair<F, int>> roots_finite(const Poly<F>& f) {
  std::vector<std::pair<F, int>> r;
  for (auto& pf : factor_finite(f))
    if (pf.factor.degree() == 1) r.push_back({-pf.factor[0], pf.multiplicity});
  return r;
}

}  // namespace sheetslice
