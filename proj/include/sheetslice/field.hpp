// Exact scalar types: big rationals, Gaussian rationals, prime fields.
#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace sheetslice {

template <class F>
concept FieldLike = requires(const F a, const F b, long long n) {
  { a + b } -> std::same_as<F>;
  { a - b } -> std::same_as<F>;
  { a * b } -> std::same_as<F>;
  { a / b } -> std::same_as<F>;
  { -a } -> std::same_as<F>;
  { a == b } -> std::same_as<bool>;
  { a.like(n) } -> std::same_as<F>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.inv() } -> std::same_as<F>;
  { a.str() } -> std::convertible_to<std::string>;
};

/// Finite fields additionally enumerate their elements.
template <class F>
concept FiniteFieldLike = FieldLike<F> && requires(const F a, std::uint64_t k) {
  { a.characteristic() } -> std::convertible_to<std::uint64_t>;
  { a.order() } -> std::convertible_to<std::uint64_t>;
  { a.from_index(k) } -> std::same_as<F>;
  { a.index() } -> std::convertible_to<std::uint64_t>;
};

class Rat {
 public:
  Rat() = default;
  Rat(long long n) : q_(static_cast<long>(n)) {}
  Rat(long long n, long long d) : q_(static_cast<long>(n), static_cast<long>(d)) {
    if (d == 0) throw std::domain_error("zero denominator");
    q_.canonicalize();
  }
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  Rat like(long long n) const { return Rat(n); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  Rat inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return Rat(mpq_class(1) / q_);
  }
  int sign() const { return sgn(q_); }
  const mpq_class& q() const { return q_; }
  std::string str() const { return q_.get_str(); }
  std::size_t hash() const { return std::hash<std::string>{}(q_.get_str(16)); }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ + b.q_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ - b.q_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ * b.q_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return Rat(mpq_class(a.q_ / b.q_));
  }
  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& b) { q_ += b.q_; return *this; }
  Rat& operator-=(const Rat& b) { q_ -= b.q_; return *this; }
  Rat& operator*=(const Rat& b) { q_ *= b.q_; return *this; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }

 private:
  mpq_class q_;
};

/// Elements a + b·i of Q(i).
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long long n) : re_(n) {}
  GaussRat(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}
  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  GaussRat like(long long n) const { return GaussRat(n); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  GaussRat inv() const {
    Rat n = re_ * re_ + im_ * im_;
    if (n.is_zero()) throw std::domain_error("inverse of zero");
    return GaussRat(re_ / n, -im_ / n);
  }
  const Rat& re() const { return re_; }
  const Rat& im() const { return im_; }
  std::string str() const {
    if (im_.is_zero()) return re_.str();
    if (re_.is_zero()) return im_.str() + "i";
    return "(" + re_.str() + (im_.sign() > 0 ? "+" : "") + im_.str() + "i)";
  }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) { return a * b.inv(); }
  GaussRat operator-() const { return {-re_, -im_}; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  Rat re_, im_;
};

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
bool is_prime_u64(std::uint64_t n);

/// Element of F_p with the modulus carried alongside (p < 2^31).
class Fp {
 public:
  Fp() = default;
  Fp(std::uint32_t p, long long x) : p_(p) {
    if (p < 2) throw std::invalid_argument("Fp modulus must be prime");
    long long r = x % static_cast<long long>(p);
    if (r < 0) r += p;
    v_ = static_cast<std::uint32_t>(r);
  }

  Fp like(long long n) const { return Fp(p_, n); }
  bool is_zero() const { return v_ == 0; }
  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  std::uint64_t characteristic() const { return p_; }
  std::uint64_t order() const { return p_; }
  Fp from_index(std::uint64_t k) const { return Fp(p_, static_cast<long long>(k % p_)); }
  std::uint64_t index() const { return v_; }
  Fp inv() const;
  Fp pow(std::uint64_t e) const { return raw(p_, static_cast<std::uint32_t>(powmod64(v_, e, p_))); }
  /// Signed representative in (-p/2, p/2].
  long long centered() const { return v_ > p_ / 2 ? static_cast<long long>(v_) - p_ : v_; }
  std::string str() const { return std::to_string(v_); }
  std::size_t hash() const { return v_; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint32_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return raw(a.p_, s);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    return raw(a.p_, a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    return raw(a.p_, static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v_) * b.v_ % a.p_));
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
  Fp operator-() const { return raw(p_, v_ == 0 ? 0 : p_ - v_); }
  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_ && a.p_ == b.p_; }
  friend bool operator<(const Fp& a, const Fp& b) { return a.v_ < b.v_; }

 private:
  static Fp raw(std::uint32_t p, std::uint32_t v) {
    Fp r;
    r.p_ = p;
    r.v_ = v;
    return r;
  }
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

bool is_square(const Fp& a);
std::optional<Fp> sqrt_fp(const Fp& a);
/// Smallest quadratic nonresidue mod an odd prime.
std::uint32_t smallest_nonresidue(std::uint32_t p);
/// Smallest prime p > lower with p % m == r.
std::uint32_t next_prime_congruent(std::uint32_t lower, std::uint32_t m, std::uint32_t r);

template <FieldLike F>
F power(F a, long long e) {
  if (e < 0) {
    a = a.inv();
    e = -e;
  }
  F r = a.like(1);
  while (e > 0) {
    if (e & 1) r = r * a;
    a = a * a;
    e >>= 1;
  }
  return r;
}

}  // namespace sheetslice
