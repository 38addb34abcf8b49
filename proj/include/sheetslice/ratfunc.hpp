// Rational functions K(mu) in one variable over an exact field K.
#pragma once

#include "sheetslice/poly.hpp"

namespace sheetslice {

template <FieldLike K>
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  explicit RatFunc(const K& c) : num_(Poly<K>::constant(c)), den_(Poly<K>::constant(c.like(1))) {}

  static RatFunc variable(const K& proto) {
    return RatFunc(Poly<K>::x(proto), Poly<K>::constant(proto.like(1)));
  }

  RatFunc like(long long n) const { return RatFunc(num_.zero().like(n)); }
  bool is_zero() const { return num_.is_zero(); }
  RatFunc inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational function");
    return RatFunc(den_, num_);
  }
  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }
  std::string str() const {
    if (den_.degree() == 0) return "(" + num_.str("mu") + ")";
    return "(" + num_.str("mu") + ")/(" + den_.str("mu") + ")";
  }
  /// Value at a point where the denominator does not vanish.
  K eval(const K& t) const { return num_(t) / den_(t); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }
  RatFunc operator-() const { return RatFunc(-num_, den_, true); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  RatFunc(Poly<K> num, Poly<K> den, bool) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<K>::constant(den_.zero().like(1));
      return;
    }
    Poly<K> g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    K l = den_.lead().inv();
    num_ = Poly<K>::constant(l) * num_;
    den_ = den_.monic();
  }
  Poly<K> num_{K(0)};
  Poly<K> den_ = Poly<K>::constant(K(1));
};

}  // namespace sheetslice
