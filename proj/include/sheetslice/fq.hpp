// Finite fields F_{p^k}, k <= 4, as F_p[t]/(m(t)).
#pragma once

#include "sheetslice/field.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace sheetslice {

struct FqContext {
  std::uint32_t p = 0;
  int k = 1;
  /// monic modulus: t^k = -(mod[0] + mod[1] t + ... + mod[k-1] t^{k-1})
  std::array<std::uint32_t, 4> mod{};
  std::uint64_t q = 0;

  /// Shared context for F_{p^k}. For k = 2 and odd p the modulus is t^2 - r with r the
  /// smallest nonresidue, so square roots of nonresidues of F_p are F_p-multiples of t.
  static const FqContext* get(std::uint32_t p, int k);
};

class Fq {
 public:
  Fq() = default;
  Fq(const FqContext* ctx, long long x) : ctx_(ctx) {
    long long r = x % static_cast<long long>(ctx->p);
    if (r < 0) r += ctx->p;
    c_[0] = static_cast<std::uint32_t>(r);
  }
  /// Embeds an F_p element.
  Fq(const FqContext* ctx, const Fp& x) : Fq(ctx, static_cast<long long>(x.value())) {}
  static Fq gen(const FqContext* ctx) {
    Fq r(ctx, 0);
    if (ctx->k == 1) {
      r.c_[0] = static_cast<std::uint32_t>((ctx->p - ctx->mod[0]) % ctx->p);
    } else {
      r.c_[1] = 1;
    }
    return r;
  }

  Fq like(long long n) const { return Fq(ctx_, n); }
  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  std::uint64_t characteristic() const { return ctx_->p; }
  std::uint64_t order() const { return ctx_->q; }
  const FqContext* context() const { return ctx_; }
  std::uint32_t coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  bool in_prime_field() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  Fq from_index(std::uint64_t idx) const {
    Fq r(ctx_, 0);
    idx %= ctx_->q;
    for (int i = 0; i < ctx_->k; ++i) {
      r.c_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(idx % ctx_->p);
      idx /= ctx_->p;
    }
    return r;
  }
  std::uint64_t index() const {
    std::uint64_t idx = 0;
    for (int i = ctx_->k; i-- > 0;) idx = idx * ctx_->p + c_[static_cast<std::size_t>(i)];
    return idx;
  }
  Fq inv() const;
  std::string str() const;
  std::size_t hash() const { return static_cast<std::size_t>(index()); }

  friend Fq operator+(const Fq& a, const Fq& b) {
    Fq r = a;
    for (int i = 0; i < a.ctx_->k; ++i) {
      auto s = r.c_[static_cast<std::size_t>(i)] + b.c_[static_cast<std::size_t>(i)];
      r.c_[static_cast<std::size_t>(i)] = s >= a.ctx_->p ? s - a.ctx_->p : s;
    }
    return r;
  }
  friend Fq operator-(const Fq& a, const Fq& b) { return a + (-b); }
  Fq operator-() const {
    Fq r = *this;
    for (int i = 0; i < ctx_->k; ++i) {
      auto& v = r.c_[static_cast<std::size_t>(i)];
      v = v == 0 ? 0 : ctx_->p - v;
    }
    return r;
  }
  friend Fq operator*(const Fq& a, const Fq& b);
  friend Fq operator/(const Fq& a, const Fq& b) { return a * b.inv(); }
  friend bool operator==(const Fq& a, const Fq& b) { return a.c_ == b.c_ && a.ctx_ == b.ctx_; }

 private:
  const FqContext* ctx_ = nullptr;
  std::array<std::uint32_t, 4> c_{};
};

/// Square root in F_q (q odd), if any.
std::optional<Fq> sqrt_fq(const Fq& a);

}  // namespace sheetslice
