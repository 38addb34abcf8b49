#include "sheetslice/field.hpp"
#include "sheetslice/fq.hpp"
#include "sheetslice/poly.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace sheetslice {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % d == 0) return n == d;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Fp Fp::inv() const {
  if (v_ == 0) throw std::domain_error("inverse of zero in F_p");
  long long a = v_, b = p_, x0 = 1, x1 = 0;
  while (b) {
    long long q = a / b;
    long long t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return Fp(p_, x0);
}

bool is_square(const Fp& a) {
  if (a.is_zero() || a.modulus() == 2) return true;
  return a.pow((a.modulus() - 1) / 2).value() == 1;
}

std::optional<Fp> sqrt_fp(const Fp& a) {
  std::uint32_t p = a.modulus();
  if (a.is_zero() || p == 2) return a;
  if (!is_square(a)) return std::nullopt;
  // Tonelli-Shanks
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Fp z(p, smallest_nonresidue(p));
  Fp c = z.pow(q);
  Fp x = a.pow((q + 1) / 2);
  Fp t = a.pow(q);
  int m = s;
  while (!(t == Fp(p, 1))) {
    int i = 0;
    Fp tt = t;
    while (!(tt == Fp(p, 1))) {
      tt = tt * tt;
      ++i;
    }
    Fp b = c;
    for (int j = 0; j < m - i - 1; ++j) b = b * b;
    x = x * b;
    c = b * b;
    t = t * c;
    m = i;
  }
  return x;
}

std::uint32_t smallest_nonresidue(std::uint32_t p) {
  if (p == 2) throw std::invalid_argument("no nonresidue mod 2");
  for (std::uint32_t r = 2; r < p; ++r)
    if (!is_square(Fp(p, r))) return r;
  throw std::invalid_argument("modulus is not an odd prime");
}

std::uint32_t next_prime_congruent(std::uint32_t lower, std::uint32_t m, std::uint32_t r) {
  for (std::uint64_t n = lower + 1;; ++n)
    if (n % m == r && is_prime_u64(n)) return static_cast<std::uint32_t>(n);
}

const FqContext* FqContext::get(std::uint32_t p, int k) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, std::unique_ptr<FqContext>> cache;
  if (k < 1 || k > 4) throw std::invalid_argument("extension degree must be 1..4");
  if (!is_prime_u64(p)) throw std::invalid_argument("characteristic must be prime");
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second.get();
  auto ctx = std::make_unique<FqContext>();
  ctx->p = p;
  ctx->k = k;
  ctx->q = 1;
  for (int i = 0; i < k; ++i) ctx->q *= p;
  if (k == 2 && p != 2) {
    ctx->mod[0] = p - smallest_nonresidue(p);
  } else if (k > 1) {
    Fp z(p, 0);
    std::uint64_t count = ctx->q;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<Fp> c;
      std::uint64_t t = idx;
      for (int i = 0; i < k; ++i) {
        c.push_back(Fp(p, static_cast<long long>(t % p)));
        t /= p;
      }
      c.push_back(Fp(p, 1));
      Poly<Fp> f(z, c);
      if (is_irreducible(f)) {
        for (int i = 0; i < k; ++i) ctx->mod[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)].value();
        break;
      }
    }
  }
  const FqContext* out = ctx.get();
  cache.emplace(key, std::move(ctx));
  return out;
}

Fq operator*(const Fq& a, const Fq& b) {
  const FqContext* ctx = a.ctx_;
  const std::uint64_t p = ctx->p;
  const int k = ctx->k;
  std::uint64_t prod[7] = {0, 0, 0, 0, 0, 0, 0};
  for (int i = 0; i < k; ++i) {
    if (a.c_[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < k; ++j)
      prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(a.c_[static_cast<std::size_t>(i)]) *
                                       b.c_[static_cast<std::size_t>(j)]) % p;
  }
  for (int d = 2 * k - 2; d >= k; --d) {
    std::uint64_t t = prod[d];
    if (t == 0) continue;
    prod[d] = 0;
    for (int i = 0; i < k; ++i)
      prod[d - k + i] = (prod[d - k + i] + (p - ctx->mod[static_cast<std::size_t>(i)]) * t) % p;
  }
  Fq r;
  r.ctx_ = ctx;
  for (int i = 0; i < k; ++i) r.c_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(prod[i]);
  return r;
}

Fq Fq::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero in F_q");
  return power(*this, static_cast<long long>(ctx_->q - 2));
}

std::string Fq::str() const {
  if (ctx_->k == 1 || in_prime_field()) return std::to_string(c_[0]);
  std::string s;
  for (int i = ctx_->k; i-- > 0;) {
    std::uint32_t v = c_[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || v != 1) s += std::to_string(v);
    if (i > 0) s += (v != 1 ? "*t" : "t") + (i > 1 ? "^" + std::to_string(i) : std::string());
  }
  return "(" + s + ")";
}

std::optional<Fq> sqrt_fq(const Fq& a) {
  if (a.is_zero()) return a;
  std::uint64_t q = a.order();
  if (a.characteristic() == 2) return power(a, static_cast<long long>(q / 2));
  Fq one = a.like(1);
  if (!(power(a, static_cast<long long>((q - 1) / 2)) == one)) return std::nullopt;
  std::uint64_t odd = q - 1;
  int s = 0;
  while ((odd & 1) == 0) {
    odd >>= 1;
    ++s;
  }
  Fq z = a;
  for (std::uint64_t idx = 2; idx < q; ++idx) {
    z = a.from_index(idx);
    if (!(power(z, static_cast<long long>((q - 1) / 2)) == one)) break;
  }
  Fq c = power(z, static_cast<long long>(odd));
  Fq x = power(a, static_cast<long long>((odd + 1) / 2));
  Fq t = power(a, static_cast<long long>(odd));
  int m = s;
  while (!(t == one)) {
    int i = 0;
    Fq tt = t;
    while (!(tt == one)) {
      tt = tt * tt;
      ++i;
    }
    Fq b = c;
    for (int j = 0; j < m - i - 1; ++j) b = b * b;
    x = x * b;
    c = b * b;
    t = t * c;
    m = i;
  }
  return x;
}

}  // namespace sheetslice
