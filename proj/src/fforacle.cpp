#include "sheetslice/fforacle.hpp"

#include "sheetslice/sliceverify.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace sheetslice {

using Elt = TableField::Elt;

long long default_budget() {
  if (const char* s = std::getenv("SHEETSLICE_BUDGET")) {
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end != s && v > 0) return static_cast<long long>(v);
  }
  return 10'000'000;
}

// ---- GF(q) ----

namespace {

using IntPoly = std::vector<int>;  // over F_p, constant term first

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

IntPoly poly_mod(IntPoly a, const IntPoly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
    int lead = a.back();
    int shift = static_cast<int>(a.size()) - 1 - dm;
    for (int i = 0; i <= dm; ++i) {
      auto& c = a[static_cast<std::size_t>(shift + i)];
      c = ((c - lead * m[static_cast<std::size_t>(i)]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

bool irreducible_over_fp(const IntPoly& f, int p) {
  const int k = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= k / 2; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      IntPoly g(static_cast<std::size_t>(d + 1), 0);
      long long c = code;
      for (int i = 0; i < d; ++i) {
        g[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
        c /= p;
      }
      g[static_cast<std::size_t>(d)] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

IntPoly digits(std::uint32_t v, std::uint32_t p, int k) {
  IntPoly d(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(v % p);
    v /= p;
  }
  return d;
}

std::uint32_t from_digits(const IntPoly& d, std::uint32_t p) {
  std::uint32_t v = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + static_cast<std::uint32_t>(*it);
  return v;
}

}  // namespace

TableField::TableField(std::uint32_t p, int k) : p_(p), k_(k) {
  q_ = 1;
  for (int i = 0; i < k; ++i) q_ *= p;
  const int ip = static_cast<int>(p);
  if (k == 1) {
    modulus_ = {0, 1};
  } else {
    long long count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (long long code = 0; code < count && modulus_.empty(); ++code) {
      IntPoly f(static_cast<std::size_t>(k + 1), 0);
      long long c = code;
      for (int i = 0; i < k; ++i) {
        f[static_cast<std::size_t>(i)] = static_cast<int>(c % p);
        c /= p;
      }
      f[static_cast<std::size_t>(k)] = 1;
      if (f[0] != 0 && irreducible_over_fp(f, ip)) modulus_ = f;
    }
  }
  add_.assign(static_cast<std::size_t>(q_) * q_, 0);
  mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);
  for (std::uint32_t a = 0; a < q_; ++a) {
    auto da = digits(a, p, k);
    IntPoly na(da.size());
    for (std::size_t i = 0; i < da.size(); ++i) na[i] = (ip - da[i]) % ip;
    neg_[a] = static_cast<Elt>(from_digits(na, p));
    for (std::uint32_t b = 0; b < q_; ++b) {
      auto db = digits(b, p, k);
      IntPoly s(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % ip;
      add_[a * q_ + b] = static_cast<Elt>(from_digits(s, p));
      IntPoly prod(static_cast<std::size_t>(2 * k), 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          prod[static_cast<std::size_t>(i + j)] =
              (prod[static_cast<std::size_t>(i + j)] + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % ip;
      IntPoly r = k == 1 ? poly_mod(prod, {0, 1}, ip) : poly_mod(prod, modulus_, ip);
      if (k == 1) r = {prod[0]};
      r.resize(static_cast<std::size_t>(k), 0);
      mul_[a * q_ + b] = static_cast<Elt>(from_digits(r, p));
    }
  }
  for (std::uint32_t a = 1; a < q_; ++a)
    for (std::uint32_t b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Elt>(b);
  log_.assign(q_, 0);
  for (std::uint32_t g = 1; g < q_; ++g) {
    Elt x = 1;
    std::uint32_t ord = 0;
    do {
      x = mul(x, static_cast<Elt>(g));
      ++ord;
    } while (x != 1);
    if (ord == q_ - 1) {
      gen_ = static_cast<Elt>(g);
      break;
    }
  }
  Elt x = 1;
  for (std::uint32_t e = 0; e + 1 < q_; ++e) {
    log_[x] = static_cast<Elt>(e);
    x = mul(x, gen_);
  }
}

std::shared_ptr<const TableField> TableField::get(std::uint32_t q) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<const TableField>> cache;
  if (q < 2 || q > 256) throw std::invalid_argument("GF(q) tables need 2 <= q <= 256");
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  int k = 0;
  std::uint32_t r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const TableField> f(new TableField(p, k));
  cache.emplace(q, f);
  return f;
}

Elt TableField::inv(Elt a) const {
  if (a == 0) throw std::domain_error("inverse of zero in " + name());
  return inv_[a];
}

Elt TableField::pow(Elt a, long long e) const {
  if (e < 0) return pow(inv(a), -e);
  Elt r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elt TableField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elt>(r);
}

std::vector<Elt> TableField::embedding_from(const TableField& small) const {
  if (small.p_ != p_ || k_ % small.k_ != 0) throw std::invalid_argument(small.name() + " does not embed in " + name());
  std::vector<Elt> emb(small.q_, 0);
  if (small.k_ == 1) {
    for (std::uint32_t a = 0; a < small.q_; ++a) emb[a] = static_cast<Elt>(a);
    return emb;
  }
  int beta = -1;
  for (std::uint32_t b = 0; b < q_ && beta < 0; ++b) {
    Elt acc = 0, pw = 1;
    for (int c : small.modulus_) {
      acc = add(acc, mul(from_int(c), pw));
      pw = mul(pw, static_cast<Elt>(b));
    }
    if (acc == 0) beta = static_cast<int>(b);
  }
  if (beta < 0) throw std::logic_error("no root of the modulus of " + small.name() + " in " + name());
  for (std::uint32_t a = 0; a < small.q_; ++a) {
    auto d = digits(a, p_, small.k_);
    Elt acc = 0, pw = 1;
    for (int c : d) {
      acc = add(acc, mul(from_int(c), pw));
      pw = mul(pw, static_cast<Elt>(beta));
    }
    emb[a] = acc;
  }
  return emb;
}

std::vector<Elt> TableField::roots_of_unity(int n) const {
  std::vector<Elt> r;
  for (std::uint32_t a = 1; a < q_; ++a)
    if (pow(static_cast<Elt>(a), n) == 1) r.push_back(static_cast<Elt>(a));
  return r;
}

std::string TableField::str(Elt a) const {
  if (k_ == 1 || a <= 1) return std::to_string(a);
  return "g^" + std::to_string(log_[a]);
}

std::string TableField::name() const { return "F_" + std::to_string(q_); }

// ---- matrices ----

OMat omat_identity(int n) {
  OMat m;
  m.n = n;
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

OMat omat_mul(const TableField& F, const OMat& A, const OMat& B) {
  OMat C;
  C.n = A.n;
  for (int i = 0; i < A.n; ++i)
    for (int k = 0; k < A.n; ++k) {
      Elt a = A(i, k);
      if (a == 0) continue;
      for (int j = 0; j < A.n; ++j) C(i, j) = F.add(C(i, j), F.mul(a, B(k, j)));
    }
  return C;
}

namespace {

// row reduction in place; returns the rank and multiplies det by the pivots
int eliminate(const TableField& F, std::vector<std::vector<Elt>>& m, Elt* det = nullptr) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  Elt d = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) {
      d = 0;
      continue;
    }
    if (piv != r) {
      std::swap(m[piv], m[r]);
      d = F.neg(d);
    }
    d = F.mul(d, m[r][c]);
    Elt inv = F.inv(m[r][c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Elt f = F.mul(m[i][c], inv);
      for (std::size_t j = c; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
    }
    ++r;
  }
  if (r < rows) d = 0;
  if (det) *det = d;
  return static_cast<int>(r);
}

std::vector<std::vector<Elt>> rows_of(const OMat& A) {
  std::vector<std::vector<Elt>> m(static_cast<std::size_t>(A.n), std::vector<Elt>(static_cast<std::size_t>(A.n)));
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = A(i, j);
  return m;
}

int omat_rank(const TableField& F, const OMat& A) {
  auto m = rows_of(A);
  return eliminate(F, m);
}

OMat omat_sub(const TableField& F, const OMat& A, const OMat& B) {
  OMat C;
  C.n = A.n;
  for (int i = 0; i < A.n * A.n; ++i) C.a[static_cast<std::size_t>(i)] = F.sub(A.a[static_cast<std::size_t>(i)], B.a[static_cast<std::size_t>(i)]);
  return C;
}

OMat omat_scale(const TableField& F, Elt c, const OMat& A) {
  OMat C = A;
  for (int i = 0; i < A.n * A.n; ++i) C.a[static_cast<std::size_t>(i)] = F.mul(c, A.a[static_cast<std::size_t>(i)]);
  return C;
}

OMat omat_add(const TableField& F, const OMat& A, const OMat& B) {
  OMat C;
  C.n = A.n;
  for (int i = 0; i < A.n * A.n; ++i) C.a[static_cast<std::size_t>(i)] = F.add(A.a[static_cast<std::size_t>(i)], B.a[static_cast<std::size_t>(i)]);
  return C;
}

bool omat_is_zero(const OMat& A) {
  for (int i = 0; i < A.n * A.n; ++i)
    if (A.a[static_cast<std::size_t>(i)] != 0) return false;
  return true;
}

OMat omat_diag(const std::vector<Elt>& d) {
  OMat m;
  m.n = static_cast<int>(d.size());
  for (int i = 0; i < m.n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

}  // namespace

Elt omat_det(const TableField& F, const OMat& A) {
  auto m = rows_of(A);
  Elt d = 0;
  eliminate(F, m, &d);
  return d;
}

OMat omat_inverse(const TableField& F, const OMat& A) {
  const int n = A.n;
  std::vector<std::vector<Elt>> m(static_cast<std::size_t>(n), std::vector<Elt>(static_cast<std::size_t>(2 * n), 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = A(i, j);
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1;
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && m[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)] == 0) ++piv;
    if (piv == n) throw std::domain_error("singular matrix over " + F.name());
    std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(c)]);
    Elt inv = F.inv(m[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)]);
    for (auto& x : m[static_cast<std::size_t>(c)]) x = F.mul(x, inv);
    for (int i = 0; i < n; ++i) {
      if (i == c) continue;
      Elt f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int j = 0; j < 2 * n; ++j)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            F.sub(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], F.mul(f, m[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)]));
    }
  }
  OMat r;
  r.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
  return r;
}

OMat omat_map(const OMat& A, const std::vector<Elt>& emb) {
  OMat r = A;
  for (int i = 0; i < A.n * A.n; ++i) r.a[static_cast<std::size_t>(i)] = emb[A.a[static_cast<std::size_t>(i)]];
  return r;
}

std::optional<OMat> omat_restrict(const OMat& A, const std::vector<Elt>& emb) {
  std::vector<int> back(256, -1);
  for (std::size_t s = 0; s < emb.size(); ++s) back[emb[s]] = static_cast<int>(s);
  OMat r = A;
  for (int i = 0; i < A.n * A.n; ++i) {
    int v = back[A.a[static_cast<std::size_t>(i)]];
    if (v < 0) return std::nullopt;
    r.a[static_cast<std::size_t>(i)] = static_cast<Elt>(v);
  }
  return r;
}

std::string omat_str(const TableField& F, const OMat& A) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < A.n; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < A.n; ++j) os << (j ? " " : "") << F.str(A(i, j));
  }
  os << "]";
  return os.str();
}

std::vector<Elt> omat_charpoly(const TableField& F, const OMat& A) {
  const int n = A.n;
  std::vector<Elt> p{1};  // highest degree first
  for (int k = n - 1; k >= 0; --k) {
    const int m = n - 1 - k;
    std::vector<Elt> c(static_cast<std::size_t>(m + 2), 0);
    c[0] = 1;
    c[1] = F.neg(A(k, k));
    std::vector<Elt> v(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = A(k + 1 + i, k);
    for (int t = 0; t < m; ++t) {
      Elt dot = 0;
      for (int i = 0; i < m; ++i) dot = F.add(dot, F.mul(A(k, k + 1 + i), v[static_cast<std::size_t>(i)]));
      c[static_cast<std::size_t>(2 + t)] = F.neg(dot);
      std::vector<Elt> nv(static_cast<std::size_t>(m), 0);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          nv[static_cast<std::size_t>(i)] = F.add(nv[static_cast<std::size_t>(i)], F.mul(A(k + 1 + i, k + 1 + j), v[static_cast<std::size_t>(j)]));
      v = nv;
    }
    std::vector<Elt> np(static_cast<std::size_t>(m + 2), 0);
    for (int i = 0; i < m + 2; ++i)
      for (int j = 0; j <= i && j < m + 1; ++j)
        np[static_cast<std::size_t>(i)] = F.add(np[static_cast<std::size_t>(i)], F.mul(c[static_cast<std::size_t>(i - j)], p[static_cast<std::size_t>(j)]));
    p = np;
  }
  std::reverse(p.begin(), p.end());
  return p;
}

// ---- Jordan data ----

namespace {

using EPoly = std::vector<Elt>;  // constant term first

void etrim(EPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// quotient and remainder by a monic divisor
std::pair<EPoly, EPoly> edivmod(const TableField& F, EPoly a, const EPoly& m) {
  etrim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  EPoly quo(a.size() >= m.size() ? a.size() - m.size() + 1 : 0, 0);
  while (!a.empty() && static_cast<int>(a.size()) - 1 >= dm) {
    Elt lead = a.back();
    int shift = static_cast<int>(a.size()) - 1 - dm;
    quo[static_cast<std::size_t>(shift)] = lead;
    for (int i = 0; i <= dm; ++i) {
      auto& c = a[static_cast<std::size_t>(shift + i)];
      c = F.sub(c, F.mul(lead, m[static_cast<std::size_t>(i)]));
    }
    etrim(a);
  }
  return {quo, a};
}

Elt eval(const TableField& F, const EPoly& f, Elt x) {
  Elt r = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = F.add(F.mul(r, x), *it);
  return r;
}

OMat eval_at(const TableField& F, const EPoly& f, const OMat& A) {
  OMat r;
  r.n = A.n;
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = omat_add(F, omat_mul(F, r, A), omat_scale(F, *it, omat_identity(A.n)));
  return r;
}

std::vector<std::pair<EPoly, int>> factor_charpoly(const TableField& F, EPoly f) {
  std::vector<std::pair<EPoly, int>> out;
  auto divide_out = [&](const EPoly& g) {
    int mult = 0;
    while (f.size() > g.size() - 1) {
      auto [quo, rem] = edivmod(F, f, g);
      if (!rem.empty()) break;
      f = quo;
      ++mult;
    }
    if (mult) out.emplace_back(g, mult);
  };
  for (std::uint32_t r = 0; r < F.q() && f.size() > 1; ++r)
    if (eval(F, f, static_cast<Elt>(r)) == 0) divide_out(EPoly{F.neg(static_cast<Elt>(r)), 1});
  if (f.size() >= 5) {
    for (std::uint32_t c = 1; c < F.q() && f.size() >= 5; ++c)
      for (std::uint32_t b = 0; b < F.q() && f.size() >= 5; ++b) {
        EPoly g{static_cast<Elt>(c), static_cast<Elt>(b), 1};
        bool has_root = false;
        for (std::uint32_t r = 0; r < F.q() && !has_root; ++r) has_root = eval(F, g, static_cast<Elt>(r)) == 0;
        if (!has_root) divide_out(g);
      }
  }
  if (f.size() > 6) throw std::invalid_argument("characteristic polynomials above degree 5 are not factored");
  if (f.size() > 1) out.emplace_back(f, 1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

OracleJordan oracle_jordan(const TableField& F, const OMat& A) {
  OracleJordan res;
  std::ostringstream key;
  for (const auto& [f, mult] : factor_charpoly(F, omat_charpoly(F, A))) {
    const int deg = static_cast<int>(f.size()) - 1;
    OMat M = eval_at(F, f, A), P = omat_identity(A.n);
    std::vector<int> dims{0};
    for (int j = 1; j <= mult; ++j) {
      P = omat_mul(F, P, M);
      dims.push_back(A.n - omat_rank(F, P));
    }
    std::vector<int> parts;
    for (int j = 1; j <= mult; ++j) {
      int at_least_j = (dims[static_cast<std::size_t>(j)] - dims[static_cast<std::size_t>(j - 1)]) / deg;
      int at_least_next = j < mult ? (dims[static_cast<std::size_t>(j + 1)] - dims[static_cast<std::size_t>(j)]) / deg : 0;
      for (int c = 0; c < at_least_j - at_least_next; ++c) parts.push_back(j);
    }
    std::sort(parts.rbegin(), parts.rend());
    EigenData e;
    e.degree = deg;
    e.partition = parts;
    if (deg == 1 && f[0] == F.neg(1)) e.sign = 1;
    else if (deg == 1 && f[0] == 1) e.sign = -1;
    res.data.push_back(e);
    key << "{";
    for (std::size_t i = 0; i < f.size(); ++i) key << (i ? "," : "") << F.str(f[i]);
    key << "}(";
    for (std::size_t i = 0; i < parts.size(); ++i) key << (i ? "," : "") << parts[i];
    key << ")";
  }
  res.key = key.str();
  return res;
}

// ---- groups ----

long long FiniteGroup::order_formula(char type, int rank, std::uint32_t q) {
  auto pw = [](long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  const long long Q = q;
  if (type == 'A') {
    const int N = rank + 1;
    long long r = pw(Q, N * (N - 1) / 2);
    for (int i = 2; i <= N; ++i) r *= pw(Q, i) - 1;
    return r;
  }
  if ((type == 'B' || type == 'C') && rank == 2) return pw(Q, 4) * (Q * Q - 1) * (pw(Q, 4) - 1);
  throw std::invalid_argument(std::string("the oracle covers A1, A2, B2 and C2, not ") + type + std::to_string(rank));
}

std::string FiniteGroup::name() const {
  std::string f = "(F_" + std::to_string(q()) + ")";
  if (type_ == 'A') return "SL" + std::to_string(N_) + f;
  if (type_ == 'C') return "Sp" + std::to_string(N_) + f;
  return "SO" + std::to_string(N_) + f;
}

int FiniteGroup::dimension() const {
  if (type_ == 'A') return N_ * N_ - 1;
  return static_cast<int>(roots_.size()) * 2 + rank_;
}

int FiniteGroup::ambient_dim() const { return type_ == 'A' ? N_ : rank_; }

std::vector<int> FiniteGroup::weight(int j) const {
  std::vector<int> w(static_cast<std::size_t>(ambient_dim()), 0);
  if (type_ == 'A') {
    w[static_cast<std::size_t>(j)] = 1;
  } else if (j < rank_) {
    w[static_cast<std::size_t>(j)] = 1;
  } else if (j >= N_ - rank_) {
    w[static_cast<std::size_t>(N_ - 1 - j)] = -1;
  }
  return w;
}

std::uint64_t FiniteGroup::encode(const OMat& g) const {
  std::uint64_t c = 0;
  const std::uint64_t Q = q();
  for (int i = N_ * N_ - 1; i >= 0; --i) c = c * Q + g.a[static_cast<std::size_t>(i)];
  return c;
}

OMat FiniteGroup::decode(std::uint64_t code) const {
  OMat g;
  g.n = N_;
  const std::uint64_t Q = q();
  for (int i = 0; i < N_ * N_; ++i) {
    g.a[static_cast<std::size_t>(i)] = static_cast<Elt>(code % Q);
    code /= Q;
  }
  return g;
}

namespace {

std::uint64_t mix(std::uint64_t x) { return x * 0x9E3779B97F4A7C15ULL; }

}  // namespace

long long FiniteGroup::index_of(std::uint64_t code) const {
  const int bits = 64 - std::countr_zero(mask_ + 1);
  std::uint64_t h = mix(code) >> bits;
  while (true) {
    std::uint32_t v = table_[h];
    if (v == std::numeric_limits<std::uint32_t>::max()) return -1;
    if (elements_[v] == code) return v;
    h = (h + 1) & mask_;
  }
}

bool FiniteGroup::in_group(const TableField& F, const OMat& g) const {
  if (type_ != 'A') {
    // g^T J g == J
    for (int i = 0; i < N_; ++i)
      for (int j = 0; j < N_; ++j) {
        Elt s = 0;
        for (int a = 0; a < N_; ++a) {
          int Ja = J_[static_cast<std::size_t>(a * N_ + (N_ - 1 - a))];
          Elt ga = g(a, i);
          if (ga == 0) continue;
          s = F.add(s, F.mul(F.mul(ga, F.from_int(Ja)), g(N_ - 1 - a, j)));
        }
        if (s != F.from_int(J_[static_cast<std::size_t>(i * N_ + j)])) return false;
      }
    if (type_ == 'C') return true;
  }
  return omat_det(F, g) == 1;
}

OMat FiniteGroup::lie_root_vector(const TableField& F, const std::vector<int>& alpha) const {
  for (int a = 0; a < N_; ++a)
    for (int b = 0; b < N_; ++b) {
      if (a == b) continue;
      auto wa = weight(a), wb = weight(b);
      bool match = true;
      for (std::size_t i = 0; i < wa.size(); ++i) match = match && wa[i] - wb[i] == alpha[i];
      if (!match) continue;
      // Y = E_ab - J^T E_ba J
      std::vector<int> Y(static_cast<std::size_t>(N_ * N_), 0);
      Y[static_cast<std::size_t>(a * N_ + b)] += 1;
      if (type_ != 'A') {
        for (int i = 0; i < N_; ++i)
          for (int j = 0; j < N_; ++j)
            Y[static_cast<std::size_t>(i * N_ + j)] -= J_[static_cast<std::size_t>(b * N_ + i)] * J_[static_cast<std::size_t>(a * N_ + j)];
      }
      int lead = Y[static_cast<std::size_t>(a * N_ + b)];
      if (lead == 0) continue;
      OMat X;
      X.n = N_;
      Elt il = F.inv(F.from_int(lead));
      for (int i = 0; i < N_ * N_; ++i) X.a[static_cast<std::size_t>(i)] = F.mul(F.from_int(Y[static_cast<std::size_t>(i)]), il);
      return X;
    }
  throw std::logic_error("no root vector");
}

OMat FiniteGroup::root_element(const TableField& F, const std::vector<int>& alpha, Elt c) const {
  OMat X = lie_root_vector(F, alpha);
  OMat r = omat_identity(N_), term = omat_identity(N_);
  for (int k = 1; k <= N_; ++k) {
    term = omat_mul(F, term, X);
    if (omat_is_zero(term)) break;
    if (static_cast<std::uint32_t>(k) % F.p() == 0) throw std::domain_error("root element needs k! invertible");
    term = omat_scale(F, F.mul(c, F.inv(F.from_int(k))), term);
    r = omat_add(F, r, term);
  }
  return r;
}

void FiniteGroup::build_roots() {
  const TableField& F = *field_;
  for (int a = 0; a < N_; ++a)
    for (int b = a + 1; b < N_; ++b) {
      auto wa = weight(a), wb = weight(b);
      std::vector<int> v(wa.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = wa[i] - wb[i];
      if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;
      bool seen = false;
      for (const auto& r : roots_) seen = seen || r.vec == v;
      if (seen) continue;
      try {
        lie_root_vector(F, v);
      } catch (const std::logic_error&) {
        continue;
      }
      roots_.push_back(Root{v, a, b});
    }
}

FiniteGroup FiniteGroup::enumerate(char type, int rank, std::uint32_t q, long long budget) {
  FiniteGroup G;
  G.type_ = type;
  G.rank_ = rank;
  if (type == 'A' && (rank < 1 || rank > 4)) throw std::invalid_argument("the oracle covers SL_N for N <= 5");
  if (type != 'A' && !((type == 'B' || type == 'C') && rank == 2))
    throw std::invalid_argument(std::string("the oracle covers A1, A2, B2 and C2, not ") + type + std::to_string(rank));
  G.field_ = TableField::get(q);
  if (type != 'A' && G.field_->p() == 2)
    throw std::invalid_argument(std::string("characteristic 2 is bad for type ") + type + "; only type A is allowed there");
  G.N_ = type == 'A' ? rank + 1 : (type == 'C' ? 2 * rank : 2 * rank + 1);
  const long long est = order_formula(type, rank, q);
  {
    long double cells = 1;
    for (int i = 0; i < G.N_ * G.N_; ++i) cells *= q;
    if (cells >= 1.8e19L) throw BudgetExceeded(G.name() + ": matrices do not fit the 64-bit encoding", est);
  }
  if (est > budget)
    throw BudgetExceeded(G.name() + ": " + std::to_string(est) + " elements exceeds the budget of " + std::to_string(budget) +
                             " (SHEETSLICE_BUDGET)",
                         est);
  if (type != 'A') {
    G.J_.assign(static_cast<std::size_t>(G.N_ * G.N_), 0);
    for (int i = 0; i < G.N_; ++i) G.J_[static_cast<std::size_t>(i * G.N_ + G.N_ - 1 - i)] = (type == 'C' && i >= G.N_ / 2) ? -1 : 1;
  }
  G.build_roots();
  const TableField& F = *G.field_;
  std::vector<std::vector<int>> simple;
  for (const auto& r : G.roots_) {
    bool decomposable = false;
    for (const auto& s : G.roots_)
      for (const auto& t : G.roots_) {
        std::vector<int> sum(s.vec.size());
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = s.vec[i] + t.vec[i];
        decomposable = decomposable || sum == r.vec;
      }
    if (!decomposable) simple.push_back(r.vec);
  }
  for (const auto& s : simple)
    for (int sign : {1, -1}) {
      std::vector<int> a = s;
      for (auto& x : a) x *= sign;
      std::uint32_t basis = 1;
      for (int i = 0; i < F.degree(); ++i, basis *= F.p()) G.gens_.push_back(G.root_element(F, a, static_cast<Elt>(basis)));
    }
  if (type == 'B') {
    // root subgroups only reach the spinor kernel
    OMat t = omat_identity(G.N_);
    t(0, 0) = F.generator();
    t(G.N_ - 1, G.N_ - 1) = F.inv(F.generator());
    G.gens_.push_back(t);
  }

  // breadth-first closure with an open-addressing set of codes
  int bits = 4;
  while ((1ULL << bits) < static_cast<std::uint64_t>(est) * 3 / 2 + 16) ++bits;
  std::vector<std::uint64_t> seen(1ULL << bits, 0);
  const std::uint64_t mask = (1ULL << bits) - 1;
  auto insert = [&](std::uint64_t code) {
    std::uint64_t h = mix(code) >> (64 - bits);
    while (seen[h] != 0) {
      if (seen[h] == code) return false;
      h = (h + 1) & mask;
    }
    seen[h] = code;
    return true;
  };
  std::vector<std::uint64_t> elems;
  elems.reserve(static_cast<std::size_t>(est));
  OMat id = omat_identity(G.N_);
  insert(G.encode(id));
  elems.push_back(G.encode(id));
  for (std::size_t head = 0; head < elems.size(); ++head) {
    OMat g = G.decode(elems[head]);
    for (const auto& s : G.gens_) {
      std::uint64_t c = G.encode(omat_mul(F, g, s));
      if (insert(c)) {
        elems.push_back(c);
        if (static_cast<long long>(elems.size()) > est) throw std::logic_error(G.name() + ": closure exceeds the order formula");
      }
    }
  }
  std::vector<std::uint64_t>().swap(seen);
  std::sort(elems.begin(), elems.end());
  G.elements_ = std::move(elems);
  G.mask_ = mask;
  G.table_.assign(1ULL << bits, std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < G.elements_.size(); ++i) {
    std::uint64_t h = mix(G.elements_[i]) >> (64 - bits);
    while (G.table_[h] != std::numeric_limits<std::uint32_t>::max()) h = (h + 1) & mask;
    G.table_[h] = static_cast<std::uint32_t>(i);
  }
  return G;
}

// ---- Bruhat cells and Weyl data ----

std::vector<int> bruhat_cell(const TableField& F, const OMat& g) {
  OMat m = g;
  const int n = g.n;
  std::vector<int> perm(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int j = 0; j < n; ++j) {
    int piv = -1;
    for (int i = n - 1; i >= 0 && piv < 0; --i)
      if (!used[static_cast<std::size_t>(i)] && m(i, j) != 0) piv = i;
    if (piv < 0) throw std::domain_error("singular matrix has no Bruhat cell");
    used[static_cast<std::size_t>(piv)] = true;
    perm[static_cast<std::size_t>(j)] = piv;
    Elt inv = F.inv(m(piv, j));
    for (int r = 0; r < piv; ++r) {
      if (used[static_cast<std::size_t>(r)] || m(r, j) == 0) continue;
      Elt f = F.mul(m(r, j), inv);
      for (int c = j; c < n; ++c) m(r, c) = F.sub(m(r, c), F.mul(f, m(piv, c)));
    }
  }
  return perm;
}

bool bruhat_leq(const std::vector<int>& u, const std::vector<int>& v) {
  const int n = static_cast<int>(u.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int cu = 0, cv = 0;
      for (int k = 0; k <= j; ++k) {
        cu += u[static_cast<std::size_t>(k)] >= i;
        cv += v[static_cast<std::size_t>(k)] >= i;
      }
      if (cu > cv) return false;
    }
  return true;
}

namespace {

int int_rank(std::vector<std::vector<long long>> m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      long long f = m[i][c], g = m[r][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] * g - m[r][j] * f;
      long long d = 0;
      for (auto x : m[i]) d = std::gcd(d, x);
      if (d > 1)
        for (auto& x : m[i]) x /= d;
    }
    ++r;
  }
  return static_cast<int>(r);
}

std::vector<int> apply_weyl(const std::vector<std::vector<int>>& M, const std::vector<int>& v) {
  std::vector<int> r(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += M[i][j] * v[j];
  return r;
}

}  // namespace

OracleWeyl oracle_weyl(const FiniteGroup& G, const std::vector<int>& perm) {
  OracleWeyl w;
  w.perm = perm;
  const int d = G.ambient_dim();
  w.ambient.assign(static_cast<std::size_t>(d), std::vector<int>(static_cast<std::size_t>(d), 0));
  for (int i = 0; i < d; ++i) {
    int pos = -1;
    for (int j = 0; j < G.size() && pos < 0; ++j) {
      auto wt = G.weight(j);
      bool unit = wt[static_cast<std::size_t>(i)] == 1;
      for (int k = 0; k < d; ++k)
        if (k != i && wt[static_cast<std::size_t>(k)] != 0) unit = false;
      if (unit) pos = j;
    }
    auto img = G.weight(perm[static_cast<std::size_t>(pos)]);
    for (int k = 0; k < d; ++k) w.ambient[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = img[static_cast<std::size_t>(k)];
  }
  for (const auto& r : G.positive_roots()) {
    auto img = apply_weyl(w.ambient, r.vec);
    for (auto& x : img) x = -x;
    for (const auto& s : G.positive_roots())
      if (s.vec == img) ++w.length;
  }
  std::vector<std::vector<long long>> m(static_cast<std::size_t>(d), std::vector<long long>(static_cast<std::size_t>(d), 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i == j) - w.ambient[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  w.minus_rank = int_rank(m);
  return w;
}

std::string OracleWeyl::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < ambient.size(); ++i) {
    for (std::size_t k = 0; k < ambient.size(); ++k)
      if (ambient[k][i] != 0) os << (i ? "," : "") << (ambient[k][i] < 0 ? "-" : "") << k + 1;
  }
  os << "]";
  return os.str();
}

WeylElement to_catalog_weyl(const FiniteGroup& G, const OracleWeyl& w) {
  auto rs = RootSystem::build(G.type(), G.rank());
  return weyl_from_ambient(*rs, w.ambient);
}

// ---- classes ----

int oracle_centralizer_dimension(const FiniteGroup& G, const OMat& g) {
  const TableField& F = G.field();
  const int N = G.size();
  std::vector<OMat> basis;
  if (G.type() == 'A') {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        OMat E;
        E.n = N;
        E(a, b) = 1;
        basis.push_back(E);
      }
  } else {
    // X = J^T A with A symmetric (Sp) or skew (SO)
    const bool sym = G.type() == 'C';
    OMat JT;
    JT.n = N;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) JT(i, j) = F.from_int(G.form()[static_cast<std::size_t>(j * N + i)]);
    for (int a = 0; a < N; ++a)
      for (int b = a; b < N; ++b) {
        if (a == b && !sym) continue;
        OMat A;
        A.n = N;
        A(a, b) = 1;
        A(b, a) = sym ? (a == b ? 1 : 1) : F.neg(1);
        basis.push_back(omat_mul(F, JT, A));
      }
  }
  std::vector<std::vector<Elt>> m(static_cast<std::size_t>(N * N), std::vector<Elt>(basis.size(), 0));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    OMat c = omat_sub(F, omat_mul(F, g, basis[k]), omat_mul(F, basis[k], g));
    for (int e = 0; e < N * N; ++e) m[static_cast<std::size_t>(e)][k] = c.a[static_cast<std::size_t>(e)];
  }
  int dim = static_cast<int>(basis.size()) - eliminate(F, m);
  return G.type() == 'A' ? dim - 1 : dim;
}

ClassData conjugacy_classes(const FiniteGroup& G) {
  const TableField& F = G.field();
  ClassData cd;
  const auto& el = G.elements();
  cd.class_of.assign(el.size(), -1);
  std::vector<OMat> ginv;
  for (const auto& s : G.generators()) ginv.push_back(omat_inverse(F, s));
  std::vector<std::uint32_t> stack;
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (cd.class_of[i] >= 0) continue;
    const int c = static_cast<int>(cd.classes.size());
    OracleClass oc;
    oc.index = c;
    oc.rep = el[i];
    cd.class_of[i] = c;
    stack.assign(1, static_cast<std::uint32_t>(i));
    long long size = 0;
    while (!stack.empty()) {
      OMat h = G.decode(el[stack.back()]);
      stack.pop_back();
      ++size;
      for (std::size_t k = 0; k < ginv.size(); ++k) {
        long long j = G.index_of(omat_mul(F, omat_mul(F, G.generators()[k], h), ginv[k]));
        if (j < 0) throw std::logic_error("conjugate left the group");
        if (cd.class_of[static_cast<std::size_t>(j)] < 0) {
          cd.class_of[static_cast<std::size_t>(j)] = c;
          stack.push_back(static_cast<std::uint32_t>(j));
        }
      }
    }
    oc.size = size;
    cd.classes.push_back(oc);
  }
  std::map<std::string, int> geo;
  auto ctx = GroupContext::make(G.type(), G.rank());
  for (auto& oc : cd.classes) {
    OMat rep = G.decode(oc.rep);
    auto jd = oracle_jordan(F, rep);
    oc.jordan = jd.key;
    auto it = geo.find(jd.key);
    if (it == geo.end()) {
      it = geo.emplace(jd.key, static_cast<int>(cd.geometric.size())).first;
      cd.geometric.push_back(jd.key);
    }
    oc.geometric = it->second;
    oc.dimension = G.dimension() - oracle_centralizer_dimension(G, rep);
    try {
      auto v = classify_spherical(ctx, jd.data);
      oc.spherical = v.spherical;
      oc.spherical_kind = v.kind;
    } catch (const std::exception& e) {
      oc.spherical_kind = std::string("unclassified: ") + e.what();
    }
    cd.class_size_sum += oc.size;
    if (G.order() % oc.size != 0) cd.sizes_divide = false;
  }
  // cells, counted per class through a dense index of permutations
  const int N = G.size();
  int span = 1;
  for (int i = 0; i < N; ++i) span *= N;
  std::vector<int> dense(static_cast<std::size_t>(span), -1);
  std::vector<std::vector<int>> perms;
  std::vector<std::vector<long long>> counts(cd.classes.size());
  for (std::size_t i = 0; i < el.size(); ++i) {
    auto p = bruhat_cell(F, G.decode(el[i]));
    int code = 0;
    for (int j = N - 1; j >= 0; --j) code = code * N + p[static_cast<std::size_t>(j)];
    int& d = dense[static_cast<std::size_t>(code)];
    if (d < 0) {
      d = static_cast<int>(perms.size());
      perms.push_back(p);
    }
    auto& cnt = counts[static_cast<std::size_t>(cd.class_of[i])];
    if (cnt.size() <= static_cast<std::size_t>(d)) cnt.resize(static_cast<std::size_t>(d) + 1, 0);
    ++cnt[static_cast<std::size_t>(d)];
  }
  for (std::size_t c = 0; c < cd.classes.size(); ++c)
    for (std::size_t d = 0; d < counts[c].size(); ++d)
      if (counts[c][d]) {
        cd.classes[c].cells[perms[d]] += counts[c][d];
        cd.cell_sizes[perms[d]] += counts[c][d];
      }
  return cd;
}

WClassResult w_of_class(const ClassData& cd, int c) {
  WClassResult r;
  for (const auto& [w, n] : cd.classes[static_cast<std::size_t>(c)].cells) r.incident.push_back(w);
  for (const auto& u : r.incident) {
    bool below = false;
    for (const auto& v : r.incident) below = below || (v != u && bruhat_leq(u, v));
    if (!below) r.maximal.push_back(u);
  }
  r.unique = r.maximal.size() == 1;
  if (r.unique) r.w = r.maximal[0];
  return r;
}

DimensionRow verify_dimension_formula(const FiniteGroup& G, const ClassData& cd, int c) {
  const auto& oc = cd.classes[static_cast<std::size_t>(c)];
  DimensionRow row;
  row.class_index = c;
  row.rep = omat_str(G.field(), G.decode(oc.rep));
  row.size = oc.size;
  row.jordan = oc.jordan;
  row.dimension = oc.dimension;
  row.spherical = oc.spherical;
  row.spherical_kind = oc.spherical_kind;
  auto wc = w_of_class(cd, c);
  row.unique_max = wc.unique;
  row.inequality = true;
  for (const auto& w : wc.incident) {
    auto ow = oracle_weyl(G, w);
    if (oc.dimension < ow.length + ow.minus_rank) row.inequality = false;
  }
  std::string names;
  for (std::size_t k = 0; k < wc.maximal.size(); ++k) {
    auto ow = oracle_weyl(G, wc.maximal[k]);
    names += (k ? "|" : "") + ow.str();
    if (k == 0) {
      row.length = ow.length;
      row.minus_rank = ow.minus_rank;
    }
    if (oc.dimension == ow.length + ow.minus_rank) row.equality_at_wO = true;
  }
  row.w_O = names;
  return row;
}

namespace {

bool is_prime(std::uint32_t q) {
  for (std::uint32_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return q >= 2;
}

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<std::unique_ptr<SliceFamily>> catalog_families(const FiniteGroup& G, std::vector<SheetDescriptor>& sheets) {
  std::vector<std::unique_ptr<SliceFamily>> fams;
  if (!is_prime(G.q())) return fams;
  sheets = sheet_catalog(G.type(), G.rank());
  for (const auto& d : sheets) {
    try {
      fams.push_back(make_family(d, G.q()));
    } catch (const std::exception&) {
      fams.push_back(nullptr);
    }
  }
  return fams;
}

}  // namespace

bool OracleSuite::ok() const {
  if (order != order_formula || !sizes_divide || !bruhat_partition || !catalog_mismatches.empty()) return false;
  return std::all_of(rows.begin(), rows.end(), [](const DimensionRow& r) { return r.ok(); });
}

OracleSuite run_oracle_suite(const FiniteGroup& G, const ClassData& cd) {
  OracleSuite s;
  s.group = G.name();
  s.order = G.order();
  s.order_formula = FiniteGroup::order_formula(G.type(), G.rank(), G.q());
  s.classes = static_cast<int>(cd.classes.size());
  s.geometric_classes = static_cast<int>(cd.geometric.size());
  s.sizes_divide = cd.sizes_divide && cd.class_size_sum == G.order();
  const long long borel = ipow(G.q() - 1, G.rank()) * ipow(G.q(), static_cast<int>(G.positive_roots().size()));
  long long total = 0;
  for (const auto& [w, n] : cd.cell_sizes) {
    total += n;
    auto ow = oracle_weyl(G, w);
    if (n != borel * ipow(G.q(), ow.length))
      s.cell_failures.push_back("cell " + ow.str() + ": " + std::to_string(n) + " elements, expected " + std::to_string(borel * ipow(G.q(), ow.length)));
  }
  const long long weyl_order = G.type() == 'A' ? ipow(1, 0) * [&] {
    long long f = 1;
    for (int i = 2; i <= G.size(); ++i) f *= i;
    return f;
  }() : 8;
  if (static_cast<long long>(cd.cell_sizes.size()) != weyl_order)
    s.cell_failures.push_back(std::to_string(cd.cell_sizes.size()) + " cells, expected " + std::to_string(weyl_order));
  s.bruhat_partition = total == G.order() && s.cell_failures.empty();
  for (int c = 0; c < s.classes; ++c) s.rows.push_back(verify_dimension_formula(G, cd, c));

  std::vector<SheetDescriptor> sheets;
  auto fams = catalog_families(G, sheets);
  for (int c = 0; c < s.classes && !fams.empty(); ++c) {
    const auto& oc = cd.classes[static_cast<std::size_t>(c)];
    if (!oc.spherical) continue;
    auto wc = w_of_class(cd, c);
    if (!wc.unique) continue;
    auto lib = to_library(G, G.decode(oc.rep));
    WeylElement w = to_catalog_weyl(G, oracle_weyl(G, wc.w));
    for (std::size_t k = 0; k < sheets.size(); ++k) {
      if (!fams[k] || !fams[k]->member(lib).member) continue;
      ++s.catalog_compared;
      if (!(w == sheets[k].w))
        s.catalog_mismatches.push_back("class " + std::to_string(c) + " in sheet " + sheets[k].label + ": w_O " +
                                       oracle_weyl(G, wc.w).str() + " differs from w_S");
    }
  }
  return s;
}

// ---- slices ----

namespace {

// basis of ker(1 + w) on the cocharacter lattice of the diagonal torus
std::vector<std::vector<int>> anti_fixed_basis(const std::vector<std::vector<int>>& M) {
  const std::size_t d = M.size();
  std::vector<std::vector<int>> basis;
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t j = 0;
    int sigma = 0;
    for (std::size_t k = 0; k < d; ++k)
      if (M[k][i] != 0) {
        j = k;
        sigma = M[k][i];
      }
    std::vector<int> v(d, 0);
    if (j == i && sigma == -1) {
      v[i] = 1;
      basis.push_back(v);
    } else if (j > i) {
      v[i] = 1;
      v[j] = -sigma;
      basis.push_back(v);
    }
  }
  return basis;
}

OMat cochar(const FiniteGroup& G, const TableField& F, const std::vector<int>& v, Elt c) {
  std::vector<Elt> d(static_cast<std::size_t>(G.size()));
  for (int j = 0; j < G.size(); ++j) {
    auto wt = G.weight(j);
    int e = 0;
    for (std::size_t i = 0; i < v.size(); ++i) e += wt[i] * v[i];
    d[static_cast<std::size_t>(j)] = F.pow(c, e);
  }
  return omat_diag(d);
}

bool diag_fixed(const OMat& D, const std::vector<int>& perm) {
  for (std::size_t j = 0; j < perm.size(); ++j)
    if (D(perm[j], perm[j]) != D(static_cast<int>(j), static_cast<int>(j))) return false;
  return true;
}

// y in wdot T^w U^w (or U when full_u), structurally
bool in_slice(const TableField& F, const OMat& y, const OMat& wdot, const std::vector<int>& perm, bool full_u) {
  OMat z = omat_mul(F, omat_inverse(F, wdot), y);
  const int n = y.n;
  std::vector<Elt> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j)
      if (z(i, j) != 0) return false;
    if (z(i, i) == 0) return false;
    d[static_cast<std::size_t>(i)] = z(i, i);
  }
  OMat D = omat_diag(d);
  if (!diag_fixed(D, perm)) return false;
  if (full_u) return true;
  OMat u = omat_mul(F, omat_inverse(F, D), z);
  OMat c = omat_mul(F, omat_mul(F, wdot, u), omat_inverse(F, wdot));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (c(i, j) != 0) return false;
  return true;
}

std::vector<int> monomial_perm(const OMat& m) {
  std::vector<int> perm(static_cast<std::size_t>(m.n), -1);
  for (int j = 0; j < m.n; ++j)
    for (int i = 0; i < m.n; ++i)
      if (m(i, j) != 0) perm[static_cast<std::size_t>(j)] = i;
  return perm;
}

int lib_index(const FiniteGroup& G, int j) {
  const int N = G.size(), n = G.rank();
  if (G.type() == 'A') return j;
  if (G.type() == 'C') return j < n ? j : n + (N - 1 - j);
  if (j < n) return 1 + j;
  if (j == n) return 0;
  return 1 + n + (N - 1 - j);
}

}  // namespace

Matrix<Fp> to_library(const FiniteGroup& G, const OMat& g) {
  if (!is_prime(G.q())) throw std::invalid_argument("catalog coordinates need a prime field");
  const auto N = static_cast<std::size_t>(G.size());
  Matrix<Fp> m(N, N, Fp(G.q(), 0));
  for (int a = 0; a < G.size(); ++a)
    for (int b = 0; b < G.size(); ++b)
      m(static_cast<std::size_t>(lib_index(G, a)), static_cast<std::size_t>(lib_index(G, b))) = Fp(G.q(), g(a, b));
  return m;
}

OMat from_library(const FiniteGroup& G, const Matrix<Fp>& g) {
  OMat m;
  m.n = G.size();
  for (int a = 0; a < G.size(); ++a)
    for (int b = 0; b < G.size(); ++b)
      m(a, b) = static_cast<Elt>(g(static_cast<std::size_t>(lib_index(G, a)), static_cast<std::size_t>(lib_index(G, b))).value());
  return m;
}

OMat oracle_wdot(const FiniteGroup& G, const std::vector<int>& perm) {
  const TableField& F = G.field();
  const int N = G.size();
  for (int mask = 0; mask < (1 << N); ++mask) {
    OMat m;
    m.n = N;
    for (int j = 0; j < N; ++j) m(perm[static_cast<std::size_t>(j)], j) = (mask >> j) & 1 ? F.neg(1) : 1;
    if (G.in_group(F, m)) return m;
  }
  throw std::logic_error("no monomial representative in " + G.name());
}

OMat catalog_wdot(const FiniteGroup& G, const SheetDescriptor& d) {
  const TableField& F = G.field();
  auto rep = slice_representative(d).wdot;
  OMat m;
  m.n = G.size();
  for (int a = 0; a < G.size(); ++a)
    for (int b = 0; b < G.size(); ++b) {
      const auto& q = rep(static_cast<std::size_t>(lib_index(G, a)), static_cast<std::size_t>(lib_index(G, b))).q();
      m(a, b) = F.mul(F.from_int(q.get_num().get_si()), F.inv(F.from_int(q.get_den().get_si())));
    }
  return m;
}

SliceSet slice_set(const FiniteGroup& G, const TableField& F, const std::vector<int>& perm, const OMat& wdot) {
  SliceSet s;
  s.perm = perm;
  s.wdot = wdot;
  const int N = G.size();
  const auto M = oracle_weyl(G, perm).ambient;
  // torus of G: SL by N-1 free entries and the determinant, Sp/SO by the first n entries
  const int free = G.type() == 'A' ? N - 1 : G.rank();
  const Elt target = G.type() == 'A' ? F.inv(omat_det(F, wdot)) : 1;
  std::vector<Elt> t(static_cast<std::size_t>(free), 1);
  const std::uint32_t Q = F.q();
  std::vector<std::uint32_t> idx(static_cast<std::size_t>(free), 0);
  while (true) {
    for (int i = 0; i < free; ++i) t[static_cast<std::size_t>(i)] = F.pow(F.generator(), idx[static_cast<std::size_t>(i)]);
    std::vector<Elt> d(static_cast<std::size_t>(N), 1);
    if (G.type() == 'A') {
      Elt prod = 1;
      for (int i = 0; i < free; ++i) {
        d[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i)];
        prod = F.mul(prod, t[static_cast<std::size_t>(i)]);
      }
      d[static_cast<std::size_t>(N - 1)] = F.mul(target, F.inv(prod));
    } else {
      for (int i = 0; i < free; ++i) {
        d[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i)];
        d[static_cast<std::size_t>(N - 1 - i)] = F.inv(t[static_cast<std::size_t>(i)]);
      }
    }
    OMat D = omat_diag(d);
    if (diag_fixed(D, perm) && G.in_group(F, omat_mul(F, wdot, D))) s.torus.push_back(D);
    int k = 0;
    while (k < free && ++idx[static_cast<std::size_t>(k)] == Q - 1) idx[static_cast<std::size_t>(k++)] = 0;
    if (k == free) break;
  }
  std::vector<std::vector<int>> phi;
  for (const auto& r : G.positive_roots()) {
    auto img = apply_weyl(M, r.vec);
    for (auto& x : img) x = -x;
    for (const auto& s2 : G.positive_roots())
      if (s2.vec == img) phi.push_back(r.vec);
  }
  std::vector<std::vector<OMat>> elems(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k)
    for (std::uint32_t c = 0; c < Q; ++c) elems[k].push_back(G.root_element(F, phi[k], static_cast<Elt>(c)));
  std::vector<std::uint32_t> ci(phi.size(), 0);
  while (true) {
    OMat u = omat_identity(N);
    for (std::size_t k = 0; k < phi.size(); ++k) u = omat_mul(F, u, elems[k][ci[k]]);
    s.unipotent.push_back(u);
    std::size_t k = 0;
    while (k < phi.size() && ++ci[k] == Q) ci[k++] = 0;
    if (k == phi.size()) break;
  }
  return s;
}

std::vector<OMat> oracle_gamma(const FiniteGroup& G, const TableField& F, const std::vector<int>& perm) {
  auto basis = anti_fixed_basis(oracle_weyl(G, perm).ambient);
  auto mu4 = F.roots_of_unity(4);
  std::vector<OMat> out;
  std::vector<std::size_t> idx(basis.size(), 0);
  while (true) {
    OMat t = omat_identity(G.size());
    for (std::size_t k = 0; k < basis.size(); ++k) t = omat_mul(F, t, cochar(G, F, basis[k], mu4[idx[k]]));
    if (diag_fixed(omat_mul(F, t, t), perm) && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    std::size_t k = 0;
    while (k < basis.size() && ++idx[k] == mu4.size()) idx[k++] = 0;
    if (k == basis.size()) break;
  }
  return out;
}

SliceOrbitReport slice_orbit_check(const FiniteGroup& G, const ClassData& cd, int geometric, std::optional<OMat> wdot_opt,
                                   const std::string& source) {
  const TableField& F = G.field();
  SliceOrbitReport r;
  r.group = G.name();
  r.geometric = geometric;
  r.jordan = cd.geometric[static_cast<std::size_t>(geometric)];
  r.wdot_source = source;
  std::map<std::vector<int>, long long> cells;
  std::uint64_t rep = 0;
  bool have_rep = false;
  for (const auto& oc : cd.classes)
    if (oc.geometric == geometric) {
      for (const auto& [w, n] : oc.cells) cells[w] += n;
      if (!have_rep) {
        rep = oc.rep;
        have_rep = true;
      }
    }
  std::vector<std::vector<int>> maximal;
  for (const auto& [u, n] : cells) {
    bool below = false;
    for (const auto& [v, m] : cells) below = below || (v != u && bruhat_leq(u, v));
    if (!below) maximal.push_back(u);
  }
  if (maximal.size() != 1) {
    r.log.push_back("no unique Bruhat-maximal cell");
    return r;
  }
  const auto perm = maximal[0];
  r.w = oracle_weyl(G, perm).str();
  const OMat wdot = wdot_opt ? *wdot_opt : oracle_wdot(G, perm);
  if (monomial_perm(wdot) != perm) {
    r.log.push_back("representative does not lie over w_O");
    return r;
  }
  auto S = slice_set(G, F, perm, wdot);
  r.slice_points = static_cast<long long>(S.torus.size() * S.unipotent.size());
  std::vector<std::uint64_t> X;
  for (const auto& t : S.torus) {
    OMat wt = omat_mul(F, wdot, t);
    for (const auto& u : S.unipotent) {
      long long idx = G.index_of(omat_mul(F, wt, u));
      if (idx < 0) {
        r.log.push_back("slice point outside the group");
        return r;
      }
      if (cd.classes[static_cast<std::size_t>(cd.class_of[static_cast<std::size_t>(idx)])].geometric == geometric)
        X.push_back(G.elements()[static_cast<std::size_t>(idx)]);
    }
  }
  std::sort(X.begin(), X.end());
  r.intersection = static_cast<long long>(X.size());
  auto big = TableField::get(G.q() * G.q());
  auto emb = big->embedding_from(F);
  if (!X.empty()) {
    r.nonempty = true;
    r.nonempty_field = F.name();
  } else {
    r.log.push_back("no point over " + F.name() + " (rational-point caveat); retrying over " + big->name());
    const OMat rb = omat_map(G.decode(rep), emb);
    const std::string key = oracle_jordan(*big, rb).key;
    const OMat wb = omat_map(wdot, emb);
    auto S2 = slice_set(G, *big, perm, wb);
    for (std::size_t a = 0; a < S2.torus.size() && !r.nonempty; ++a) {
      OMat wt = omat_mul(*big, wb, S2.torus[a]);
      for (std::size_t b = 0; b < S2.unipotent.size() && !r.nonempty; ++b)
        if (oracle_jordan(*big, omat_mul(*big, wt, S2.unipotent[b])).key == key) r.nonempty = true;
    }
    r.nonempty_field = r.nonempty ? big->name() : "";
    r.log.push_back(r.nonempty ? "nonempty over " + big->name() : "empty over " + big->name());
    r.stable = r.nonempty;
    r.transitive = r.nonempty;
    return r;
  }
  auto gam = oracle_gamma(G, *big, perm);
  r.gamma_order = static_cast<long long>(gam.size());
  std::vector<bool> rational(gam.size(), false);
  for (std::size_t k = 0; k < gam.size(); ++k) rational[k] = omat_restrict(gam[k], emb).has_value();
  r.gamma_rational = std::count(rational.begin(), rational.end(), true);

  std::vector<std::size_t> parent(X.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  auto count_orbits = [&] {
    int n = 0;
    for (std::size_t a = 0; a < X.size(); ++a) n += find(a) == a;
    return n;
  };
  const OMat wb = omat_map(wdot, emb);
  r.stable = true;
  auto act = [&](bool rational_pass) {
    for (std::size_t k = 0; k < gam.size(); ++k) {
      if (rational[k] != rational_pass) continue;
      const OMat gi = omat_inverse(*big, gam[k]);
      for (std::size_t a = 0; a < X.size(); ++a) {
        OMat y = omat_mul(*big, omat_mul(*big, gam[k], omat_map(G.decode(X[a]), emb)), gi);
        auto yr = omat_restrict(y, emb);
        if (yr) {
          auto it = std::lower_bound(X.begin(), X.end(), G.encode(*yr));
          if (it == X.end() || *it != G.encode(*yr)) {
            r.stable = false;
            r.log.push_back("Gamma_w moves " + omat_str(F, G.decode(X[a])) + " off the intersection");
            continue;
          }
          parent[find(a)] = find(static_cast<std::size_t>(it - X.begin()));
        } else if (!in_slice(*big, y, wb, perm, false)) {
          r.stable = false;
          r.log.push_back("Gamma_w moves a point off the slice over " + big->name());
        }
      }
    }
  };
  act(true);
  r.orbits_rational = count_orbits();
  r.orbits = r.orbits_rational;
  if (r.orbits_rational > 1 && r.gamma_rational < r.gamma_order) {
    act(false);
    r.orbits = count_orbits();
    r.escalated = true;
    r.log.push_back("Gamma_w(" + F.name() + ") has " + std::to_string(r.gamma_rational) + " of " + std::to_string(r.gamma_order) +
                    " elements; escalated to " + big->name() + ": " + std::to_string(r.orbits_rational) + " -> " +
                    std::to_string(r.orbits) + " orbits");
  } else {
    act(false);
  }
  r.transitive = r.orbits == 1;
  return r;
}

std::vector<SliceOrbitReport> slice_orbit_suite(const FiniteGroup& G, const ClassData& cd) {
  std::vector<SheetDescriptor> sheets;
  auto fams = catalog_families(G, sheets);
  std::vector<SliceOrbitReport> out;
  for (int g = 0; g < static_cast<int>(cd.geometric.size()); ++g) {
    const OracleClass* oc = nullptr;
    for (const auto& c : cd.classes)
      if (c.geometric == g) {
        oc = &c;
        break;
      }
    if (!oc || !oc->spherical) continue;
    std::optional<OMat> wdot;
    std::string source = "oracle";
    auto wc = w_of_class(cd, oc->index);
    if (!fams.empty() && wc.unique) {
      auto lib = to_library(G, G.decode(oc->rep));
      WeylElement w = to_catalog_weyl(G, oracle_weyl(G, wc.w));
      for (std::size_t k = 0; k < sheets.size() && !wdot; ++k) {
        if (!fams[k] || !(sheets[k].w == w) || !fams[k]->member(lib).member) continue;
        wdot = catalog_wdot(G, sheets[k]);
        source = "catalog " + sheets[k].label;
      }
    }
    out.push_back(slice_orbit_check(G, cd, g, wdot, source));
  }
  return out;
}

NormalizeResult normalize_to_fixed_torus(const FiniteGroup& G, const std::vector<int>& perm, const OMat& wdot, const OMat& x,
                                         const OMat& t_w) {
  NormalizeResult res;
  auto basis = anti_fixed_basis(oracle_weyl(G, perm).ambient);
  auto attempt = [&](const TableField& F, const std::vector<Elt>& emb) {
    const OMat tw = omat_map(t_w, emb), xx = omat_map(x, emb), wd = omat_map(wdot, emb);
    std::vector<std::uint32_t> idx(basis.size(), 0);
    while (true) {
      OMat s = omat_identity(G.size());
      for (std::size_t k = 0; k < basis.size(); ++k) s = omat_mul(F, s, cochar(G, F, basis[k], F.pow(F.generator(), idx[k])));
      OMat si = omat_inverse(F, s);
      if (omat_mul(F, si, si) == tw) {
        res.found = true;
        res.field_q = F.q();
        res.s = s;
        res.result = omat_mul(F, omat_mul(F, si, xx), s);
        res.verified = in_slice(F, res.result, wd, perm, true);
        return true;
      }
      std::size_t k = 0;
      while (k < basis.size() && ++idx[k] == F.q() - 1) idx[k++] = 0;
      if (k == basis.size()) return false;
    }
  };
  const TableField& F = G.field();
  if (attempt(F, F.embedding_from(F))) return res;
  auto big = TableField::get(G.q() * G.q());
  if (attempt(*big, big->embedding_from(F))) {
    res.extension = big->name();
    res.note = "t_w has no square root in (T_w)°(" + F.name() + "); extension " + big->name() + " required";
    return res;
  }
  res.note = "no s with s^-2 = t_w over " + big->name();
  return res;
}

ContainmentReport slice_containment(const FiniteGroup& G, const ClassData& cd, const SheetDescriptor& d) {
  ContainmentReport r;
  r.sheet = d.id();
  auto f = make_family(d, G.q());
  std::set<std::uint64_t> fam;
  const int nc = f->coordinate_count();
  for (int c = 0; c < f->num_components(); ++c) {
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(nc), 0);
    while (true) {
      std::vector<Fp> coords;
      bool skip = false;
      for (int i = 0; i < nc; ++i) {
        coords.emplace_back(G.q(), idx[static_cast<std::size_t>(i)]);
        if (f->coordinate_nonzero(i) && idx[static_cast<std::size_t>(i)] == 0) skip = true;
      }
      if (!skip) {
        ++r.family_points;
        OMat og = from_library(G, f->build(f->claimed_point(c, coords)));
        if (G.index_of(og) >= 0) fam.insert(G.encode(og));
      }
      int k = 0;
      while (k < nc && ++idx[static_cast<std::size_t>(k)] == G.q()) idx[static_cast<std::size_t>(k++)] = 0;
      if (k == nc) break;
    }
  }
  r.family_in_group = static_cast<long long>(fam.size());
  std::set<int> geos;
  for (const auto& oc : cd.classes)
    if (f->member(to_library(G, G.decode(oc.rep))).member) geos.insert(oc.geometric);
  const OMat wdot = catalog_wdot(G, d);
  const auto perm = monomial_perm(wdot);
  auto S = slice_set(G, G.field(), perm, wdot);
  std::set<std::uint64_t> orc;
  for (const auto& t : S.torus) {
    OMat wt = omat_mul(G.field(), wdot, t);
    for (const auto& u : S.unipotent) {
      long long idx = G.index_of(omat_mul(G.field(), wt, u));
      if (idx < 0) continue;
      if (geos.count(cd.classes[static_cast<std::size_t>(cd.class_of[static_cast<std::size_t>(idx)])].geometric))
        orc.insert(G.elements()[static_cast<std::size_t>(idx)]);
    }
  }
  r.oracle_points = static_cast<long long>(orc.size());
  for (auto c : fam) r.missing_from_oracle += !orc.count(c);
  for (auto c : orc) r.missing_from_family += !fam.count(c);
  r.note = std::to_string(geos.size()) + " classes of the sheet over F_" + std::to_string(G.q());
  return r;
}

}  // namespace sheetslice
