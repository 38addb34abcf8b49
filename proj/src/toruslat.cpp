#include "sheetslice/toruslat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sheetslice {

namespace {

long long den_of(const Rat& r) { return r.q().get_den().get_si(); }

std::vector<std::pair<long long, int>> factorize(long long n) {
  std::vector<std::pair<long long, int>> f;
  for (long long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

void check_involution(const TorusData& t) {
  IntMat w2 = t.action * t.action;
  if (!w2.is_identity()) throw std::invalid_argument("torus action is not an involution");
}

FixedPart kernel_part(const IntMat& a) {
  SmithForm s = smith_normal_form(a);
  FixedPart f;
  std::vector<long long> cyc;
  const int n = a.cols();
  for (int i = 0; i < n; ++i) {
    long long d = i < static_cast<int>(s.diagonal.size()) ? s.diagonal[static_cast<std::size_t>(i)] : 0;
    if (d == 0) ++f.torus_rank;
    else cyc.push_back(d);
  }
  f.component_group = GroupShape::from_cyclic(cyc);
  return f;
}

GroupShape shape_of_subgroup(const std::set<std::vector<Rat>>& elems) {
  // |G[m]| = prod gcd(m, d_i); recover the p-parts from the counts at p^k
  long long n = static_cast<long long>(elems.size());
  std::vector<long long> cyc;
  for (auto [p, e] : factorize(n)) {
    std::vector<int> ge;  // number of cyclic factors of order >= p^k
    long long prev = 1, pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      long long cnt = 0;
      for (const auto& y : elems) {
        bool ok = true;
        for (const auto& c : y)
          if (pk % den_of(c) != 0) ok = false;
        if (ok) ++cnt;
      }
      int r = 0;
      for (long long x = cnt / prev; x > 1; x /= p) ++r;
      ge.push_back(r);
      prev = cnt;
    }
    for (std::size_t k = 0; k < ge.size(); ++k) {
      int exact = ge[k] - (k + 1 < ge.size() ? ge[k + 1] : 0);
      long long ord = 1;
      for (std::size_t j = 0; j <= k; ++j) ord *= p;
      for (int j = 0; j < exact; ++j) cyc.push_back(ord);
    }
  }
  return GroupShape::from_cyclic(cyc);
}

}  // namespace

std::string isogeny_label(Isogeny iso) {
  switch (iso) {
    case Isogeny::SimplyConnected: return "sc";
    case Isogeny::Adjoint: return "adj";
    case Isogeny::Classical: return "classical";
  }
  return "?";
}

Isogeny parse_isogeny(const std::string& s) {
  if (s == "sc") return Isogeny::SimplyConnected;
  if (s == "adj") return Isogeny::Adjoint;
  if (s == "classical") return Isogeny::Classical;
  throw std::invalid_argument("unknown isogeny '" + s + "' (expected sc, adj or classical)");
}

long long GroupShape::order() const {
  long long o = 1;
  for (auto d : divisors) o *= d;
  return o;
}

std::string GroupShape::str() const {
  if (divisors.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < divisors.size(); ++i) s += (i ? " x " : "") + std::string("Z/") + std::to_string(divisors[i]);
  return s;
}

GroupShape GroupShape::from_cyclic(const std::vector<long long>& orders) {
  // invariant factors from the multiset of prime-power parts
  std::map<long long, std::vector<long long>> parts;
  for (long long o : orders) {
    if (o < 1) throw std::invalid_argument("cyclic order must be positive");
    for (auto [p, e] : factorize(o)) {
      long long pe = 1;
      for (int k = 0; k < e; ++k) pe *= p;
      parts[p].push_back(pe);
    }
  }
  std::size_t len = 0;
  for (auto& [p, v] : parts) {
    std::sort(v.begin(), v.end(), std::greater<>());
    len = std::max(len, v.size());
  }
  GroupShape g;
  g.divisors.assign(len, 1);
  for (auto& [p, v] : parts)
    for (std::size_t k = 0; k < v.size(); ++k) g.divisors[len - 1 - k] *= v[k];
  return g;
}

long long TorsionPoint::order() const {
  long long o = 1;
  for (const auto& c : y) o = std::lcm(o, den_of(c));
  return o;
}

std::string TorsionPoint::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < y.size(); ++i) s += (i ? "," : "") + y[i].str();
  return s + ")";
}

TorsionPoint reduce_point(std::vector<Rat> y) {
  for (auto& c : y) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), c.q().get_num_mpz_t(), c.q().get_den_mpz_t());
    c = c - Rat(mpq_class(fl));
  }
  return TorsionPoint{std::move(y)};
}

TorusData torus_from_matrix(std::shared_ptr<const RootSystem> rs, Isogeny iso, IntMat action) {
  if (action.rows() != action.cols()) throw std::invalid_argument("torus action must be square");
  IntMat p = action;
  int k = 1;
  while (!p.is_identity()) {
    if (++k > 12) throw std::invalid_argument("torus action does not have finite order");
    p = p * action;
  }
  return TorusData{std::move(rs), iso, std::move(action)};
}

TorusData torus_data(const WeylElement& w, Isogeny iso) {
  const RootSystem& rs = w.system();
  switch (iso) {
    case Isogeny::SimplyConnected: return torus_from_matrix(w.system_ptr(), iso, w.coroot_matrix());
    case Isogeny::Adjoint: return torus_from_matrix(w.system_ptr(), iso, unimodular_inverse(w.matrix()).transpose());
    case Isogeny::Classical: {
      if (rs.type() != 'A' && rs.type() != 'B' && rs.type() != 'C' && rs.type() != 'D')
        throw std::invalid_argument("no classical matrix group for type " + rs.label());
      auto a = w.ambient_matrix();
      IntMat m(static_cast<int>(a.size()), static_cast<int>(a.size()));
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
          if (den_of(a[i][j]) != 1) throw std::logic_error("non-integral ambient Weyl action");
          m(static_cast<int>(i), static_cast<int>(j)) = a[i][j].q().get_num().get_si();
        }
      return torus_from_matrix(w.system_ptr(), iso, m);
    }
  }
  throw std::invalid_argument("unknown isogeny");
}

FixedPart fixed_part(const TorusData& t) {
  check_involution(t);
  return kernel_part(IntMat::identity(t.lattice_rank()) - t.action);
}

FixedPart antifixed_part(const TorusData& t) {
  check_involution(t);
  return kernel_part(IntMat::identity(t.lattice_rank()) + t.action);
}

GroupShape s_w_group(const TorusData& t) {
  check_involution(t);
  SmithForm s = smith_normal_form(IntMat::identity(t.lattice_rank()) - t.action);
  int even = 0;
  for (int i = 0; i < t.lattice_rank(); ++i) {
    long long d = i < static_cast<int>(s.diagonal.size()) ? s.diagonal[static_cast<std::size_t>(i)] : 0;
    if (d % 2 == 0) ++even;
  }
  return GroupShape::from_cyclic(std::vector<long long>(static_cast<std::size_t>(even), 2));
}

GammaData gamma_w(const TorusData& t, unsigned characteristic) {
  if (characteristic == 2) throw std::invalid_argument("Gamma_w is not defined by this recipe in characteristic 2");
  check_involution(t);
  GammaData g;
  g.y_minus = integer_kernel(IntMat::identity(t.lattice_rank()) + t.action);
  g.rank = static_cast<int>(g.y_minus.size());
  g.shape = GroupShape::from_cyclic(std::vector<long long>(static_cast<std::size_t>(g.rank), 4));
  g.s_w_in_torus = GroupShape::from_cyclic(std::vector<long long>(static_cast<std::size_t>(g.rank), 2));
  for (const auto& y : g.y_minus) {
    std::vector<Rat> v;
    for (auto c : y) v.push_back(Rat(c, 4));
    g.generators.push_back(reduce_point(std::move(v)));
  }
  return g;
}

std::vector<TorsionPoint> gamma_elements(const GammaData& g) {
  std::set<std::vector<Rat>> out;
  const std::size_t n = g.generators.empty() ? 0 : g.generators[0].y.size();
  std::vector<int> c(g.generators.size(), 0);
  for (;;) {
    std::vector<Rat> y(n, Rat(0));
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t i = 0; i < n; ++i) y[i] += Rat(c[k]) * g.generators[k].y[i];
    out.insert(reduce_point(y).y);
    std::size_t k = 0;
    while (k < c.size() && ++c[k] == 4) c[k++] = 0;
    if (k == c.size()) break;
  }
  std::vector<TorsionPoint> v;
  for (auto& y : out) v.push_back(TorsionPoint{y});
  return v;
}

IsogenyCheck isogeny_check(const WeylElement& w) {
  IsogenyCheck r;
  GammaData gs = gamma_w(torus_data(w, Isogeny::SimplyConnected));
  GammaData ga = gamma_w(torus_data(w, Isogeny::Adjoint));
  r.sc = gs.shape;
  r.adj = ga.shape;
  // alpha_i^vee = sum_j a_ji omega_j^vee
  const IntMat& C = w.system().cartan();
  const int n = C.rows();
  std::vector<std::vector<Rat>> gens;
  for (const auto& p : gs.generators) {
    std::vector<Rat> y(static_cast<std::size_t>(n), Rat(0));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(j)] += Rat(C(j, i)) * p.y[static_cast<std::size_t>(i)];
    gens.push_back(reduce_point(y).y);
  }
  std::set<std::vector<Rat>> sub{std::vector<Rat>(static_cast<std::size_t>(n), Rat(0))};
  std::vector<std::vector<Rat>> queue(sub.begin(), sub.end());
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& g : gens) {
      std::vector<Rat> y = queue[k];
      for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] += g[static_cast<std::size_t>(i)];
      y = reduce_point(y).y;
      if (sub.insert(y).second) queue.push_back(y);
    }
  r.image = shape_of_subgroup(sub);
  // quotient shape: same exponent pattern with fewer or equal factors at each level
  r.quotient_shape = r.adj.divisors.size() <= r.sc.divisors.size();
  for (std::size_t k = 0; r.quotient_shape && k < r.adj.divisors.size(); ++k) {
    long long d = r.sc.divisors[r.sc.divisors.size() - 1 - k];
    long long e = r.adj.divisors[r.adj.divisors.size() - 1 - k];
    if (d % e != 0) r.quotient_shape = false;
  }
  return r;
}

}  // namespace sheetslice
