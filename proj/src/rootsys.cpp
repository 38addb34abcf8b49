#include "sheetslice/rootsys.hpp"

#include "sheetslice/matrix.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace sheetslice {

namespace {

std::vector<Rat> eps_vec(int dim, std::initializer_list<std::pair<int, Rat>> entries) {
  std::vector<Rat> v(static_cast<std::size_t>(dim), Rat(0));
  for (auto& [i, c] : entries) v[static_cast<std::size_t>(i)] = c;
  return v;
}

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// E8 simple roots in Bourbaki's realization; E6 and E7 use the first 6 or 7.
std::vector<std::vector<Rat>> e8_simple() {
  const Rat h(1, 2);
  std::vector<std::vector<Rat>> s;
  s.push_back({h, -h, -h, -h, -h, -h, -h, h});
  s.push_back(eps_vec(8, {{0, Rat(1)}, {1, Rat(1)}}));
  s.push_back(eps_vec(8, {{0, Rat(-1)}, {1, Rat(1)}}));
  for (int i = 1; i < 6; ++i) s.push_back(eps_vec(8, {{i, Rat(-1)}, {i + 1, Rat(1)}}));
  return s;
}

}  // namespace

std::shared_ptr<const RootSystem> RootSystem::build(char type, int rank) {
  std::shared_ptr<RootSystem> rs(new RootSystem());
  rs->type_ = type;
  rs->rank_ = rank;
  auto& S = rs->simple_ambient_;
  auto bad = [&] { throw std::invalid_argument("invalid simple type " + std::string(1, type) + std::to_string(rank)); };
  switch (type) {
    case 'A':
      if (rank < 1) bad();
      rs->ambient_dim_ = rank + 1;
      for (int i = 0; i < rank; ++i) S.push_back(eps_vec(rank + 1, {{i, Rat(1)}, {i + 1, Rat(-1)}}));
      break;
    case 'B':
    case 'C':
      if (rank < 2) bad();
      rs->ambient_dim_ = rank;
      for (int i = 0; i + 1 < rank; ++i) S.push_back(eps_vec(rank, {{i, Rat(1)}, {i + 1, Rat(-1)}}));
      S.push_back(eps_vec(rank, {{rank - 1, Rat(type == 'B' ? 1 : 2)}}));
      break;
    case 'D':
      if (rank < 3) bad();
      rs->ambient_dim_ = rank;
      for (int i = 0; i + 1 < rank; ++i) S.push_back(eps_vec(rank, {{i, Rat(1)}, {i + 1, Rat(-1)}}));
      S.push_back(eps_vec(rank, {{rank - 2, Rat(1)}, {rank - 1, Rat(1)}}));
      break;
    case 'E': {
      if (rank < 6 || rank > 8) bad();
      rs->ambient_dim_ = 8;
      auto e8 = e8_simple();
      S.assign(e8.begin(), e8.begin() + rank);
      break;
    }
    case 'F': {
      if (rank != 4) bad();
      rs->ambient_dim_ = 4;
      const Rat h(1, 2);
      S.push_back(eps_vec(4, {{1, Rat(1)}, {2, Rat(-1)}}));
      S.push_back(eps_vec(4, {{2, Rat(1)}, {3, Rat(-1)}}));
      S.push_back(eps_vec(4, {{3, Rat(1)}}));
      S.push_back({h, -h, -h, -h});
      break;
    }
    case 'G':
      if (rank != 2) bad();
      rs->ambient_dim_ = 3;
      S.push_back(eps_vec(3, {{0, Rat(1)}, {1, Rat(-1)}}));
      S.push_back(eps_vec(3, {{0, Rat(-2)}, {1, Rat(1)}, {2, Rat(1)}}));
      break;
    default:
      bad();
  }
  rs->generate();
  return rs;
}

void RootSystem::generate() {
  const int r = rank_;
  gram_.assign(static_cast<std::size_t>(r), std::vector<Rat>(static_cast<std::size_t>(r), Rat(0)));
  cartan_ = IntMat(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) gram_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
        dot(simple_ambient_[static_cast<std::size_t>(i)], simple_ambient_[static_cast<std::size_t>(j)]);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Rat a = Rat(2) * gram_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] /
              gram_[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
      if (a.q().get_den() != 1) throw std::logic_error("non-integral Cartan entry");
      cartan_(i, j) = a.q().get_num().get_si();
    }
  // reflection closure from the simple roots
  std::set<RootVec> seen;
  std::deque<RootVec> queue;
  for (int i = 0; i < r; ++i) {
    seen.insert(unit(i));
    queue.push_back(unit(i));
  }
  while (!queue.empty()) {
    RootVec v = queue.front();
    queue.pop_front();
    for (int i = 0; i < r; ++i) {
      long long c = 0;
      for (int j = 0; j < r; ++j) c += static_cast<long long>(v[static_cast<std::size_t>(j)]) * cartan_(j, i);
      RootVec w = v;
      w[static_cast<std::size_t>(i)] -= static_cast<int>(c);
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  std::vector<RootVec> pos;
  for (auto& v : seen)
    if (is_positive_vec(v)) pos.push_back(v);
  std::sort(pos.begin(), pos.end(), [](const RootVec& a, const RootVec& b) {
    int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  roots_ = pos;
  for (auto& v : pos) {
    RootVec n = v;
    for (auto& x : n) x = -x;
    roots_.push_back(n);
  }
  if (roots_.size() != seen.size()) throw std::logic_error("root sign decomposition failed");
  for (std::size_t k = 0; k < roots_.size(); ++k) index_[roots_[k]] = static_cast<int>(k);
  // left inverse (G^{-1} B^T) of the simple-root matrix B
  Matrix<Rat> G(static_cast<std::size_t>(r), static_cast<std::size_t>(r), Rat(0));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) G(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
        gram_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  Matrix<Rat> Gi = inverse_or_throw(G);
  ambient_to_simple_.assign(static_cast<std::size_t>(r), std::vector<Rat>(static_cast<std::size_t>(ambient_dim_), Rat(0)));
  for (int i = 0; i < r; ++i)
    for (int a = 0; a < ambient_dim_; ++a) {
      Rat s(0);
      for (int k = 0; k < r; ++k)
        s += Gi(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) *
             simple_ambient_[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)];
      ambient_to_simple_[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] = s;
    }
}

RootVec RootSystem::unit(int i) const {
  RootVec v(static_cast<std::size_t>(rank_), 0);
  v[static_cast<std::size_t>(i)] = 1;
  return v;
}

int RootSystem::root_index(const RootVec& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}

int RootSystem::height(const RootVec& v) {
  int h = 0;
  for (int x : v) h += x;
  return h;
}

bool RootSystem::is_positive_vec(const RootVec& v) {
  for (int x : v)
    if (x < 0) return false;
  for (int x : v)
    if (x > 0) return true;
  return false;
}

Rat RootSystem::inner(const RootVec& a, const RootVec& b) const {
  Rat s(0);
  for (int i = 0; i < rank_; ++i) {
    if (!a[static_cast<std::size_t>(i)]) continue;
    for (int j = 0; j < rank_; ++j) {
      if (!b[static_cast<std::size_t>(j)]) continue;
      s += Rat(static_cast<long long>(a[static_cast<std::size_t>(i)]) * b[static_cast<std::size_t>(j)]) *
           gram_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return s;
}

int RootSystem::pairing(const RootVec& a, const RootVec& b) const {
  Rat v = Rat(2) * inner(a, b) / inner(b, b);
  if (v.q().get_den() != 1) throw std::logic_error("non-integral pairing");
  return static_cast<int>(v.q().get_num().get_si());
}

RootVec RootSystem::coroot(const RootVec& b) const {
  Rat bb = inner(b, b);
  RootVec c(static_cast<std::size_t>(rank_), 0);
  for (int i = 0; i < rank_; ++i) {
    Rat v = Rat(b[static_cast<std::size_t>(i)]) * gram_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] / bb;
    if (v.q().get_den() != 1) throw std::logic_error("non-integral coroot coordinate");
    c[static_cast<std::size_t>(i)] = static_cast<int>(v.q().get_num().get_si());
  }
  return c;
}

int RootSystem::coroot_index(const RootVec& c) const {
  for (int k = 0; k < num_roots(); ++k)
    if (coroot(roots_[static_cast<std::size_t>(k)]) == c) return k;
  return -1;
}

std::vector<Rat> RootSystem::ambient(const RootVec& v) const {
  std::vector<Rat> x(static_cast<std::size_t>(ambient_dim_), Rat(0));
  for (int i = 0; i < rank_; ++i) {
    if (!v[static_cast<std::size_t>(i)]) continue;
    for (int a = 0; a < ambient_dim_; ++a)
      x[static_cast<std::size_t>(a)] += Rat(v[static_cast<std::size_t>(i)]) *
                                        simple_ambient_[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
  }
  return x;
}

RootVec RootSystem::from_ambient(const std::vector<Rat>& x) const {
  if (static_cast<int>(x.size()) != ambient_dim_) throw std::invalid_argument("ambient vector has wrong length");
  RootVec v(static_cast<std::size_t>(rank_), 0);
  for (int i = 0; i < rank_; ++i) {
    Rat s(0);
    for (int a = 0; a < ambient_dim_; ++a)
      s += ambient_to_simple_[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)];
    if (s.q().get_den() != 1) throw std::invalid_argument("vector is not in the root lattice");
    v[static_cast<std::size_t>(i)] = static_cast<int>(s.q().get_num().get_si());
  }
  if (ambient(v) != x) throw std::invalid_argument("vector is not in the span of the roots");
  return v;
}

std::string RootSystem::ambient_str(const RootVec& v) const {
  auto x = ambient(v);
  std::string s;
  for (int a = 0; a < ambient_dim_; ++a) {
    const Rat& c = x[static_cast<std::size_t>(a)];
    if (c.is_zero()) continue;
    std::string e = "e" + std::to_string(a + 1);
    if (c.sign() > 0 && !s.empty()) s += "+";
    if (c == Rat(1)) s += e;
    else if (c == Rat(-1)) s += "-" + e;
    else s += c.str() + e;
  }
  return s.empty() ? "0" : s;
}

std::string RootSystem::debug_dump() const {
  std::ostringstream os;
  os << "# root system " << label() << ", " << num_roots() << " roots, ambient dimension " << ambient_dim_ << "\n";
  for (int k = 0; k < num_roots(); ++k) {
    auto x = ambient(roots_[static_cast<std::size_t>(k)]);
    os << (is_positive_index(k) ? "+ " : "- ");
    for (int a = 0; a < ambient_dim_; ++a) os << (a ? " " : "") << x[static_cast<std::size_t>(a)].str();
    os << "\n";
  }
  return os.str();
}

WeylElement RootSystem::identity() const { return WeylElement(shared_from_this(), IntMat::identity(rank_)); }

WeylElement RootSystem::reflection(const RootVec& beta) const {
  IntMat m(rank_, rank_);
  for (int j = 0; j < rank_; ++j) {
    RootVec aj = unit(j);
    int c = pairing(aj, beta);
    for (int i = 0; i < rank_; ++i) m(i, j) = aj[static_cast<std::size_t>(i)] - c * beta[static_cast<std::size_t>(i)];
  }
  return WeylElement(shared_from_this(), m);
}

WeylElement RootSystem::simple_reflection(int i) const { return reflection(unit(i)); }

WeylElement RootSystem::longest() const {
  std::vector<int> all(static_cast<std::size_t>(rank_));
  for (int i = 0; i < rank_; ++i) all[static_cast<std::size_t>(i)] = i;
  return longest_element(*this, all);
}

long long RootSystem::weyl_order() const {
  auto fact = [](int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  switch (type_) {
    case 'A': return fact(rank_ + 1);
    case 'B':
    case 'C': return (1LL << rank_) * fact(rank_);
    case 'D': return (1LL << (rank_ - 1)) * fact(rank_);
    case 'E': return rank_ == 6 ? 51840LL : rank_ == 7 ? 2903040LL : 696729600LL;
    case 'F': return 1152;
    case 'G': return 12;
  }
  return 0;
}

WeylElement::WeylElement(std::shared_ptr<const RootSystem> rs, IntMat m) : rs_(std::move(rs)), m_(std::move(m)) {
  int n = 0;
  for (int k = 0; k < rs_->num_positive(); ++k)
    if (RootSystem::height(m_.apply(rs_->root(k))) < 0) ++n;
  len_ = n;
}

int WeylElement::apply_index(int root_idx) const { return rs_->root_index(apply(rs_->root(root_idx))); }

bool WeylElement::is_involution() const { return (m_ * m_).is_identity(); }

WeylElement WeylElement::inverse() const { return WeylElement(rs_, unimodular_inverse(m_)); }

bool WeylElement::has_right_descent(int i) const { return RootSystem::height(m_.apply(rs_->unit(i))) < 0; }

bool WeylElement::has_left_descent(int i) const { return inverse().has_right_descent(i); }

IntMat WeylElement::coroot_matrix() const {
  const int r = rs_->rank();
  IntMat c(r, r);
  const auto& g = rs_->gram();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Rat v = Rat(m_(i, j)) * g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] /
              g[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
      if (v.q().get_den() != 1) throw std::logic_error("non-integral coroot action");
      c(i, j) = v.q().get_num().get_si();
    }
  return c;
}

std::vector<std::vector<Rat>> WeylElement::ambient_matrix() const {
  const int d = rs_->ambient_dim();
  Matrix<Rat> A = Matrix<Rat>::identity(static_cast<std::size_t>(d), Rat(0));
  for (int i : reduced_word(*this)) {
    auto a = rs_->ambient(rs_->unit(i));
    Rat aa = dot(a, a);
    Matrix<Rat> s = Matrix<Rat>::identity(static_cast<std::size_t>(d), Rat(0));
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        s(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) =
            s(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) -
            Rat(2) * a[static_cast<std::size_t>(x)] * a[static_cast<std::size_t>(y)] / aa;
    A = A * s;
  }
  std::vector<std::vector<Rat>> out(static_cast<std::size_t>(d), std::vector<Rat>(static_cast<std::size_t>(d), Rat(0)));
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) out[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = A(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
  return out;
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) { return WeylElement(a.rs_, a.m_ * b.m_); }

int length(const WeylElement& w) { return w.length(); }

std::vector<int> reduced_word(const WeylElement& w0) {
  std::vector<int> word;
  WeylElement w = w0;
  const RootSystem& rs = w.system();
  while (!w.is_identity()) {
    int i = 0;
    while (!w.has_right_descent(i)) ++i;
    word.push_back(i);
    w = w * rs.simple_reflection(i);
  }
  std::reverse(word.begin(), word.end());
  return word;
}

WeylElement from_word(const RootSystem& rs, const std::vector<int>& word) {
  WeylElement w = rs.identity();
  for (int i : word) w = w * rs.simple_reflection(i);
  return w;
}

WeylElement longest_element(const RootSystem& rs, const std::vector<int>& pi) {
  WeylElement w = rs.identity();
  for (;;) {
    bool grew = false;
    for (int i : pi) {
      if (i < 0 || i >= rs.rank()) throw std::invalid_argument("simple root index out of range");
      if (!w.has_right_descent(i)) {
        w = w * rs.simple_reflection(i);
        grew = true;
      }
    }
    if (!grew) return w;
  }
}

W0WPiResult w0_wPi(const RootSystem& rs, const std::vector<int>& pi) {
  WeylElement w0 = rs.longest();
  std::vector<int> sorted = pi;
  std::sort(sorted.begin(), sorted.end());
  for (int i : pi) {
    RootVec img = w0.apply(rs.unit(i));
    for (auto& x : img) x = -x;
    bool ok = false;
    for (int j : sorted)
      if (img == rs.unit(j)) ok = true;
    if (!ok) throw std::invalid_argument("-w0 does not stabilize the simple roots in Pi (" + rs.ambient_str(rs.unit(i)) + ")");
  }
  W0WPiResult r{w0 * longest_element(rs, pi), true};
  if (!r.w.is_involution()) throw std::logic_error("w0 w_Pi is not an involution");
  for (int i : pi)
    if (r.w.apply(rs.unit(i)) != rs.unit(i)) r.fixes_pi_pointwise = false;
  return r;
}

int minus_one_rank(const WeylElement& w) {
  return rank_q(IntMat::identity(w.system().rank()) - w.matrix());
}

bool bruhat_leq(const WeylElement& u0, const WeylElement& v0) {
  WeylElement u = u0, v = v0;
  const RootSystem& rs = v.system();
  for (;;) {
    if (u.length() > v.length()) return false;
    if (u == v) return true;
    if (v.length() == 0) return false;
    int i = 0;
    while (!v.has_right_descent(i)) ++i;
    WeylElement s = rs.simple_reflection(i);
    if (u.has_right_descent(i)) u = u * s;
    v = v * s;
  }
}

bool bruhat_leq_subword(const WeylElement& u, const WeylElement& v) {
  auto word = reduced_word(v);
  const RootSystem& rs = v.system();
  if (word.size() > 20) throw std::invalid_argument("reduced word too long for subword enumeration");
  for (unsigned long mask = 0; mask < (1UL << word.size()); ++mask) {
    WeylElement x = rs.identity();
    for (std::size_t k = 0; k < word.size(); ++k)
      if (mask >> k & 1) x = x * rs.simple_reflection(word[k]);
    if (x == u) return true;
  }
  return false;
}

std::vector<WeylElement> conjugacy_class(const WeylElement& w) {
  const RootSystem& rs = w.system();
  std::vector<WeylElement> gens;
  for (int i = 0; i < rs.rank(); ++i) gens.push_back(rs.simple_reflection(i));
  std::unordered_set<WeylElement, WeylHash> seen{w};
  std::vector<WeylElement> out{w};
  for (std::size_t k = 0; k < out.size(); ++k)
    for (auto& s : gens) {
      WeylElement c = s * out[k] * s;
      if (seen.insert(c).second) out.push_back(c);
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_bruhat_max_in_class(const WeylElement& w) {
  for (const auto& c : conjugacy_class(w))
    if (!bruhat_leq(c, w)) return false;
  return true;
}

std::vector<WeylElement> all_elements(const RootSystem& rs, std::size_t max_size) {
  if (static_cast<std::size_t>(rs.weyl_order()) > max_size)
    throw std::invalid_argument("Weyl group of " + rs.label() + " exceeds the enumeration budget");
  std::vector<int> all;
  for (int i = 0; i < rs.rank(); ++i) all.push_back(i);
  return parabolic_elements(rs, all);
}

std::vector<WeylElement> parabolic_elements(const RootSystem& rs, const std::vector<int>& pi) {
  std::unordered_set<WeylElement, WeylHash> seen{rs.identity()};
  std::vector<WeylElement> out{rs.identity()};
  for (std::size_t k = 0; k < out.size(); ++k)
    for (int i : pi) {
      WeylElement c = out[k] * rs.simple_reflection(i);
      if (seen.insert(c).second) out.push_back(c);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<WeylElement>> involution_classes(const RootSystem& rs) {
  std::vector<std::vector<WeylElement>> classes;
  std::unordered_set<WeylElement, WeylHash> done;
  for (const auto& w : all_elements(rs)) {
    if (!w.is_involution() || done.count(w)) continue;
    auto cls = conjugacy_class(w);
    for (auto& c : cls) done.insert(c);
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace sheetslice
