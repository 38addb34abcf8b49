#include "sheetslice/sevslice.hpp"

#include "sheetslice/matrix.hpp"

#include <stdexcept>

namespace sheetslice {

namespace {

Matrix<Rat> coroot_action(const WeylElement& w) {
  const IntMat c = w.coroot_matrix();
  Matrix<Rat> m(static_cast<std::size_t>(c.rows()), static_cast<std::size_t>(c.cols()), Rat(0));
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rat(c(i, j));
  return m;
}

bool generic_on_psi(const RootSystem& rs, const std::vector<int>& psi, const CorootVec& f) {
  for (int k : psi)
    if (pairing_with(rs, rs.root(k), f).is_zero()) return false;
  return true;
}

}  // namespace

PositiveSystem::PositiveSystem(std::shared_ptr<const RootSystem> rs, std::vector<bool> positive)
    : rs_(std::move(rs)), pos_(std::move(positive)) {
  if (static_cast<int>(pos_.size()) != rs_->num_roots()) throw std::invalid_argument("positive-system mask has wrong length");
}

std::vector<int> PositiveSystem::positive_roots() const {
  std::vector<int> out;
  for (int k = 0; k < rs_->num_roots(); ++k)
    if (pos_[static_cast<std::size_t>(k)]) out.push_back(k);
  return out;
}

std::vector<int> PositiveSystem::simple_roots() const {
  auto pos = positive_roots();
  std::vector<int> out;
  for (int k : pos) {
    bool decomposable = false;
    for (int a : pos) {
      RootVec d = rs_->root(k);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= rs_->root(a)[i];
      int j = rs_->root_index(d);
      if (j >= 0 && is_positive(j)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) out.push_back(k);
  }
  return out;
}

int PositiveSystem::length(const WeylElement& w) const {
  int n = 0;
  for (int k : positive_roots())
    if (!is_positive(w.apply_index(k))) ++n;
  return n;
}

Rat pairing_with(const RootSystem& rs, const RootVec& beta, const CorootVec& v) {
  const IntMat& a = rs.cartan();
  Rat s(0);
  for (int i = 0; i < rs.rank(); ++i) {
    if (!beta[static_cast<std::size_t>(i)]) continue;
    for (int j = 0; j < rs.rank(); ++j)
      if (a(i, j)) s += Rat(static_cast<long long>(beta[static_cast<std::size_t>(i)]) * a(i, j)) * v[static_cast<std::size_t>(j)];
  }
  return s;
}

CorootVec coroot_coords(const RootSystem& rs, const std::vector<Rat>& x) {
  const auto r = static_cast<std::size_t>(rs.rank());
  const auto d = static_cast<std::size_t>(rs.ambient_dim());
  Matrix<Rat> m(d, r + 1, Rat(0));
  for (std::size_t j = 0; j < r; ++j) {
    auto a = rs.ambient(rs.unit(static_cast<int>(j)));
    Rat aa(0);
    for (auto& c : a) aa += c * c;
    for (std::size_t i = 0; i < d; ++i) m(i, j) = Rat(2) * a[i] / aa;
  }
  for (std::size_t i = 0; i < d; ++i) m(i, r) = x[i];
  auto piv = row_reduce(m, true);
  if (!piv.empty() && piv.back() == r) throw std::invalid_argument("vector is not in the coroot span");
  CorootVec c(r, Rat(0));
  for (std::size_t k = 0; k < piv.size(); ++k) c[piv[k]] = m(k, r);
  return c;
}

std::vector<CorootVec> minus_eigenspace(const WeylElement& w) {
  Matrix<Rat> m = coroot_action(w);
  return nullspace(m.shifted(Rat(-1)));
}

std::vector<int> psi_roots(const WeylElement& w) {
  std::vector<int> out;
  for (int k = 0; k < w.system().num_roots(); ++k)
    if (w.apply_index(k) == k) out.push_back(k);
  return out;
}

PositiveSystem positive_system(const EigenBasisChoice& ch) {
  const RootSystem& rs = ch.w.system();
  const auto r = static_cast<std::size_t>(rs.rank());
  if (!ch.w.is_involution()) throw std::invalid_argument("w is not an involution");
  Matrix<Rat> wa = coroot_action(ch.w);
  Matrix<Rat> B(r, ch.basis.size(), Rat(0));
  for (std::size_t k = 0; k < ch.basis.size(); ++k) {
    const auto& v = ch.basis[k];
    if (v.size() != r) throw std::invalid_argument("basis vector has wrong length");
    for (std::size_t i = 0; i < r; ++i) {
      Rat s(0);
      for (std::size_t j = 0; j < r; ++j) s += wa(i, j) * v[j];
      if (!(s == -v[i])) throw std::invalid_argument("basis vector " + std::to_string(k + 1) + " is not in the (-1)-eigenspace");
      B(i, k) = v[i];
    }
  }
  if (rank(B) != ch.basis.size()) throw std::invalid_argument("eigenbasis is linearly dependent");
  if (static_cast<int>(ch.basis.size()) != minus_one_rank(ch.w))
    throw std::invalid_argument("eigenbasis does not span the (-1)-eigenspace");
  std::vector<int> psi = psi_roots(ch.w);
  if (ch.psi_functional && !generic_on_psi(rs, psi, *ch.psi_functional))
    throw std::invalid_argument("Psi functional vanishes on a root of Psi");
  std::vector<bool> pos(static_cast<std::size_t>(rs.num_roots()), false);
  std::vector<bool> in_psi(pos.size(), false);
  for (int k : psi) in_psi[static_cast<std::size_t>(k)] = true;
  for (int k = 0; k < rs.num_roots(); ++k) {
    const RootVec& beta = rs.root(k);
    if (in_psi[static_cast<std::size_t>(k)]) {
      pos[static_cast<std::size_t>(k)] = ch.psi_functional ? pairing_with(rs, beta, *ch.psi_functional).sign() > 0
                                                           : rs.is_positive_index(k);
      continue;
    }
    int sign = 0;
    for (std::size_t i = ch.basis.size(); i-- > 0 && sign == 0;) sign = pairing_with(rs, beta, ch.basis[i]).sign();
    if (sign == 0) throw std::invalid_argument("degenerate eigenbasis: root " + rs.ambient_str(beta) + " pairs to zero with every v_i");
    pos[static_cast<std::size_t>(k)] = sign > 0;
  }
  return PositiveSystem(ch.w.system_ptr(), std::move(pos));
}

SystemReport validate_system(const PositiveSystem& ps, const WeylElement& w) {
  const RootSystem& rs = ps.system();
  SystemReport rep;
  rep.valid = true;
  for (int k = 0; k < rs.num_roots() && rep.valid; ++k)
    if (ps.is_positive(k) == ps.is_positive(rs.negative_index(k))) {
      rep.valid = false;
      rep.detail = "both or neither of +-" + rs.ambient_str(rs.root(k));
    }
  auto pos = ps.positive_roots();
  for (int a : pos)
    for (int b : pos) {
      if (!rep.valid) break;
      RootVec s = rs.root(a);
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += rs.root(b)[i];
      int j = rs.root_index(s);
      if (j >= 0 && !ps.is_positive(j)) {
        rep.valid = false;
        rep.detail = "not closed: " + rs.ambient_str(s);
      }
    }
  rep.complement_ok = true;
  rep.swap_ok = true;
  for (int k : pos) {
    bool fixed = w.apply_index(k) == k;
    bool inverted = !ps.is_positive(w.apply_index(k));
    if (fixed == inverted) {
      rep.complement_ok = false;
      if (rep.detail.empty()) rep.detail = "root " + rs.ambient_str(rs.root(k)) + " breaks Phi+ \\ Psi = inverted set";
    }
    if (!fixed) {
      int img = w.apply_index(k);
      if (ps.is_positive(img) || w.apply_index(img) == img) rep.swap_ok = false;
    }
  }
  return rep;
}

bool check_max_length(const WeylElement& w, const PositiveSystem& ps) {
  int l = ps.length(w);
  for (const auto& c : conjugacy_class(w))
    if (ps.length(c) > l) return false;
  return true;
}

EigenBasisChoice random_eigenbasis(const WeylElement& w, std::mt19937_64& rng, bool random_psi) {
  const RootSystem& rs = w.system();
  auto base = minus_eigenspace(w);
  auto psi = psi_roots(w);
  std::uniform_int_distribution<int> coef(-4, 4), scale(1, 5);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    EigenBasisChoice ch{w, {}, std::nullopt};
    for (std::size_t k = 0; k < base.size(); ++k) {
      CorootVec v(static_cast<std::size_t>(rs.rank()), Rat(0));
      for (const auto& b : base) {
        Rat c(coef(rng), scale(rng));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * b[i];
      }
      ch.basis.push_back(std::move(v));
    }
    if (random_psi) {
      CorootVec f(static_cast<std::size_t>(rs.rank()), Rat(0));
      for (auto& x : f) x = Rat(coef(rng) * 7 + scale(rng), scale(rng));
      if (!generic_on_psi(rs, psi, f)) continue;
      ch.psi_functional = f;
    }
    try {
      positive_system(ch);
      return ch;
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::runtime_error("no generic eigenbasis found");
}

}  // namespace sheetslice
