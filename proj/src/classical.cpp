#include "sheetslice/classical.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sheetslice {

GroupContext GroupContext::make(char type, int n, bool special) {
  GroupContext c;
  c.type_ = type;
  c.n_ = n;
  c.rs_ = RootSystem::build(type, n);
  switch (type) {
    case 'A':
      c.kind_ = special ? GroupKind::SL : GroupKind::GL;
      c.N_ = n + 1;
      for (int k = 0; k <= n; ++k) c.wt_.push_back({k, 1});
      for (int k = 0; k <= n; ++k) c.flag_.push_back(k);
      return c;
    case 'B': {
      c.kind_ = GroupKind::SOOdd;
      c.N_ = 2 * n + 1;
      c.J_.assign(static_cast<std::size_t>(c.N_), std::vector<int>(static_cast<std::size_t>(c.N_), 0));
      c.J_[0][0] = 1;
      c.wt_.push_back({-1, 0});
      for (int i = 1; i <= n; ++i) c.wt_.push_back({i - 1, 1});
      for (int i = 1; i <= n; ++i) c.wt_.push_back({i - 1, -1});
      for (int i = 1; i <= n; ++i) {
        c.J_[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1;
        c.J_[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i)] = 1;
      }
      for (int i = 1; i <= n; ++i) c.flag_.push_back(i);
      c.flag_.push_back(0);
      for (int i = 2 * n; i > n; --i) c.flag_.push_back(i);
      return c;
    }
    case 'C':
    case 'D': {
      c.kind_ = type == 'C' ? GroupKind::Sp : GroupKind::SOEven;
      c.N_ = 2 * n;
      c.J_.assign(static_cast<std::size_t>(c.N_), std::vector<int>(static_cast<std::size_t>(c.N_), 0));
      for (int i = 0; i < n; ++i) c.wt_.push_back({i, 1});
      for (int i = 0; i < n; ++i) c.wt_.push_back({i, -1});
      for (int i = 0; i < n; ++i) {
        c.J_[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1;
        c.J_[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i)] = type == 'C' ? -1 : 1;
      }
      for (int i = 0; i < n; ++i) c.flag_.push_back(i);
      for (int i = 2 * n - 1; i >= n; --i) c.flag_.push_back(i);
      return c;
    }
  }
  throw std::invalid_argument("no classical matrix group of type " + std::string(1, type));
}

std::vector<int> GroupContext::weight_vector(int k) const {
  std::vector<int> v(static_cast<std::size_t>(rs_->ambient_dim()), 0);
  const Weight& w = wt_[static_cast<std::size_t>(k)];
  if (w.index >= 0) v[static_cast<std::size_t>(w.index)] = w.sign;
  return v;
}

int GroupContext::group_dimension() const {
  switch (kind_) {
    case GroupKind::GL: return N_ * N_;
    case GroupKind::SL: return N_ * N_ - 1;
    case GroupKind::SOOdd:
    case GroupKind::SOEven: return N_ * (N_ - 1) / 2;
    case GroupKind::Sp: return n_ * (2 * n_ + 1);
  }
  return 0;
}

std::string GroupContext::name() const {
  switch (kind_) {
    case GroupKind::GL: return "GL" + std::to_string(N_);
    case GroupKind::SL: return "SL" + std::to_string(N_);
    case GroupKind::SOOdd:
    case GroupKind::SOEven: return "SO" + std::to_string(N_);
    case GroupKind::Sp: return "Sp" + std::to_string(N_);
  }
  return "?";
}

WeylElement weyl_from_ambient(const RootSystem& rs, const std::vector<std::vector<int>>& m) {
  const int r = rs.rank();
  IntMat cols(r, r);
  for (int j = 0; j < r; ++j) {
    auto a = rs.ambient(rs.unit(j));
    std::vector<Rat> img(a.size(), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < a.size(); ++k)
        if (m[i][k]) img[i] += Rat(m[i][k]) * a[k];
    RootVec v = rs.from_ambient(img);
    if (rs.root_index(v) < 0) throw std::invalid_argument("ambient matrix does not permute the roots");
    for (int i = 0; i < r; ++i) cols(i, j) = v[static_cast<std::size_t>(i)];
  }
  WeylElement w(rs.shared_from_this(), cols);
  if (!(from_word(rs, reduced_word(w)) == w)) throw std::invalid_argument("ambient matrix is not in the Weyl group");
  return w;
}

WeylElement weyl_from_flag_permutation(const GroupContext& ctx, const std::vector<int>& sigma) {
  const auto& fl = ctx.flag_order();
  const auto d = static_cast<std::size_t>(ctx.roots().ambient_dim());
  std::vector<std::vector<int>> m(d, std::vector<int>(d, 0));
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    const Weight& from = ctx.weight(fl[j]);
    const Weight& to = ctx.weight(fl[static_cast<std::size_t>(sigma[j])]);
    if ((from.index < 0) != (to.index < 0)) throw std::logic_error("Bruhat permutation moves the zero weight");
    if (from.index < 0) continue;
    int& e = m[static_cast<std::size_t>(to.index)][static_cast<std::size_t>(from.index)];
    int v = to.sign * from.sign;
    if (e != 0 && e != v) throw std::logic_error("Bruhat permutation is not a signed permutation");
    e = v;
  }
  for (std::size_t j = 0; j < d; ++j) {
    int cnt = 0;
    for (std::size_t i = 0; i < d; ++i) cnt += m[i][j] != 0;
    if (cnt != 1) throw std::logic_error("Bruhat permutation is not a signed permutation");
  }
  return weyl_from_ambient(ctx.roots(), m);
}

std::vector<int> partition_from_kernels(const std::vector<int>& dims, int divisor) {
  std::vector<int> ge;  // parts >= k
  for (std::size_t k = 1; k < dims.size(); ++k) {
    int diff = dims[k] - dims[k - 1];
    if (diff % divisor) throw std::logic_error("kernel dimensions not divisible by the factor degree");
    if (diff) ge.push_back(diff / divisor);
  }
  std::vector<int> parts;
  for (std::size_t k = 0; k < ge.size(); ++k) {
    int exact = ge[k] - (k + 1 < ge.size() ? ge[k + 1] : 0);
    for (int j = 0; j < exact; ++j) parts.push_back(static_cast<int>(k + 1));
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return parts;
}

std::string partition_str(const std::vector<int>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size();) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    if (i) s += ",";
    s += std::to_string(p[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s + ")";
}

std::vector<int> parse_partition(const std::string& s) {
  std::vector<int> parts;
  std::string body = s;
  if (!body.empty() && body.front() == '(') body = body.substr(1);
  if (!body.empty() && body.back() == ')') body.pop_back();
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto hat = tok.find('^');
    int part = std::stoi(tok.substr(0, hat));
    int mult = hat == std::string::npos ? 1 : std::stoi(tok.substr(hat + 1));
    if (part < 1 || mult < 1) throw std::invalid_argument("bad partition '" + s + "'");
    for (int k = 0; k < mult; ++k) parts.push_back(part);
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return parts;
}

std::string ClassInvariants::key() const {
  std::string s;
  for (const auto& b : blocks) s += "[" + b.factor + "]" + partition_str(b.partition);
  return s;
}

}  // namespace sheetslice
