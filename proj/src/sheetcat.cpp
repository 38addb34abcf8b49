#include "sheetslice/sheetcat.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace sheetslice {

namespace {

std::vector<int> range_vec(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

std::string part_str(std::vector<int> p) {
  p.erase(std::remove(p.begin(), p.end(), 0), p.end());
  std::sort(p.begin(), p.end(), std::greater<>());
  return partition_str(p);
}

std::vector<int> parts(std::initializer_list<std::pair<int, int>> spec) {
  std::vector<int> p;
  for (auto [part, mult] : spec)
    for (int k = 0; k < mult; ++k) p.push_back(part);
  return p;
}

SheetDescriptor base(char type, int rank, Isogeny iso, const std::string& label, const std::vector<int>& pi) {
  SheetDescriptor d;
  d.type = type;
  d.rank = rank;
  d.isogeny = iso;
  d.label = label;
  d.pi = pi;
  d.w = w0_wPi(*RootSystem::build(type, rank), pi).w;
  return d;
}

std::string cite(char type, const std::string& what) {
  return std::string("type ") + type + " case list: " + what;
}

void catalog_A(int n, Isogeny iso, std::vector<SheetDescriptor>& out) {
  const int N = n + 1;
  for (int m = 1; 2 * m <= N; ++m) {
    auto d = base('A', n, iso, "S_" + std::to_string(m), range_vec(m, n - m - 1));
    d.m = m;
    d.family = FamilyKind::A;
    d.semisimple = "lambda, mu with multiplicities " + std::to_string(N - m) + ", " + std::to_string(m);
    d.unipotent = {part_str(parts({{2, m}, {1, N - 2 * m}}))};
    d.twists = {"z in Z(G)"};
    d.components = 1LL << (m - 1);
    d.component_shape = "graphs of (a,b) -> (a, b, a^2/b + b), one per sign vector (1, eps_2..eps_m)";
    d.stratum = d.unipotent[0];
    d.citation = cite('A', "sheet S_m of classes with eigenvalue multiplicities (n+1-m, m)");
    if (iso != Isogeny::Classical)
      d.notes.push_back("inside SL: components meet det = 1 in curves a^{2m} b^{n+1-2m} = +-1, not reduced when p divides gcd(2m, n+1-2m)");
    out.push_back(std::move(d));
  }
}

void catalog_B(int n, Isogeny iso, std::vector<SheetDescriptor>& out) {
  {
    auto d = base('B', n, iso, "S", {});
    d.family = FamilyKind::BS;
    d.semisimple = "1, lambda, lambda^-1 with multiplicities 1, " + std::to_string(n) + ", " + std::to_string(n);
    d.unipotent = {n % 2 ? part_str(parts({{3, 1}, {2, n - 1}})) : part_str(parts({{3, 1}, {2, n - 2}, {1, 2}}))};
    d.twists = {"rho_n u, u of partition " +
                (n % 2 == 0 ? part_str(parts({{2, n}})) : part_str(parts({{2, n - 1}, {1, 2}})))};
    d.components = 1LL << (2 * n - 1);
    d.component_shape = "affine lines indexed by E in {+-1}^n and eta in {+-1}^{n-1}";
    d.stratum = d.unipotent[0];
    d.stratum_smooth = n != 2;
    d.citation = cite('B', "sheet S, 2^{2n-1} affine lines");
    out.push_back(std::move(d));
  }
  {
    auto d = base('B', n, iso, "S'", range_vec(2, n - 1));
    d.family = FamilyKind::BSp;
    d.semisimple = "lambda, lambda^-1, 1 with multiplicities 1, 1, " + std::to_string(2 * n - 1);
    d.unipotent = {part_str(parts({{3, 1}, {1, 2 * n - 2}}))};
    d.components = 4;
    d.component_shape = "affine lines indexed by (eps, eta) in {+-1}^2";
    d.stratum = d.unipotent[0];
    d.stratum_smooth = n != 2;
    d.citation = cite('B', "sheet S', 4 affine lines");
    if (n == 2) d.notes.push_back("S and S' meet in O_(3,1^2) when n = 2");
    out.push_back(std::move(d));
  }
}

void catalog_C(int n, Isogeny iso, std::vector<SheetDescriptor>& out) {
  const bool hyp = n >= 3;
  auto s1 = base('C', n, iso, "S1", range_vec(2, n - 1));
  s1.family = FamilyKind::CS1;
  s1.semisimple = "lambda, lambda^-1, 1 with multiplicities 1, 1, " + std::to_string(2 * n - 2);
  s1.unipotent = {part_str(parts({{2, 2}, {1, 2 * n - 4}}))};
  s1.twists = {"sigma_1 x_{2eps_1}(1)"};
  s1.components = hyp ? 4 : 0;
  s1.component_shape = hyp ? "affine lines indexed by (eps, eta) in {+-1}^2" : "not determined outside the rank hypothesis";
  s1.stratum = s1.unipotent[0];
  s1.in_hypothesis = hyp;
  s1.stratum_smooth = hyp;
  s1.citation = cite('C', "sheets +-S1, 4 affine lines each");
  auto m1 = s1;
  m1.label = "-S1";
  m1.twin_of = "S1";
  m1.semisimple = "lambda, lambda^-1, -1 with multiplicities 1, 1, " + std::to_string(2 * n - 2);
  m1.twists = {"-sigma_1 x_{2eps_1}(1)"};
  m1.unipotent = {"-" + s1.unipotent[0]};
  auto s2 = base('C', n, iso, "S2", {});
  s2.family = FamilyKind::CS2;
  s2.semisimple = "lambda, lambda^-1 with multiplicities " + std::to_string(n) + ", " + std::to_string(n);
  s2.unipotent = {part_str(parts({{2, n}})), "-" + part_str(parts({{2, n}}))};
  s2.components = 1LL << n;
  s2.component_shape = "affine lines indexed by E in {+-1}^n";
  s2.stratum = s2.unipotent[0];
  s2.in_hypothesis = hyp;
  s2.stratum_smooth = hyp;
  s2.citation = cite('C', "sheet S2, 2^n affine lines");
  if (!hyp) {
    for (auto* d : {&s1, &m1, &s2}) {
      d->notes.push_back("rank 2 lies outside the rank hypothesis; cross-listed with B2 under the exceptional isogeny");
      d->stratum_smooth = false;
    }
  }
  out.push_back(std::move(s1));
  out.push_back(std::move(m1));
  out.push_back(std::move(s2));
}

void catalog_D(int n, Isogeny iso, std::vector<SheetDescriptor>& out) {
  const int h = n / 2;
  if (n % 2 == 0) {
    std::vector<int> pi;
    for (int i = 0; i <= n - 2; i += 2) pi.push_back(i);
    auto s = base('D', n, iso, "S", pi);
    s.family = FamilyKind::DS;
    s.semisimple = "lambda, lambda^-1 with multiplicities " + std::to_string(n) + ", " + std::to_string(n) +
                   " (eigenspaces in one isotropic family)";
    s.unipotent = {part_str(parts({{2, n}})) + "'", "-" + part_str(parts({{2, n}})) + "'"};
    s.components = 1LL << h;
    s.component_shape = "affine lines indexed by eps in {+-1}^h";
    s.stratum = s.unipotent[0];
    s.citation = cite('D', "sheet S for even rank, 2^h affine lines");
    auto t = s;
    t.label = "theta(S)";
    t.twin_of = "S";
    t.pi.back() = n - 1;
    t.w = w0_wPi(*RootSystem::build('D', n), t.pi).w;
    t.unipotent = {part_str(parts({{2, n}})) + "''", "-" + part_str(parts({{2, n}})) + "''"};
    t.stratum = t.unipotent[0];
    out.push_back(std::move(s));
    out.push_back(std::move(t));
  } else {
    std::vector<int> pi;
    for (int i = 0; i <= n - 3; i += 2) pi.push_back(i);
    auto r = base('D', n, iso, "R", pi);
    r.family = FamilyKind::DR;
    r.semisimple = "lambda, lambda^-1 with multiplicities " + std::to_string(n) + ", " + std::to_string(n);
    r.unipotent = {part_str(parts({{2, n - 1}, {1, 2}})), "-" + part_str(parts({{2, n - 1}, {1, 2}}))};
    r.components = 1LL << h;
    r.component_shape = "copies of k^* indexed by eps in {+-1}^h, coordinate zeta";
    r.stratum = r.unipotent[0];
    r.stratum_smooth = false;
    r.citation = cite('D', "sheets R and theta(R) for odd rank");
    r.notes.push_back("R and theta(R) coincide as sets: for odd rank the two eigenspaces lie in opposite isotropic families");
    auto t = r;
    t.label = "theta(R)";
    t.twin_of = "R";
    out.push_back(std::move(r));
    out.push_back(std::move(t));
  }
  auto sp = base('D', n, iso, "S'", range_vec(2, n - 1));
  sp.family = FamilyKind::DSp;
  sp.semisimple = "lambda, lambda^-1, 1 with multiplicities 1, 1, " + std::to_string(2 * n - 2);
  sp.unipotent = {part_str(parts({{3, 1}, {1, 2 * n - 3}}))};
  sp.twists = {"-1 times the same data"};
  sp.components = 4;
  sp.component_shape = "affine lines indexed by (eps, eta) in {+-1}^2";
  sp.stratum = sp.unipotent[0];
  sp.citation = cite('D', "sheet S', 4 affine lines");
  out.push_back(std::move(sp));
}

void catalog_E(int n, Isogeny iso, std::vector<SheetDescriptor>& out) {
  if (n == 6) {
    auto d = base('E', 6, iso, "S", {2, 3, 4});
    d.family = FamilyKind::E6;
    d.semisimple = "p_{2,a}, a^3 != 0, 1 (centralizer D5 T1)";
    d.unipotent = {"2A1"};
    d.twists = {"z O_2A1, z in Z(G)"};
    d.components = 2;
    d.component_shape = "two copies of the image of the curve x^3 = y^2, x, y != 0";
    d.stratum = "2A1";
    d.citation = cite('E', "E6 sheet through O_2A1");
    out.push_back(std::move(d));
  } else if (n == 7) {
    auto d = base('E', 7, iso, "S", {1, 2, 3, 4});
    d.family = FamilyKind::E7;
    d.semisimple = "q_{3,a}, a^2 != 0, 1 (centralizer E6 T1)";
    d.unipotent = {"3A1''"};
    d.twists = {"z O_3A1'', z in Z(G)"};
    d.components = 8;
    d.component_shape = "copies of k^* indexed by (eps, eta, theta) in {+-1}^3";
    d.stratum = "3A1''";
    d.citation = cite('E', "E7 sheet through O_3A1''");
    out.push_back(std::move(d));
  }
}

}  // namespace

std::string family_label(FamilyKind k) {
  switch (k) {
    case FamilyKind::None: return "none";
    case FamilyKind::A: return "A";
    case FamilyKind::BS: return "B-S";
    case FamilyKind::BSp: return "B-S'";
    case FamilyKind::CS1: return "C-S1";
    case FamilyKind::CS2: return "C-S2";
    case FamilyKind::DS: return "D-S";
    case FamilyKind::DSp: return "D-S'";
    case FamilyKind::DR: return "D-R";
    case FamilyKind::E6: return "E6";
    case FamilyKind::E7: return "E7";
  }
  return "?";
}

std::string SheetDescriptor::id() const { return std::string(1, type) + std::to_string(rank) + ":" + label; }

std::vector<SheetDescriptor> sheet_catalog(char type, int rank, Isogeny iso) {
  std::vector<SheetDescriptor> out;
  switch (type) {
    case 'A':
      if (rank < 1) throw std::invalid_argument("A needs rank >= 1");
      catalog_A(rank, iso, out);
      break;
    case 'B':
      if (rank < 2) throw std::invalid_argument("B needs rank >= 2");
      catalog_B(rank, iso, out);
      break;
    case 'C':
      if (rank < 2) throw std::invalid_argument("C needs rank >= 2");
      catalog_C(rank, iso, out);
      break;
    case 'D':
      if (rank < 4) throw std::invalid_argument("D needs rank >= 4");
      catalog_D(rank, iso, out);
      break;
    case 'E':
      if (rank < 6 || rank > 8) throw std::invalid_argument("E needs rank 6, 7 or 8");
      catalog_E(rank, iso, out);
      break;
    case 'F':
      if (rank != 4) throw std::invalid_argument("F needs rank 4");
      break;
    case 'G':
      if (rank != 2) throw std::invalid_argument("G needs rank 2");
      break;
    default: throw std::invalid_argument("unknown type " + std::string(1, type));
  }
  return out;
}

const SheetDescriptor& find_sheet(const std::vector<SheetDescriptor>& cat, const std::string& label) {
  for (const auto& d : cat)
    if (d.label == label) return d;
  std::string have;
  for (const auto& d : cat) have += (have.empty() ? "" : ", ") + d.label;
  throw std::invalid_argument("no sheet '" + label + "' (catalog has: " + (have.empty() ? "nothing" : have) + ")");
}

SmoothnessVerdict smoothness_verdict(char type, int rank, const std::string& stratum) {
  auto cat = sheet_catalog(type, rank);
  SmoothnessVerdict v;
  std::string key = stratum;
  if (key.rfind("stratum:", 0) == 0) {
    key = find_sheet(cat, key.substr(8)).stratum;
  } else if (key.empty() || (key[0] != '(' && key[0] != '-' && !std::isdigit(static_cast<unsigned char>(key[0])))) {
    find_sheet(cat, key);
    v.reason = "sheets of spherical classes are smooth";
    return v;
  }
  if (!key.empty() && key[0] == '-') key = key.substr(1);
  auto strip = [](std::string s) {
    while (!s.empty() && s.back() == '\'') s.pop_back();
    return s;
  };
  key = strip(key);
  std::string norm = key;
  if (!key.empty() && key[0] == '(') norm = partition_str(parse_partition(key));
  if (type == 'B' && rank == 2 && norm == "(3,1^2)") {
    v.smooth = false;
    v.reason = "S and S' share a class when n = 2";
    v.witness = "O_(3,1^2) in S and S'";
    return v;
  }
  if (type == 'C' && rank == 2 && norm == "(2^2)") {
    v.smooth = false;
    v.reason = "S1 and S2 share a class in rank 2 (the B2 exception under the exceptional isogeny)";
    v.witness = "+-O_(2^2) in S1 and S2";
    return v;
  }
  if (type == 'D' && rank % 2 == 1 && norm == partition_str(parts({{2, rank - 1}, {1, 2}}))) {
    v.smooth = false;
    v.reason = "R and theta(R) share a class";
    v.witness = "+-O_" + norm + " in R and theta(R)";
    return v;
  }
  v.reason = "strata of spherical classes away from the exceptional families are smooth";
  return v;
}

Matrix<Rat> theta_matrix(int n) {
  Matrix<Rat> t = Matrix<Rat>::identity(static_cast<std::size_t>(2 * n), Rat(0));
  const auto a = static_cast<std::size_t>(n - 1), b = static_cast<std::size_t>(2 * n - 1);
  t(a, a) = Rat(0);
  t(b, b) = Rat(0);
  t(a, b) = Rat(1);
  t(b, a) = Rat(1);
  return t;
}

SliceRepresentative slice_representative(const SheetDescriptor& d) {
  SliceRepresentative r;
  const int n = d.rank;
  auto Z = [](int N) { return Matrix<Rat>(static_cast<std::size_t>(N), static_cast<std::size_t>(N), Rat(0)); };
  auto put = [](Matrix<Rat>& m, int i, int j, long long v) { m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rat(v); };
  switch (d.family) {
    case FamilyKind::A: {
      const int N = n + 1, m = d.m;
      r.wdot = Z(N);
      for (int i = 0; i < m; ++i) {
        put(r.wdot, i, N - 1 - i, 1);
        put(r.wdot, N - 1 - i, i, -1);
      }
      for (int i = m; i < N - m; ++i) put(r.wdot, i, i, 1);
      r.schema = "wdot diag(a_1..a_m, 1.., a_m^-1 ..) u with a_i = eps_i a, zeta_i = eps_i zeta, -a zeta = a^2/b + b";
      r.params = {{"eps", "{1} x {+-1}^{m-1}"}, {"a", "k^*"}, {"b", "k^*"}, {"zeta", "k"}};
      break;
    }
    case FamilyKind::BS: {
      r.wdot = Z(2 * n + 1);
      put(r.wdot, 0, 0, n % 2 ? -1 : 1);
      for (int i = 1; i <= n; ++i) {
        put(r.wdot, i, n + i, 1);
        put(r.wdot, n + i, i, 1);
      }
      r.schema = "X(E, v, Q, M) with M = (-1/2) v v^T + A";
      r.params = {{"E", "{+-1}^n"}, {"v", "k^n"}, {"Q", "unipotent upper triangular n x n"}, {"A", "skew n x n"}};
      break;
    }
    case FamilyKind::BSp: {
      r.wdot = Matrix<Rat>::identity(static_cast<std::size_t>(2 * n + 1), Rat(0));
      for (int i = 1; i <= 2; ++i) {
        put(r.wdot, i, i, 0);
        put(r.wdot, n + i, n + i, 0);
        put(r.wdot, i, n + i, 1);
        put(r.wdot, n + i, i, 1);
      }
      r.schema = "wdot t(eps, eta, c) x_{e1}(p3) x_{e2}(p4) x_{e1-e2}(p1) x_{e1+e2}(p2)";
      r.params = {{"eps", "{+-1}"}, {"eta", "{+-1}"}, {"c", "(k^*)^{n-2}"}, {"p1..p4", "k"}};
      break;
    }
    case FamilyKind::CS1: {
      r.wdot = Matrix<Rat>::identity(static_cast<std::size_t>(2 * n), Rat(0));
      for (int i = 0; i < 2; ++i) {
        put(r.wdot, i, i, 0);
        put(r.wdot, n + i, n + i, 0);
        put(r.wdot, i, n + i, 1);
        put(r.wdot, n + i, i, -1);
      }
      if (d.label == "-S1") r.wdot = Rat(-1) * r.wdot;
      r.schema = "X(eps, eta, b, xi, x, y, z)";
      r.params = {{"eps", "{+-1}"}, {"eta", "{+-1}"}, {"b", "(k^*)^{n-2}"}, {"xi, x, y, z", "k"}};
      break;
    }
    case FamilyKind::CS2: {
      r.wdot = Z(2 * n);
      for (int i = 0; i < n; ++i) {
        put(r.wdot, i, n + i, 1);
        put(r.wdot, n + i, i, -1);
      }
      r.schema = "x(E, V, X) = [[0, E V^-T], [-E V, -E V X]]";
      r.params = {{"E", "{+-1}^n"}, {"V", "unipotent lower triangular n x n"}, {"X", "symmetric n x n"}};
      break;
    }
    case FamilyKind::DS:
    case FamilyKind::DR: {
      r.wdot = Z(2 * n);
      const int pairs = n / 2;
      for (int k = 0; k < pairs; ++k) {
        const int a = 2 * k, b = 2 * k + 1;
        put(r.wdot, a, n + b, 1);
        put(r.wdot, b, n + a, -1);
        put(r.wdot, n + a, b, 1);
        put(r.wdot, n + b, a, -1);
      }
      if (n % 2) {
        put(r.wdot, n - 1, n - 1, 1);
        put(r.wdot, 2 * n - 1, 2 * n - 1, 1);
      }
      if (d.label == "theta(S)" || d.label == "theta(R)") {
        Matrix<Rat> t = theta_matrix(n);
        r.wdot = t * r.wdot * t;
      }
      if (d.family == FamilyKind::DS) {
        r.schema = "X(eps, x) with blocks E_i = [[0, eps_i], [-eps_i, 0]] and diagonal -eps_i x_i";
        r.params = {{"eps", "{+-1}^h"}, {"x", "k^h"}};
      } else {
        r.schema = "X(eps, x, zeta) as for S on the first 2h pairs, diag(zeta, zeta^-1) on e_n, e_-n";
        r.params = {{"eps", "{+-1}^h"}, {"x", "k^h"}, {"zeta", "k^*"}};
      }
      break;
    }
    case FamilyKind::DSp: {
      r.wdot = Matrix<Rat>::identity(static_cast<std::size_t>(2 * n), Rat(0));
      for (int i = 0; i < 2; ++i) {
        put(r.wdot, i, i, 0);
        put(r.wdot, n + i, n + i, 0);
        put(r.wdot, i, n + i, 1);
        put(r.wdot, n + i, i, 1);
      }
      r.schema = "wdot t(eps, eta, c) x_{e1-e2}(p1) x_{e1+e2}(p2)";
      r.params = {{"eps", "{+-1}"}, {"eta", "{+-1}"}, {"c", "(k^*)^{n-2}"}, {"p1, p2", "k"}};
      break;
    }
    case FamilyKind::E6:
    case FamilyKind::E7:
      throw std::invalid_argument("root-datum only: no matrix representative for type E");
    case FamilyKind::None: throw std::invalid_argument("descriptor has no slice family");
  }
  return r;
}

DescriptorCheck check_descriptor(const SheetDescriptor& d) {
  DescriptorCheck c;
  auto rs = RootSystem::build(d.type, d.rank);
  c.w_matches = w0_wPi(*rs, d.pi).w == d.w;
  c.involution = d.w.is_involution();
  c.bruhat_max = is_bruhat_max_in_class(d.w);
  if (d.type != 'E') {
    if (d.components == 0) return c;
    auto ctx = GroupContext::make(d.type, d.rank);
    auto rep = slice_representative(d);
    if (!in_group(ctx, rep.wdot)) {
      c.representative_ok = false;
      c.detail = "representative is not in " + ctx.name();
    } else if (!(bruhat_word(ctx, rep.wdot) == d.w)) {
      c.representative_ok = false;
      c.detail = "representative lies in a different Bruhat cell";
    }
  }
  return c;
}

std::string catalog_report(char type, int rank, Isogeny iso) {
  auto cat = sheet_catalog(type, rank, iso);
  std::ostringstream os;
  os << "# " << type << rank << " (" << isogeny_label(iso) << ")\n";
  if (cat.empty()) {
    os << "no non-trivial sheets of spherical classes\n";
    return os.str();
  }
  os << "sheet | semisimple | unipotent | Pi | l(w) | rk(1-w) | dim | components | sheet | stratum | citation\n";
  for (const auto& d : cat) {
    std::string pi = "{";
    for (std::size_t k = 0; k < d.pi.size(); ++k) pi += (k ? "," : "") + std::string("a") + std::to_string(d.pi[k] + 1);
    pi += "}";
    std::string uni;
    for (std::size_t k = 0; k < d.unipotent.size(); ++k) uni += (k ? " " : "") + d.unipotent[k];
    os << d.label << " | " << d.semisimple << " | " << uni << " | " << pi << " | " << d.length() << " | "
       << d.minus_rank() << " | " << d.class_dimension() << " | " << (d.components ? std::to_string(d.components) : "-")
       << " | " << (d.sheet_smooth ? "smooth" : "singular") << " | " << (d.stratum_smooth ? "smooth" : "singular")
       << " | " << d.citation << "\n";
    for (const auto& note : d.notes) os << "  note: " << note << "\n";
    if (!d.in_hypothesis) os << "  note: outside the rank hypothesis\n";
  }
  return os.str();
}

int EigenData::multiplicity() const {
  int s = 0;
  for (int x : partition) s += x;
  return s;
}

bool EigenData::semisimple() const {
  return std::all_of(partition.begin(), partition.end(), [](int x) { return x == 1; });
}

namespace {

bool parts_at_most(const std::vector<int>& p, int bound) {
  return std::all_of(p.begin(), p.end(), [bound](int x) { return x <= bound; });
}

int count_part(const std::vector<int>& p, int v) { return static_cast<int>(std::count(p.begin(), p.end(), v)); }

bool orthogonal_spherical_unipotent(const std::vector<int>& p) {
  if (!parts_at_most(p, 3) || count_part(p, 3) > 1) return false;
  return count_part(p, 2) % 2 == 0;
}

}  // namespace

SphericalVerdict classify_spherical(const GroupContext& ctx, const std::vector<EigenData>& data) {
  const EigenData* plus = nullptr;
  const EigenData* minus = nullptr;
  std::vector<const EigenData*> other;  // one entry per geometric eigenvalue
  int geometric = 0;
  for (const auto& e : data) {
    geometric += e.degree;
    if (e.sign == 1) plus = &e;
    else if (e.sign == -1) minus = &e;
    else
      for (int k = 0; k < e.degree; ++k) other.push_back(&e);
  }
  SphericalVerdict v;
  const char type = ctx.type();
  if (type == 'A') {
    if (geometric == 1) {
      const auto& p = data[0].partition;
      v.spherical = parts_at_most(p, 2);
      v.kind = data[0].semisimple() ? "central" : (v.spherical ? "unipotent" : "non-spherical unipotent " + partition_str(p));
      return v;
    }
    if (geometric == 2) {
      v.spherical = std::all_of(data.begin(), data.end(), [](const EigenData& e) { return e.semisimple(); });
      v.kind = v.spherical ? "semisimple" : "non-spherical mixed";
      return v;
    }
    v.kind = "non-spherical: " + std::to_string(geometric) + " eigenvalues";
    return v;
  }
  if (type != 'B' && type != 'C' && type != 'D') throw std::invalid_argument("sphericity classifier covers classical types only");
  const bool sp = type == 'C';
  if (other.empty()) {
    const bool ps = !plus || plus->semisimple();
    const bool ms = !minus || minus->semisimple();
    if (ps && ms) {
      v.spherical = true;
      v.kind = plus && minus ? "semisimple" : "central";
      return v;
    }
    if (!plus || !minus) {
      const auto& p = (plus ? plus : minus)->partition;
      v.spherical = sp ? parts_at_most(p, 2) : orthogonal_spherical_unipotent(p);
      v.kind = v.spherical ? "unipotent" : "non-spherical unipotent " + partition_str(p);
      return v;
    }
    if (!ps && !ms) {
      v.kind = "non-spherical mixed";
      return v;
    }
    const EigenData* nonss = ps ? minus : plus;
    if (sp)
      v.spherical = parts_at_most(nonss->partition, 2) && count_part(nonss->partition, 2) == 1;
    else
      v.spherical = parts_at_most(nonss->partition, 2);
    v.kind = v.spherical ? "mixed" : "non-spherical mixed";
    return v;
  }
  if (other.size() != 2) {
    v.kind = "non-spherical: " + std::to_string(other.size()) + " eigenvalues other than +-1";
    return v;
  }
  if (!other[0]->semisimple() || !other[1]->semisimple()) {
    v.kind = "non-spherical mixed";
    return v;
  }
  const int mult = other[0]->multiplicity();
  const int n = ctx.rank();
  const bool pm_ss = (!plus || plus->semisimple()) && (!minus || minus->semisimple());
  if (mult == 1) {
    v.spherical = pm_ss && ((plus != nullptr) != (minus != nullptr));
    if (type == 'B') v.spherical = v.spherical && plus;
  } else if (mult == n) {
    v.spherical = type == 'B' ? (plus && !minus) : (!plus && !minus);
  }
  v.kind = v.spherical ? "semisimple" : "non-spherical semisimple";
  return v;
}

}  // namespace sheetslice
