// Independent brute-force oracles shared by the unit tests and the acceptance binary.
#pragma once

#include "sheetslice/intmat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace oracle {

/// Gamma_w by enumeration: t = (1-w)s for s in (1/8 Z/Z)^n, keeping 4t = 0 and (1-w)(2t) = 0.
/// Elements are numerator vectors mod 8.
inline std::set<std::vector<int>> gamma_points(const sheetslice::IntMat& w) {
  const int n = w.rows();
  std::set<std::vector<int>> out;
  std::vector<int> s(static_cast<std::size_t>(n), 0);
  auto apply_1mw = [&](const std::vector<int>& x) {
    std::vector<int> r(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      long long acc = x[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) acc -= w(i, j) * x[static_cast<std::size_t>(j)];
      r[static_cast<std::size_t>(i)] = static_cast<int>(((acc % 8) + 8) % 8);
    }
    return r;
  };
  for (;;) {
    auto t = apply_1mw(s);
    bool ok = true;
    for (int x : t) ok &= (4 * x) % 8 == 0;
    std::vector<int> t2(t);
    for (auto& x : t2) x = 2 * x % 8;
    for (int x : apply_1mw(t2)) ok &= x == 0;
    if (ok) out.insert(t);
    int k = 0;
    while (k < n && ++s[static_cast<std::size_t>(k)] == 8) s[static_cast<std::size_t>(k++)] = 0;
    if (k == n) break;
  }
  return out;
}

/// Counts of elements of each order (1, 2, 4, 8) in a set of points of (1/8 Z/Z)^n.
inline std::map<int, int> order_counts(const std::set<std::vector<int>>& pts) {
  std::map<int, int> c;
  for (const auto& t : pts) {
    int ord = 1;
    for (int x : t) {
      int o = 1;
      while (x * o % 8) o *= 2;
      ord = std::max(ord, o);
    }
    ++c[ord];
  }
  return c;
}

/// Invariant factors of a finite abelian 2-group from its order counts.
inline std::vector<long long> shape_from_counts(const std::map<int, int>& counts) {
  // |G[2^k]| for k = 0..3
  long long g[4] = {0, 0, 0, 0};
  for (int k = 0; k < 4; ++k)
    for (auto [o, n] : counts)
      if (o <= (1 << k)) g[k] += n;
  int at_least[4] = {0, 0, 0, 0};
  for (int k = 1; k < 4; ++k) {
    long long r = g[k] / g[k - 1];
    while (r > 1) {
      r /= 2;
      ++at_least[k];
    }
  }
  std::vector<long long> d;
  for (int k = 1; k < 4; ++k) {
    int exact = at_least[k] - (k < 3 ? at_least[k + 1] : 0);
    for (int j = 0; j < exact; ++j) d.push_back(1LL << k);
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace oracle
