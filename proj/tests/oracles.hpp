#pragma once

// Reference computations for the tests, written without the library's
// arithmetic: machine integers, brute force, textbook algorithms.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<long long>>;

// Invariant factors of an integer matrix by naive Smith reduction over long long.
inline std::vector<long long> invariant_factors(Mat a) {
  const std::size_t m = a.size(), n = m ? a[0].size() : 0;
  std::vector<long long> d;
  std::size_t t = 0;
  while (t < m && t < n) {
    // smallest nonzero entry in the remaining block
    std::size_t pr = m, pc = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (pr == m || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) pr = i, pc = j;
    if (pr == m) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = true;
    for (std::size_t i = t + 1; i < m; ++i) {
      long long q = a[i][t] / a[t][t];
      for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
      if (a[i][t]) clean = false;
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      long long q = a[t][j] / a[t][t];
      for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
      if (a[t][j]) clean = false;
    }
    if (!clean) continue;
    // divisibility: fold a non-multiple into the pivot row
    bool divides = true;
    for (std::size_t i = t + 1; i < m && divides; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        if (a[i][j] % a[t][t]) {
          for (std::size_t k = t; k < n; ++k) a[t][k] += a[i][k];
          divides = false;
          break;
        }
    if (!divides) continue;
    d.push_back(std::llabs(a[t][t]));
    ++t;
  }
  return d;
}

inline std::size_t rank_of(const Mat& a) {
  std::size_t r = 0;
  for (long long x : invariant_factors(a)) r += x != 0;
  return r;
}

// Homology of a chain complex given by integer boundary matrices:
// d[n] maps C_n (columns) to C_{n-1} (rows); dims[n] = rank C_n.
struct Homology {
  std::size_t rank = 0;
  std::vector<long long> torsion;
  bool operator==(const Homology&) const = default;
};

inline std::map<int, Homology> chain_homology(const std::map<int, int>& dims, const std::map<int, Mat>& d) {
  std::map<int, Homology> out;
  auto mat = [&](int n) -> Mat {
    auto it = d.find(n);
    if (it != d.end()) return it->second;
    int rows = dims.count(n - 1) ? dims.at(n - 1) : 0, cols = dims.count(n) ? dims.at(n) : 0;
    return Mat(rows, std::vector<long long>(cols, 0));
  };
  for (const auto& [n, dim] : dims) {
    const std::size_t rk_out = rank_of(mat(n));
    const auto inv_in = invariant_factors(mat(n + 1));
    Homology h;
    std::size_t rk_in = 0;
    for (long long x : inv_in)
      if (x) {
        ++rk_in;
        if (x > 1) h.torsion.push_back(x);
      }
    h.rank = dim - rk_out - rk_in;
    std::sort(h.torsion.begin(), h.torsion.end());
    out[n] = h;
  }
  return out;
}

// Groups as multiplication tables.
using Table = std::vector<std::vector<int>>;

inline bool closed(const Table& g, const std::vector<int>& s) {
  std::set<int> in(s.begin(), s.end());
  for (int a : s)
    for (int b : s)
      if (!in.count(g[a][b])) return false;
  return true;
}

// All subgroups by closing every subset of generators of size <= 2 (enough
// for the corpus groups, whose subgroups are all 2-generated), deduplicated.
inline std::set<std::vector<int>> all_subgroups(const Table& g) {
  const int n = static_cast<int>(g.size());
  auto close = [&](std::vector<int> gens) {
    std::set<int> s{0};
    s.insert(gens.begin(), gens.end());
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<int> cur(s.begin(), s.end());
      for (int a : cur)
        for (int b : cur)
          if (s.insert(g[a][b]).second) grew = true;
    }
    return std::vector<int>(s.begin(), s.end());
  };
  std::set<std::vector<int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) out.insert(close({a, b}));
  return out;
}

inline int inverse(const Table& g, int a) {
  for (int b = 0; b < int(g.size()); ++b)
    if (g[a][b] == 0) return b;
  return -1;
}

inline std::vector<int> conjugate(const Table& g, int x, const std::vector<int>& s) {
  std::vector<int> out;
  const int xi = inverse(g, x);
  for (int a : s) out.push_back(g[g[x][a]][xi]);
  std::sort(out.begin(), out.end());
  return out;
}

inline int subgroup_classes(const Table& g) {
  auto subs = all_subgroups(g);
  std::set<std::vector<int>> seen;
  int classes = 0;
  for (const auto& s : subs) {
    if (seen.count(s)) continue;
    ++classes;
    for (int x = 0; x < int(g.size()); ++x) seen.insert(conjugate(g, x, s));
  }
  return classes;
}

inline Mat random_matrix(std::mt19937_64& rng, int rows, int cols, int bound) {
  Mat m(rows, std::vector<long long>(cols));
  for (auto& r : m)
    for (auto& x : r) x = static_cast<long long>(rng() % (2 * bound + 1)) - bound;
  return m;
}

}  // namespace oracle
