#pragma once

// Brute-force reference computations. Nothing here calls into the library's
// search code; only FiniteGroup::mul and plain containers are used.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "sgf/group.hpp"
#include "sgf/latin.hpp"
#include "sgf/trellis.hpp"

namespace oracle {

using Table = std::vector<std::vector<int>>;

inline bool is_group_table(const Table& t) {
  const int n = static_cast<int>(t.size());
  for (const auto& row : t)
    if (static_cast<int>(row.size()) != n) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t[a][b] < 0 || t[a][b] >= n) return false;
  for (int a = 0; a < n; ++a)
    if (t[0][a] != a || t[a][0] != a) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) return false;
  for (int a = 0; a < n; ++a)
    if (std::find(t[a].begin(), t[a].end(), 0) == t[a].end()) return false;
  return true;
}

inline bool closed(const sgf::FiniteGroup& g, const std::vector<int>& s) {
  std::vector<char> in(g.order(), 0);
  for (int a : s) in[a] = 1;
  if (!in[0]) return false;
  for (int a : s)
    for (int b : s)
      if (!in[g.mul(a, b)]) return false;
  return true;
}

inline bool normal(const sgf::FiniteGroup& g, const std::vector<int>& s) {
  std::vector<char> in(g.order(), 0);
  for (int a : s) in[a] = 1;
  for (int x = 0; x < g.order(); ++x) {
    int xi = 0;
    while (g.mul(x, xi) != 0) ++xi;
    for (int a : s)
      if (!in[g.mul(g.mul(x, a), xi)]) return false;
  }
  return true;
}

// Every subset containing 0 is tested; keep n <= 16.
inline std::vector<std::vector<int>> all_subgroups(const sgf::FiniteGroup& g) {
  const int n = g.order();
  std::vector<std::vector<int>> out;
  for (std::uint32_t m = 0; m < (1u << (n - 1)); ++m) {
    std::vector<int> s{0};
    for (int k = 1; k < n; ++k)
      if (m & (1u << (k - 1))) s.push_back(k);
    if (n % static_cast<int>(s.size()) != 0) continue;
    if (closed(g, s)) out.push_back(s);
  }
  return out;
}

inline std::vector<std::vector<int>> all_normal_subgroups(const sgf::FiniteGroup& g) {
  std::vector<std::vector<int>> out;
  for (auto& s : all_subgroups(g))
    if (normal(g, s)) out.push_back(s);
  return out;
}

// Every bijection fixing 0; keep n <= 9.
inline bool isomorphic(const sgf::FiniteGroup& g, const sgf::FiniteGroup& h) {
  const int n = g.order();
  if (h.order() != n) return false;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) ok = p[g.mul(a, b)] == h.mul(p[a], p[b]);
    if (ok) return true;
  } while (std::next_permutation(p.begin() + 1, p.end()));
  return false;
}

inline bool is_hom(const sgf::FiniteGroup& g, const sgf::FiniteGroup& h, const std::vector<int>& f) {
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (f[g.mul(a, b)] != h.mul(f[a], f[b])) return false;
  return true;
}

inline bool is_bijection(const std::vector<int>& f, int n) {
  std::vector<char> seen(n, 0);
  for (int x : f) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return static_cast<int>(f.size()) == n;
}

// Left cosets a*N as sorted vectors, ordered by least element.
inline std::vector<std::vector<int>> cosets(const sgf::FiniteGroup& g, const std::vector<int>& n) {
  std::set<std::vector<int>> out;
  for (int a = 0; a < g.order(); ++a) {
    std::vector<int> c;
    for (int x : n) c.push_back(g.mul(a, x));
    std::sort(c.begin(), c.end());
    out.insert(c);
  }
  return {out.begin(), out.end()};
}

// Least k such that every state reaches every state by a walk of exactly k
// edges; walks are enumerated as sets of endpoints per start state.
inline int controllability(const sgf::TrellisGraph& g, int cap) {
  const int s = g.num_states();
  std::vector<std::vector<int>> next(s);
  for (int e = 0; e < g.num_edges(); ++e) next[g.initial[e]].push_back(g.terminal[e]);
  for (int start = 0; start < s; ++start) {
    std::sort(next[start].begin(), next[start].end());
    next[start].erase(std::unique(next[start].begin(), next[start].end()), next[start].end());
  }
  std::vector<std::vector<char>> reach(s, std::vector<char>(s, 0));
  for (int a = 0; a < s; ++a) reach[a][a] = 1;
  if (s == 1) return 0;  // the empty walk
  for (int k = 1; k <= cap; ++k) {
    std::vector<std::vector<char>> nr(s, std::vector<char>(s, 0));
    bool all = true;
    for (int a = 0; a < s; ++a) {
      for (int b = 0; b < s; ++b)
        if (reach[a][b])
          for (int c : next[b]) nr[a][c] = 1;
      for (int b = 0; b < s; ++b) all = all && nr[a][b];
    }
    reach = std::move(nr);
    if (all) return k;
  }
  return -1;
}

inline bool latin(const sgf::LatinSquare& sq) {
  const std::size_t t = sq.size();
  for (std::size_t r = 0; r < t; ++r) {
    std::set<int> row(sq[r].begin(), sq[r].end());
    if (sq[r].size() != t || row.size() != t) return false;
  }
  for (std::size_t c = 0; c < t; ++c) {
    std::set<int> col;
    for (std::size_t r = 0; r < t; ++r) col.insert(sq[r][c]);
    if (col.size() != t) return false;
  }
  return true;
}

// Superpose and count distinct ordered pairs.
inline bool orthogonal(const sgf::LatinSquare& a, const sgf::LatinSquare& b) {
  std::set<std::pair<int, int>> pairs;
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c) pairs.insert({a[r][c], b[r][c]});
  return pairs.size() == a.size() * a.size();
}

inline bool power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

inline std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool abelian(const sgf::FiniteGroup& g, const std::vector<int>& s) {
  for (int a : s)
    for (int b : s)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

// The largest element order among s, enough to tell Z4 from Z2 x Z2.
inline int max_order(const sgf::FiniteGroup& g, const std::vector<int>& s) {
  int best = 1;
  for (int a : s) {
    int k = 1, x = a;
    while (x != 0) {
      x = g.mul(x, a);
      ++k;
    }
    best = std::max(best, k);
  }
  return best;
}

}  // namespace oracle
