// Naive reference computations used to cross-check the engine. Everything
// here works straight off the finite composition tables with brute-force
// enumeration and deliberately shares no code with the library internals.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "coend/fincat.hpp"
#include "coend/prof.hpp"

namespace oracle {

// All sequences of object ids with length <= bound (table objects all count 1
// toward the size budget, so the length cap is the only constraint).
inline std::set<std::vector<int>> seq_window(const coend::FinCat& a, int bound) {
  std::set<std::vector<int>> out;
  std::vector<std::vector<int>> frontier{{}};
  out.insert(std::vector<int>{});
  for (int len = 1; len <= bound; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& s : frontier)
      for (int o = 0; o < a.object_count(); ++o) {
        auto t = s;
        t.push_back(o);
        out.insert(t);
        next.push_back(t);
      }
    frontier = std::move(next);
  }
  return out;
}

// Number of (permutation, arrow tuple) pairs from x to y: sum over all
// bijections sigma of prod_i |hom(x_i, y_sigma(i))|.
inline long long seq_hom_count(const coend::FinCat& a, const std::vector<int>& x,
                               const std::vector<int>& y) {
  if (x.size() != y.size()) return 0;
  int n = static_cast<int>(x.size());
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  long long total = 0;
  do {
    long long prod = 1;
    for (int i = 0; i < n && prod; ++i) {
      long long h = 0;
      for (int m = 0; m < a.mor_count(); ++m)
        if (a.mor(m).src == x[i] && a.mor(m).dst == y[sigma[i]]) ++h;
      prod *= h;
    }
    total += prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}


// ---------------------------------------------------------------------------
// Brute-force composite of two profunctors. Triples (b, x, y) over every
// middle object are glued by relations coming from EVERY middle morphism
// (not just generators) and flood-filled with a local disjoint-set, so the
// partition is computed by a route disjoint from the engine's quotient.

struct BruteCoend {
  std::vector<std::array<int, 3>> triples;           // (b, x, y), enumeration order
  std::map<std::array<int, 3>, int> index;
  std::vector<int> root;                             // DSU parent, flattened

  int find(int v) {
    while (root[v] != v) v = root[v] = root[root[v]];
    return v;
  }
  void unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) root[std::max(x, y)] = std::min(x, y);
  }
  int class_count() {
    int n = 0;
    for (size_t v = 0; v < root.size(); ++v)
      if (find((int)v) == (int)v) ++n;
    return n;
  }
};

// Composite cell (c, a) of n after m, for n: B -> C and m: A -> B.
inline BruteCoend brute_coend(const coend::Profunctor& n, const coend::Profunctor& m, int c, int a) {
  const coend::Category& mid = *n.dom();
  BruteCoend out;
  for (int b = 0; b < mid.object_count(); ++b) {
    int nx = n.cell_size(c, b), my = m.cell_size(b, a);
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < my; ++y) {
        out.index[{b, x, y}] = (int)out.triples.size();
        out.triples.push_back({b, x, y});
      }
  }
  out.root.resize(out.triples.size());
  std::iota(out.root.begin(), out.root.end(), 0);
  for (int b = 0; b < mid.object_count(); ++b)
    for (int b2 = 0; b2 < mid.object_count(); ++b2)
      for (int i = 0; i < mid.hom_size(b, b2); ++i) {
        coend::MorRef f{b, b2, i};
        int nx = n.cell_size(c, b), my2 = m.cell_size(b2, a);
        for (int x = 0; x < nx; ++x)
          for (int y2 = 0; y2 < my2; ++y2)
            out.unite(out.index.at({b, x, m.lact(f, a, y2)}),
                      out.index.at({b2, n.ract(f, c, x), y2}));
      }
  return out;
}
}  // namespace oracle
