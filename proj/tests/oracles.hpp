// Test-local oracles, kept independent of the library's implementation
// paths: a separate union-find, Prufer-based exhaustive tree enumeration,
// brute-force isomorphism search, and a recursive skein-style bracket.

#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "plumbline/link.hpp"
#include "plumbline/tree.hpp"

namespace oracles {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  int classes() {
    std::set<int> roots;
    for (size_t i = 0; i < parent.size(); ++i) roots.insert(find(static_cast<int>(i)));
    return static_cast<int>(roots.size());
  }
};

// Components of a PD code by merging under pair and over pair at each
// crossing; crossingless arcs stay singletons.
inline int pd_component_count(const plumbline::LinkDiagram& l) {
  std::vector<int> arcs = l.arc_ids();
  std::map<int, int> dense;
  for (size_t i = 0; i < arcs.size(); ++i) dense[arcs[i]] = static_cast<int>(i);
  Dsu dsu(static_cast<int>(arcs.size()));
  for (const plumbline::Crossing& x : l.crossings) {
    dsu.unite(dense.at(x.arcs[0]), dense.at(x.arcs[2]));
    dsu.unite(dense.at(x.arcs[1]), dense.at(x.arcs[3]));
  }
  return dsu.classes();
}

// Every labelled tree on k vertices via Prufer sequences (k <= 7 or so).
inline std::vector<plumbline::Tree> all_labelled_trees(int k) {
  std::vector<plumbline::Tree> out;
  if (k == 1) {
    plumbline::Tree t;
    t.vertices = {0};
    out.push_back(t);
    return out;
  }
  int len = k - 2;
  std::vector<int> seq(len, 0);
  while (true) {
    out.push_back(plumbline::tree_from_prufer(seq, k));
    int i = len - 1;
    while (i >= 0 && seq[i] == k - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return out;
}

inline std::vector<plumbline::LBTree> all_lbtrees_on(const plumbline::Tree& t) {
  std::vector<plumbline::LBTree> out;
  int m = static_cast<int>(t.edges.size());
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    plumbline::Bicolouring c;
    for (int e = 0; e < m; ++e) c.colour[e] = (mask >> e) & 1;
    out.push_back(plumbline::bipartitions_from_bicolouring(t, c));
  }
  return out;
}

// Brute-force isomorphism: try every vertex bijection, demand edges map to
// edges and each vertex's partition maps to the image partition up to swap.
inline bool brute_isomorphic(const plumbline::LBTree& a, const plumbline::LBTree& b) {
  const auto& va = a.tree.vertices;
  const auto& vb = b.tree.vertices;
  if (va.size() != vb.size() || a.tree.edges.size() != b.tree.edges.size()) return false;
  std::vector<int> perm(vb.begin(), vb.end());
  std::sort(perm.begin(), perm.end());
  do {
    std::map<int, int> f;
    for (size_t i = 0; i < va.size(); ++i) f[va[i]] = perm[i];
    std::map<int, int> edge_image;  // edge id of a -> edge id of b
    bool ok = true;
    for (size_t e = 0; e < a.tree.edges.size() && ok; ++e) {
      auto img = b.tree.find_edge(f[a.tree.edges[e].u], f[a.tree.edges[e].v]);
      if (!img)
        ok = false;
      else
        edge_image[static_cast<int>(e)] = *img;
    }
    if (!ok) continue;
    for (int v : va) {
      const auto& pa = a.parts.at(v);
      plumbline::EdgeSet ia, ib;
      for (int e : pa.first) ia.insert(edge_image.at(e));
      for (int e : pa.second) ib.insert(edge_image.at(e));
      const auto& pb = b.parts.at(f[v]);
      bool same = ia == pb.first && ib == pb.second;
      bool swapped = ia == pb.second && ib == pb.first;
      if (!same && !swapped) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Recursive skein-style bracket: smooth the first crossing both ways.
// Independent of the library's state-sum loop.
inline plumbline::LaurentPoly skein_bracket(const plumbline::LinkDiagram& l) {
  using plumbline::LaurentPoly;
  struct Pd {
    std::vector<std::array<int, 4>> xs;
    std::vector<int> arcs;
  };
  std::function<LaurentPoly(Pd)> go = [&](Pd pd) -> LaurentPoly {
    if (pd.xs.empty()) {
      // count remaining loops: all arcs are free circles now
      LaurentPoly delta = LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2);
      return delta.pow(static_cast<unsigned>(pd.arcs.size()) - 1);
    }
    std::array<int, 4> x = pd.xs.back();
    pd.xs.pop_back();
    auto smooth = [&](int a1, int a2, int b1, int b2) {
      Pd next = pd;
      // identify arcs a1~a2 and b1~b2 by renaming
      auto rename = [&](Pd& p, int from, int to) {
        if (from == to) return;
        for (auto& t : p.xs)
          for (int& a : t)
            if (a == from) a = to;
        p.arcs.erase(std::remove(p.arcs.begin(), p.arcs.end(), from), p.arcs.end());
      };
      rename(next, std::max(a1, a2), std::min(a1, a2));
      int b1r = b1 == std::max(a1, a2) ? std::min(a1, a2) : b1;
      int b2r = b2 == std::max(a1, a2) ? std::min(a1, a2) : b2;
      rename(next, std::max(b1r, b2r), std::min(b1r, b2r));
      return next;
    };
    LaurentPoly a_part = go(smooth(x[0], x[1], x[2], x[3])).shifted(1, 1);
    LaurentPoly b_part = go(smooth(x[0], x[3], x[1], x[2])).shifted(1, -1);
    return a_part + b_part;
  };
  Pd pd;
  for (const plumbline::Crossing& x : l.crossings) pd.xs.push_back(x.arcs);
  pd.arcs = l.arc_ids();
  return go(pd);
}

}  // namespace oracles
