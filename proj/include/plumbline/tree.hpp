#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace plumbline {

/// Unordered edge between two vertex ids. The edge id is its index in
/// Tree::edges.
struct Edge {
  int u = 0;
  int v = 0;

  bool touches(int w) const { return u == w || v == w; }
  int other(int w) const { return u == w ? v : u; }
};

/// Finite tree over arbitrary integer vertex ids.
struct Tree {
  std::vector<int> vertices;  // sorted, unique
  std::vector<Edge> edges;    // edge id = index

  bool has_vertex(int id) const;
  int degree(int v) const;
  std::vector<int> incident_edges(int v) const;  // edge ids, ascending
  std::optional<int> find_edge(int a, int b) const;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(const std::string& msg) {
    ok = false;
    violations.push_back(msg);
  }
  std::string summary() const;
};

ValidationReport validate_tree(const Tree& t);

using EdgeSet = std::set<int>;

/// Tree with an ordered pair (A_v, B_v) of disjoint edge-id sets at each
/// vertex, together covering the incident edges. Empty parts are legal
/// (forced at leaves). All equality and canonicalization treat the pair as
/// unordered.
struct LBTree {
  Tree tree;
  std::map<int, std::pair<EdgeSet, EdgeSet>> parts;  // vertex -> (A, B)

  // Which part (0 = A, 1 = B) contains edge e at vertex v; throws if absent.
  int part_of(int v, int e) const;
  bool same_part(int v, int e1, int e2) const { return part_of(v, e1) == part_of(v, e2); }
};

struct Bicolouring {
  std::map<int, int> colour;  // edge id -> 0/1
};

ValidationReport validate_lbtree(const LBTree& t);

/// A_v = colour-0 edges at v, B_v = colour-1 edges. Errors if the colouring
/// misses an edge.
LBTree bipartitions_from_bicolouring(const Tree& t, const Bicolouring& c);

/// A bicolouring inducing the given bipartitions up to per-vertex swap.
/// Leaf induction: strip the lowest-id leaf, colour the rest, extend.
/// Unconstrained edges get colour 0. Existence is guaranteed for valid
/// input; a failure aborts with InternalError.
Bicolouring compatible_bicolouring(const LBTree& t);

/// True if a and b have identical trees and, at each vertex, equal or
/// swapped part pairs.
bool equal_mod_swap(const LBTree& a, const LBTree& b);

/// Canonical form of the bare tree under isomorphism (centre-rooted AHU).
std::string tree_canonical_code(const Tree& t);

/// Canonical form invariant under tree isomorphisms that respect the local
/// bipartitions up to per-vertex (A, B) swap. Child edges are tagged by
/// whether they share a part with the parent edge, which is swap-invariant;
/// only the root needs an explicit two-way minimum.
std::string canonical_code(const LBTree& t);
std::string canonical_code_hex(const LBTree& t);

bool is_isomorphic(const LBTree& a, const LBTree& b);

/// One representative per isomorphism class, sorted by canonical code.
std::vector<Tree> enumerate_trees(int k);

/// One representative per canonical_code class, sorted by code. Every class
/// arises from some bicolouring of some tree, so trees x colourings with
/// dedup is exhaustive.
std::vector<LBTree> enumerate_lbtrees(int k);

Tree tree_from_prufer(const std::vector<int>& seq, int k);
Tree random_tree(int k, std::mt19937_64& rng);
LBTree random_lbtree(int k, std::mt19937_64& rng);

/// Text format: one `u v [0|1]` line per edge (missing colour reads as 0);
/// a line with a single integer declares an isolated vertex; `#` starts a
/// comment. Edge ids follow line order.
LBTree parse_lbtree_text(const std::string& text);
std::string format_lbtree_text(const LBTree& t, const Bicolouring& c);
std::string format_lbtree_text(const LBTree& t);

}  // namespace plumbline
