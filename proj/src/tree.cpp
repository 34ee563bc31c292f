#include "plumbline/tree.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "plumbline/errors.hpp"

namespace plumbline {

bool Tree::has_vertex(int id) const {
  return std::binary_search(vertices.begin(), vertices.end(), id);
}

int Tree::degree(int v) const {
  int d = 0;
  for (const Edge& e : edges)
    if (e.touches(v)) ++d;
  return d;
}

std::vector<int> Tree::incident_edges(int v) const {
  std::vector<int> out;
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].touches(v)) out.push_back(static_cast<int>(i));
  return out;
}

std::optional<int> Tree::find_edge(int a, int b) const {
  for (size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::string ValidationReport::summary() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << violations.size() << " violation(s):";
  for (const auto& v : violations) os << "\n  - " << v;
  return os.str();
}

ValidationReport validate_tree(const Tree& t) {
  ValidationReport r;
  if (t.vertices.empty()) {
    r.fail("tree has no vertices");
    return r;
  }
  if (!std::is_sorted(t.vertices.begin(), t.vertices.end())) r.fail("vertex list not sorted");
  for (size_t i = 1; i < t.vertices.size(); ++i)
    if (t.vertices[i] == t.vertices[i - 1]) r.fail("duplicate vertex id " + std::to_string(t.vertices[i]));

  std::set<std::pair<int, int>> seen;
  for (size_t i = 0; i < t.edges.size(); ++i) {
    const Edge& e = t.edges[i];
    if (e.u == e.v) r.fail("self-loop at vertex " + std::to_string(e.u));
    if (!t.has_vertex(e.u) || !t.has_vertex(e.v))
      r.fail("edge " + std::to_string(i) + " references missing vertex");
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second)
      r.fail("parallel edge between " + std::to_string(key.first) + " and " + std::to_string(key.second));
  }
  if (!r.ok) return r;

  if (t.edges.size() + 1 != t.vertices.size()) {
    r.fail("edge count " + std::to_string(t.edges.size()) + " != vertex count - 1");
    return r;
  }
  // connectivity
  std::map<int, std::vector<int>> adj;
  for (const Edge& e : t.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::set<int> reached;
  std::deque<int> queue{t.vertices.front()};
  reached.insert(t.vertices.front());
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v])
      if (reached.insert(w).second) queue.push_back(w);
  }
  if (reached.size() != t.vertices.size()) r.fail("tree is not connected");
  return r;
}

int LBTree::part_of(int v, int e) const {
  auto it = parts.find(v);
  if (it == parts.end()) throw InputError("no bipartition stored at vertex " + std::to_string(v));
  if (it->second.first.count(e)) return 0;
  if (it->second.second.count(e)) return 1;
  throw InputError("edge " + std::to_string(e) + " not in the bipartition at vertex " + std::to_string(v));
}

ValidationReport validate_lbtree(const LBTree& t) {
  ValidationReport r = validate_tree(t.tree);
  if (!r.ok) return r;
  for (int v : t.tree.vertices) {
    auto it = t.parts.find(v);
    if (it == t.parts.end()) {
      r.fail("no bipartition at vertex " + std::to_string(v));
      continue;
    }
    const EdgeSet& a = it->second.first;
    const EdgeSet& b = it->second.second;
    std::vector<int> inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    for (int e : inter)
      r.fail("non-disjoint parts at vertex " + std::to_string(v) + ": edge " + std::to_string(e) + " in both");
    EdgeSet incident;
    for (int e : t.tree.incident_edges(v)) incident.insert(e);
    EdgeSet mentioned = a;
    mentioned.insert(b.begin(), b.end());
    for (int e : incident)
      if (!mentioned.count(e))
        r.fail("edge " + std::to_string(e) + " incident to vertex " + std::to_string(v) + " missing from its bipartition");
    for (int e : mentioned)
      if (!incident.count(e))
        r.fail("edge " + std::to_string(e) + " in the bipartition at vertex " + std::to_string(v) + " but not incident");
  }
  for (const auto& [v, _] : t.parts)
    if (!t.tree.has_vertex(v)) r.fail("bipartition stored for unknown vertex " + std::to_string(v));
  return r;
}

LBTree bipartitions_from_bicolouring(const Tree& t, const Bicolouring& c) {
  for (size_t e = 0; e < t.edges.size(); ++e)
    if (!c.colour.count(static_cast<int>(e)))
      throw InputError("bicolouring misses edge " + std::to_string(e));
  LBTree out;
  out.tree = t;
  for (int v : t.vertices) {
    EdgeSet a, b;
    for (int e : t.incident_edges(v)) {
      int col = c.colour.at(e);
      if (col != 0 && col != 1) throw InputError("colour of edge " + std::to_string(e) + " is not 0 or 1");
      (col == 0 ? a : b).insert(e);
    }
    out.parts[v] = {std::move(a), std::move(b)};
  }
  return out;
}

Bicolouring compatible_bicolouring(const LBTree& t) {
  ValidationReport vr = validate_lbtree(t);
  if (!vr.ok) throw InputError("compatible_bicolouring: invalid input: " + vr.summary());

  // Strip leaves lowest-id first, then replay in reverse extending the
  // colouring consistently with the bipartition at the internal endpoint.
  struct Strip {
    int leaf;
    int edge;
    int anchor;
  };
  std::vector<Strip> order;
  std::map<int, std::set<int>> live;  // vertex -> live incident edge ids
  for (int v : t.tree.vertices) {
    auto inc = t.tree.incident_edges(v);
    live[v] = std::set<int>(inc.begin(), inc.end());
  }
  std::set<int> remaining(t.tree.vertices.begin(), t.tree.vertices.end());
  while (remaining.size() > 1) {
    int leaf = -1;
    for (int v : remaining)
      if (live[v].size() == 1) {
        leaf = v;
        break;
      }
    if (leaf < 0) throw InternalError("compatible_bicolouring: no leaf found");
    int e = *live[leaf].begin();
    int anchor = t.tree.edges[e].other(leaf);
    order.push_back({leaf, e, anchor});
    remaining.erase(leaf);
    live[anchor].erase(e);
  }

  Bicolouring c;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int e = it->edge;
    int w = it->anchor;
    int my_part = t.part_of(w, e);
    std::optional<int> forced;
    for (int o : t.tree.incident_edges(w)) {
      if (o == e || !c.colour.count(o)) continue;
      forced = t.part_of(w, o) == my_part ? c.colour[o] : 1 - c.colour[o];
      break;
    }
    c.colour[e] = forced.value_or(0);
  }

  LBTree check = bipartitions_from_bicolouring(t.tree, c);
  if (!equal_mod_swap(check, t))
    throw InternalError("compatible_bicolouring: induced bipartitions do not match input");
  return c;
}

bool equal_mod_swap(const LBTree& a, const LBTree& b) {
  if (a.tree.vertices != b.tree.vertices) return false;
  if (a.tree.edges.size() != b.tree.edges.size()) return false;
  for (size_t i = 0; i < a.tree.edges.size(); ++i) {
    auto ka = std::minmax(a.tree.edges[i].u, a.tree.edges[i].v);
    auto kb = std::minmax(b.tree.edges[i].u, b.tree.edges[i].v);
    if (ka != kb) return false;
  }
  for (int v : a.tree.vertices) {
    auto ia = a.parts.find(v);
    auto ib = b.parts.find(v);
    if (ia == a.parts.end() || ib == b.parts.end()) return false;
    bool same = ia->second.first == ib->second.first && ia->second.second == ib->second.second;
    bool swapped = ia->second.first == ib->second.second && ia->second.second == ib->second.first;
    if (!same && !swapped) return false;
  }
  return true;
}

namespace {

std::vector<int> tree_centres(const Tree& t) {
  if (t.vertices.size() <= 2) return t.vertices;
  std::map<int, std::set<int>> live;
  for (int v : t.vertices) {
    auto inc = t.incident_edges(v);
    live[v] = std::set<int>(inc.begin(), inc.end());
  }
  std::set<int> remaining(t.vertices.begin(), t.vertices.end());
  while (remaining.size() > 2) {
    std::vector<int> leaves;
    for (int v : remaining)
      if (live[v].size() <= 1) leaves.push_back(v);
    for (int v : leaves) {
      for (int e : live[v]) live[t.edges[e].other(v)].erase(e);
      live[v].clear();
      remaining.erase(v);
    }
  }
  return std::vector<int>(remaining.begin(), remaining.end());
}

// Rooted AHU code; tag is prepended to each child code before sorting. The
// lbtree variant tags a child edge with '0'/'1' depending on whether it
// shares a part with the parent edge at their common vertex.
std::string rooted_code(const Tree& t, const LBTree* lb, int v, int parent_edge) {
  std::vector<std::string> kids;
  for (int e : t.incident_edges(v)) {
    if (e == parent_edge) continue;
    int child = t.edges[e].other(v);
    std::string code = rooted_code(t, lb, child, e);
    if (lb != nullptr && parent_edge >= 0)
      code.insert(code.begin(), lb->same_part(v, parent_edge, e) ? '0' : '1');
    kids.push_back(std::move(code));
  }
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  out += ")";
  return out;
}

// Root has no parent edge; for lbtrees tag children by root block under both
// block assignments and keep the smaller result.
std::string rooted_code_at(const Tree& t, const LBTree* lb, int root) {
  if (lb == nullptr) return rooted_code(t, nullptr, root, -1);
  std::string best;
  for (int sigma = 0; sigma < 2; ++sigma) {
    std::vector<std::string> kids;
    for (int e : t.incident_edges(root)) {
      int child = t.edges[e].other(root);
      std::string code = rooted_code(t, lb, child, e);
      int block = lb->part_of(root, e);
      code.insert(code.begin(), static_cast<char>('0' + (block ^ sigma)));
      kids.push_back(std::move(code));
    }
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (const auto& k : kids) out += k;
    out += ")";
    if (sigma == 0 || out < best) best = std::move(out);
  }
  return best;
}

std::string canonical_code_impl(const Tree& t, const LBTree* lb) {
  std::string best;
  bool first = true;
  for (int c : tree_centres(t)) {
    std::string code = rooted_code_at(t, lb, c);
    if (first || code < best) {
      best = std::move(code);
      first = false;
    }
  }
  return best;
}

}  // namespace

std::string tree_canonical_code(const Tree& t) {
  ValidationReport r = validate_tree(t);
  if (!r.ok) throw InputError("tree_canonical_code: invalid tree: " + r.summary());
  return canonical_code_impl(t, nullptr);
}

std::string canonical_code(const LBTree& t) {
  ValidationReport r = validate_lbtree(t);
  if (!r.ok) throw InputError("canonical_code: invalid lbtree: " + r.summary());
  return canonical_code_impl(t.tree, &t);
}

std::string canonical_code_hex(const LBTree& t) {
  static const char* digits = "0123456789abcdef";
  std::string code = canonical_code(t);
  std::string out;
  out.reserve(code.size() * 2);
  for (unsigned char ch : code) {
    out += digits[ch >> 4];
    out += digits[ch & 0xf];
  }
  return out;
}

bool is_isomorphic(const LBTree& a, const LBTree& b) { return canonical_code(a) == canonical_code(b); }

std::vector<Tree> enumerate_trees(int k) {
  if (k <= 0) return {};
  Tree single;
  single.vertices = {0};
  if (k == 1) return {single};
  std::vector<Tree> prev = enumerate_trees(k - 1);
  std::map<std::string, Tree> classes;
  for (const Tree& t : prev) {
    for (int v : t.vertices) {
      Tree grown = t;
      int fresh = t.vertices.back() + 1;
      grown.vertices.push_back(fresh);
      grown.edges.push_back({v, fresh});
      classes.emplace(tree_canonical_code(grown), grown);
    }
  }
  std::vector<Tree> out;
  out.reserve(classes.size());
  for (auto& [code, t] : classes) out.push_back(std::move(t));
  return out;
}

std::vector<LBTree> enumerate_lbtrees(int k) {
  if (k <= 0) return {};
  std::map<std::string, LBTree> classes;
  for (const Tree& t : enumerate_trees(k)) {
    int m = static_cast<int>(t.edges.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      Bicolouring c;
      for (int e = 0; e < m; ++e) c.colour[e] = (mask >> e) & 1;
      LBTree lt = bipartitions_from_bicolouring(t, c);
      classes.emplace(canonical_code(lt), std::move(lt));
    }
  }
  std::vector<LBTree> out;
  out.reserve(classes.size());
  for (auto& [code, t] : classes) out.push_back(std::move(t));
  return out;
}

Tree tree_from_prufer(const std::vector<int>& seq, int k) {
  if (k < 1) throw InputError("tree_from_prufer: k must be >= 1");
  if (static_cast<int>(seq.size()) != std::max(0, k - 2))
    throw InputError("tree_from_prufer: sequence length must be k - 2");
  Tree t;
  t.vertices.resize(k);
  for (int i = 0; i < k; ++i) t.vertices[i] = i;
  if (k == 1) return t;
  std::vector<int> degree(k, 1);
  for (int s : seq) {
    if (s < 0 || s >= k) throw InputError("tree_from_prufer: value out of range");
    ++degree[s];
  }
  std::set<int> leaves;
  for (int i = 0; i < k; ++i)
    if (degree[i] == 1) leaves.insert(i);
  for (int s : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    t.edges.push_back({leaf, s});
    if (--degree[s] == 1) leaves.insert(s);
  }
  int a = *leaves.begin();
  int b = *std::next(leaves.begin());
  t.edges.push_back({a, b});
  return t;
}

Tree random_tree(int k, std::mt19937_64& rng) {
  std::vector<int> seq;
  for (int i = 0; i < std::max(0, k - 2); ++i) seq.push_back(static_cast<int>(rng() % k));
  return tree_from_prufer(seq, k);
}

LBTree random_lbtree(int k, std::mt19937_64& rng) {
  Tree t = random_tree(k, rng);
  Bicolouring c;
  for (size_t e = 0; e < t.edges.size(); ++e) c.colour[static_cast<int>(e)] = static_cast<int>(rng() & 1);
  return bipartitions_from_bicolouring(t, c);
}

LBTree parse_lbtree_text(const std::string& text) {
  Tree t;
  Bicolouring c;
  std::set<int> vset;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<long> nums;
    long x;
    while (ls >> x) nums.push_back(x);
    if (!ls.eof()) throw InputError("tree text line " + std::to_string(lineno) + ": expected integers");
    if (nums.empty()) continue;
    if (nums.size() == 1) {
      vset.insert(static_cast<int>(nums[0]));
    } else if (nums.size() == 2 || nums.size() == 3) {
      int u = static_cast<int>(nums[0]);
      int v = static_cast<int>(nums[1]);
      int col = nums.size() == 3 ? static_cast<int>(nums[2]) : 0;
      if (col != 0 && col != 1)
        throw InputError("tree text line " + std::to_string(lineno) + ": colour must be 0 or 1");
      vset.insert(u);
      vset.insert(v);
      c.colour[static_cast<int>(t.edges.size())] = col;
      t.edges.push_back({u, v});
    } else {
      throw InputError("tree text line " + std::to_string(lineno) + ": expected `u v [colour]`");
    }
  }
  t.vertices = std::vector<int>(vset.begin(), vset.end());
  ValidationReport r = validate_tree(t);
  if (!r.ok) throw InputError("tree text does not describe a tree: " + r.summary());
  return bipartitions_from_bicolouring(t, c);
}

std::string format_lbtree_text(const LBTree& t, const Bicolouring& c) {
  std::ostringstream os;
  if (t.tree.edges.empty()) {
    for (int v : t.tree.vertices) os << v << "\n";
    return os.str();
  }
  for (size_t e = 0; e < t.tree.edges.size(); ++e) {
    const Edge& ed = t.tree.edges[e];
    auto it = c.colour.find(static_cast<int>(e));
    if (it == c.colour.end()) throw InputError("format_lbtree_text: colouring misses edge " + std::to_string(e));
    os << ed.u << " " << ed.v << " " << it->second << "\n";
  }
  return os.str();
}

std::string format_lbtree_text(const LBTree& t) { return format_lbtree_text(t, compatible_bicolouring(t)); }

}  // namespace plumbline
