#include "plumbline/surface.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "plumbline/errors.hpp"

namespace plumbline {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

int AbstractSurface::euler_characteristic() const {
  int chi = 0;
  for (const SurfaceComponent& c : components) chi += c.euler_characteristic();
  return chi;
}

std::pair<int, int> ImmersedSurface::locate_slot(int slot_id) const {
  for (size_t d = 0; d < double_points.size(); ++d)
    for (int s = 0; s < 2; ++s)
      if (double_points[d].slots[s].slot_id == slot_id) return {static_cast<int>(d), s};
  throw InputError("unknown slot id " + std::to_string(slot_id));
}

int ImmersedSurface::slot_component(int slot_id) const {
  auto [d, s] = locate_slot(slot_id);
  return double_points[d].slots[s].component;
}

ValidationReport validate_immersed(const ImmersedSurface& s) {
  ValidationReport r;
  int n = static_cast<int>(s.domain.components.size());
  if (n == 0) r.fail("immersed surface has no domain components");
  for (const SurfaceComponent& c : s.domain.components) {
    if (c.genus < 0) r.fail("negative genus");
    if (c.boundary_circles < 0) r.fail("negative boundary circle count");
  }
  std::set<int> slot_ids;
  for (size_t d = 0; d < s.double_points.size(); ++d)
    for (int i = 0; i < 2; ++i) {
      const SheetSlot& sl = s.double_points[d].slots[i];
      if (sl.component < 0 || sl.component >= n)
        r.fail("double point " + std::to_string(d) + " references missing component");
      if (!slot_ids.insert(sl.slot_id).second)
        r.fail("duplicate slot id " + std::to_string(sl.slot_id));
    }
  return r;
}

ValidationReport validate_plumbing(const PlumbingTree& p) {
  ValidationReport r = validate_tree(p.graph);
  for (const auto& [v, g] : p.genus) {
    if (!p.graph.has_vertex(v)) r.fail("genus entry for unknown vertex " + std::to_string(v));
    if (g < 0) r.fail("negative genus at vertex " + std::to_string(v));
  }
  for (const auto& [v, _] : p.euler_number)
    if (!p.graph.has_vertex(v)) r.fail("euler entry for unknown vertex " + std::to_string(v));
  return r;
}

ImmersedSurface make_plumbing(const PlumbingTree& p) {
  ValidationReport r = validate_plumbing(p);
  if (!r.ok) throw InputError("make_plumbing: invalid plumbing: " + r.summary());
  ImmersedSurface s;
  s.kind = SurfaceKind::plumbing;
  std::map<int, int> comp_of_vertex;
  for (size_t i = 0; i < p.graph.vertices.size(); ++i) {
    int v = p.graph.vertices[i];
    comp_of_vertex[v] = static_cast<int>(i);
    SurfaceComponent c;
    auto it = p.genus.find(v);
    c.genus = it == p.genus.end() ? 0 : it->second;
    s.domain.components.push_back(c);
  }
  for (size_t e = 0; e < p.graph.edges.size(); ++e) {
    const Edge& ed = p.graph.edges[e];
    DoublePoint dp;
    dp.slots[0] = {comp_of_vertex.at(ed.u), static_cast<int>(2 * e)};
    dp.slots[1] = {comp_of_vertex.at(ed.v), static_cast<int>(2 * e + 1)};
    s.double_points.push_back(dp);
  }
  return s;
}

ImmersedSurface make_immersed_disc(int m, const std::string& boundary) {
  if (m < 0) throw InputError("make_immersed_disc: negative double point count");
  ImmersedSurface s;
  s.kind = SurfaceKind::disc;
  s.boundary_knot = boundary;
  SurfaceComponent disc;
  disc.genus = 0;
  disc.boundary_circles = 1;
  s.domain.components.push_back(disc);
  for (int i = 0; i < m; ++i) {
    DoublePoint dp;
    dp.slots[0] = {0, 2 * i};
    dp.slots[1] = {0, 2 * i + 1};
    s.double_points.push_back(dp);
  }
  return s;
}

std::map<int, std::array<int, 2>> part_slots(const SuitableEmbedding& e) {
  std::map<int, std::array<int, 2>> out;
  for (const auto& [v, dp_idx] : e.vertex_map) {
    const DoublePoint& dp = e.target.double_points.at(dp_idx);
    std::array<int, 2> assign{-1, -1};
    auto pit = e.tree.parts.find(v);
    if (pit == e.tree.parts.end()) throw InputError("part_slots: no bipartition at vertex " + std::to_string(v));
    for (int part = 0; part < 2; ++part) {
      const EdgeSet& edges = part == 0 ? pit->second.first : pit->second.second;
      for (int eid : edges) {
        auto eit = e.edge_map.find(eid);
        if (eit == e.edge_map.end()) continue;
        const Edge& ed = e.tree.tree.edges.at(eid);
        assign[part] = ed.u == v ? eit->second.slot_at_u : eit->second.slot_at_v;
        break;
      }
    }
    // an empty part takes the remaining slot; an isolated vertex puts A on
    // the first slot
    for (int part = 0; part < 2; ++part) {
      if (assign[part] >= 0) continue;
      for (int i = 0; i < 2; ++i) {
        int cand = dp.slots[i].slot_id;
        if (cand != assign[1 - part]) {
          assign[part] = cand;
          break;
        }
      }
    }
    if (assign[0] < 0 || assign[1] < 0 || assign[0] == assign[1])
      throw InternalError("part_slots: could not assign distinct slots at vertex " + std::to_string(v));
    out[v] = assign;
  }
  return out;
}

ValidationReport verify_embedding(const SuitableEmbedding& e) {
  ValidationReport r;
  if (e.tree.tree.vertices.empty() && e.vertex_map.empty() && e.edge_map.empty()) return r;  // empty embedding
  ValidationReport tr = validate_lbtree(e.tree);
  if (!tr.ok) {
    for (const auto& v : tr.violations) r.fail("tree: " + v);
    return r;
  }
  ValidationReport sr = validate_immersed(e.target);
  if (!sr.ok) {
    for (const auto& v : sr.violations) r.fail("target: " + v);
    return r;
  }

  int ndp = static_cast<int>(e.target.double_points.size());
  std::set<int> used_dp;
  for (int v : e.tree.tree.vertices) {
    auto it = e.vertex_map.find(v);
    if (it == e.vertex_map.end()) {
      r.fail("vertex " + std::to_string(v) + " is not mapped to a double point");
      continue;
    }
    if (it->second < 0 || it->second >= ndp) {
      r.fail("vertex " + std::to_string(v) + " maps to missing double point " + std::to_string(it->second));
      continue;
    }
    if (!used_dp.insert(it->second).second)
      r.fail("vertex map not injective at double point " + std::to_string(it->second));
  }
  for (const auto& [v, _] : e.vertex_map)
    if (!e.tree.tree.has_vertex(v)) r.fail("vertex map entry for unknown vertex " + std::to_string(v));
  if (!r.ok) return r;

  // per-edge slots and carriers
  for (size_t eid = 0; eid < e.tree.tree.edges.size(); ++eid) {
    auto it = e.edge_map.find(static_cast<int>(eid));
    if (it == e.edge_map.end()) {
      r.fail("edge " + std::to_string(eid) + " has no assignment");
      continue;
    }
    const Edge& ed = e.tree.tree.edges[eid];
    const EdgeEnds& ends = it->second;
    for (auto [vertex, slot] : {std::pair{ed.u, ends.slot_at_u}, std::pair{ed.v, ends.slot_at_v}}) {
      auto [dp_idx, slot_idx] = [&]() -> std::pair<int, int> {
        try {
          return e.target.locate_slot(slot);
        } catch (const Error&) {
          return {-1, -1};
        }
      }();
      if (dp_idx < 0) {
        r.fail("edge " + std::to_string(eid) + " uses unknown slot " + std::to_string(slot));
        continue;
      }
      if (dp_idx != e.vertex_map.at(vertex))
        r.fail("edge " + std::to_string(eid) + " at vertex " + std::to_string(vertex) +
               " uses a slot of a different double point");
    }
    int cu = -1, cv = -1;
    try {
      cu = e.target.slot_component(ends.slot_at_u);
      cv = e.target.slot_component(ends.slot_at_v);
    } catch (const Error&) {
      continue;
    }
    if (cu != cv)
      r.fail("edge " + std::to_string(eid) + " ends lie on different domain components");
    else if (ends.carrier != cu)
      r.fail("edge " + std::to_string(eid) + " carrier " + std::to_string(ends.carrier) +
             " does not match its slots' component " + std::to_string(cu));
  }
  if (!r.ok) return r;

  // same part same slot, different parts different slots
  for (int v : e.tree.tree.vertices) {
    std::array<std::set<int>, 2> slots_by_part;
    for (int eid : e.tree.tree.incident_edges(v)) {
      const Edge& ed = e.tree.tree.edges[eid];
      const EdgeEnds& ends = e.edge_map.at(eid);
      int slot = ed.u == v ? ends.slot_at_u : ends.slot_at_v;
      slots_by_part[e.tree.part_of(v, eid)].insert(slot);
    }
    for (int part = 0; part < 2; ++part)
      if (slots_by_part[part].size() > 1)
        r.fail("vertex " + std::to_string(v) + ": edges in the same part use different slots");
    if (!slots_by_part[0].empty() && !slots_by_part[1].empty() &&
        slots_by_part[0] == slots_by_part[1])
      r.fail("vertex " + std::to_string(v) + ": edges in different parts share a slot");
  }
  if (!r.ok) return r;

  // acyclic lift
  {
    std::map<int, int> slot_node;
    int n = 0;
    for (const auto& [v, dp_idx] : e.vertex_map)
      for (int i = 0; i < 2; ++i) slot_node[e.target.double_points[dp_idx].slots[i].slot_id] = n++;
    Dsu dsu(n);
    for (size_t eid = 0; eid < e.tree.tree.edges.size(); ++eid) {
      const EdgeEnds& ends = e.edge_map.at(static_cast<int>(eid));
      if (!dsu.unite(slot_node.at(ends.slot_at_u), slot_node.at(ends.slot_at_v)))
        r.fail("lift graph contains a cycle through edge " + std::to_string(eid));
    }
  }

  // contractibility on plumbing targets: for each domain component, the
  // carried edges connect all mapped double points with a slot there
  if (e.target.kind == SurfaceKind::plumbing) {
    int ncomp = static_cast<int>(e.target.domain.components.size());
    for (int comp = 0; comp < ncomp; ++comp) {
      std::map<int, int> dp_node;
      for (const auto& [v, dp_idx] : e.vertex_map) {
        const DoublePoint& dp = e.target.double_points[dp_idx];
        if (dp.slots[0].component == comp || dp.slots[1].component == comp)
          dp_node.emplace(dp_idx, static_cast<int>(dp_node.size()));
      }
      if (dp_node.empty()) continue;
      Dsu dsu(static_cast<int>(dp_node.size()));
      int merges = 0;
      for (size_t eid = 0; eid < e.tree.tree.edges.size(); ++eid) {
        const EdgeEnds& ends = e.edge_map.at(static_cast<int>(eid));
        if (ends.carrier != comp) continue;
        const Edge& ed = e.tree.tree.edges[eid];
        if (dsu.unite(dp_node.at(e.vertex_map.at(ed.u)), dp_node.at(e.vertex_map.at(ed.v)))) ++merges;
      }
      if (merges != static_cast<int>(dp_node.size()) - 1)
        r.fail("component " + std::to_string(comp) +
               ": carried edges do not connect its double points (intersection with the tree not contractible)");
    }
  }
  return r;
}

EmbedResult embed_in_plumbing(const ImmersedSurface& s, bool allow_empty) {
  ValidationReport vr = validate_immersed(s);
  if (!vr.ok) throw InputError("embed_in_plumbing: invalid surface: " + vr.summary());
  int n = static_cast<int>(s.domain.components.size());
  for (const SurfaceComponent& c : s.domain.components)
    if (c.boundary_circles != 0)
      throw InputError("embed_in_plumbing: plumbing pieces must be closed surfaces");
  // the double points must realize a plumbing tree on the components
  Dsu comp_dsu(n);
  for (const DoublePoint& dp : s.double_points) {
    if (dp.slots[0].component == dp.slots[1].component)
      throw InputError("embed_in_plumbing: double point within a single component (not a plumbing)");
    comp_dsu.unite(dp.slots[0].component, dp.slots[1].component);
  }
  std::set<int> roots;
  for (int i = 0; i < n; ++i) roots.insert(comp_dsu.find(i));
  if (static_cast<int>(s.double_points.size()) != n - 1 || roots.size() != 1)
    throw InputError("embed_in_plumbing: intersection pattern is not a tree");

  if (n == 1) {
    if (!allow_empty)
      throw InputError("embed_in_plumbing: a single surface has no double points (pass allow_empty for the empty tree)");
    return {};
  }

  // peel the lowest-id leaf surface; replay in reverse, attaching each
  // peeled double point to the lowest-index double point on the shared
  // surface
  std::vector<std::set<int>> dps_at(n);  // component -> live double point indices
  for (size_t d = 0; d < s.double_points.size(); ++d)
    for (int i = 0; i < 2; ++i) dps_at[s.double_points[d].slots[i].component].insert(static_cast<int>(d));

  struct Peel {
    int dp;
    int neighbour;  // surviving component
  };
  std::vector<Peel> peels;
  std::set<int> alive;
  for (int i = 0; i < n; ++i) alive.insert(i);
  while (alive.size() > 1) {
    int leaf = -1;
    for (int c : alive)
      if (dps_at[c].size() == 1) {
        leaf = c;
        break;
      }
    if (leaf < 0) throw InternalError("embed_in_plumbing: no leaf surface");
    int d = *dps_at[leaf].begin();
    const DoublePoint& dp = s.double_points[d];
    int nb = dp.slots[0].component == leaf ? dp.slots[1].component : dp.slots[0].component;
    peels.push_back({d, nb});
    alive.erase(leaf);
    dps_at[leaf].clear();
    dps_at[nb].erase(d);
  }

  SuitableEmbedding emb;
  emb.target = s;
  Tree tree;
  std::vector<Edge> edges;
  std::map<int, EdgeEnds> edge_map;
  std::map<int, int> vertex_map;
  std::set<int> in_tree;

  auto slot_on = [&](int dp_idx, int comp) {
    const DoublePoint& dp = s.double_points[dp_idx];
    if (dp.slots[0].component == comp) return dp.slots[0].slot_id;
    if (dp.slots[1].component == comp) return dp.slots[1].slot_id;
    throw InternalError("embed_in_plumbing: double point has no slot on component " + std::to_string(comp));
  };

  for (auto it = peels.rbegin(); it != peels.rend(); ++it) {
    int d = it->dp;
    vertex_map[d] = d;
    if (!in_tree.empty()) {
      int anchor = -1;
      for (int other : in_tree) {
        const DoublePoint& odp = s.double_points[other];
        if (odp.slots[0].component == it->neighbour || odp.slots[1].component == it->neighbour) {
          anchor = other;
          break;
        }
      }
      if (anchor < 0) throw InternalError("embed_in_plumbing: no double point on the shared surface");
      EdgeEnds ends;
      ends.slot_at_u = slot_on(d, it->neighbour);
      ends.slot_at_v = slot_on(anchor, it->neighbour);
      ends.carrier = it->neighbour;
      edge_map[static_cast<int>(edges.size())] = ends;
      edges.push_back({d, anchor});
    }
    in_tree.insert(d);
  }

  tree.vertices = std::vector<int>(in_tree.begin(), in_tree.end());
  tree.edges = edges;

  // bipartitions induced by the slot sides
  LBTree lt;
  lt.tree = tree;
  for (int v : tree.vertices) {
    const DoublePoint& dp = s.double_points[v];
    EdgeSet a, b;
    for (int eid : tree.incident_edges(v)) {
      const Edge& ed = tree.edges[eid];
      const EdgeEnds& ends = edge_map.at(eid);
      int slot = ed.u == v ? ends.slot_at_u : ends.slot_at_v;
      (slot == dp.slots[0].slot_id ? a : b).insert(eid);
    }
    lt.parts[v] = {std::move(a), std::move(b)};
  }

  emb.tree = lt;
  emb.vertex_map = vertex_map;
  emb.edge_map = edge_map;

  ValidationReport check = verify_embedding(emb);
  if (!check.ok) throw InternalError("embed_in_plumbing: construction failed verification: " + check.summary());
  return {lt, emb};
}

SuitableEmbedding embed_in_connected(const ImmersedSurface& s, const LBTree& t) {
  ValidationReport vr = validate_immersed(s);
  if (!vr.ok) throw InputError("embed_in_connected: invalid surface: " + vr.summary());
  ValidationReport tr = validate_lbtree(t);
  if (!tr.ok) throw InputError("embed_in_connected: invalid tree: " + tr.summary());
  if (s.domain.components.size() != 1)
    throw InputError("embed_in_connected: the domain must be connected");
  int m = static_cast<int>(s.double_points.size());
  int ell = static_cast<int>(t.tree.vertices.size());
  if (ell > m)
    throw InputError("embed_in_connected: tree has " + std::to_string(ell) + " vertices but only " +
                     std::to_string(m) + " double points are available");

  // strip lowest-id leaves, then replay: root takes double point 0, each
  // re-attached leaf takes the lowest free double point and its first slot
  struct Strip {
    int leaf;
    int edge;
    int anchor;
  };
  std::vector<Strip> strips;
  std::map<int, std::set<int>> live;
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
    int e = *live[leaf].begin();
    int anchor = t.tree.edges[e].other(leaf);
    strips.push_back({leaf, e, anchor});
    remaining.erase(leaf);
    live[anchor].erase(e);
  }

  SuitableEmbedding emb;
  emb.target = s;
  emb.tree = t;

  // part -> slot assignment fixed when a vertex is first embedded
  std::map<int, std::array<int, 2>> assign;
  int next_dp = 0;

  int root = *remaining.begin();
  emb.vertex_map[root] = next_dp;
  assign[root] = {s.double_points[next_dp].slots[0].slot_id, s.double_points[next_dp].slots[1].slot_id};
  ++next_dp;

  for (auto it = strips.rbegin(); it != strips.rend(); ++it) {
    int v = it->leaf;
    int e = it->edge;
    int w = it->anchor;
    emb.vertex_map[v] = next_dp;
    const DoublePoint& dp = s.double_points[next_dp];
    ++next_dp;
    // the connecting edge takes the first slot at the new vertex
    int vpart = t.part_of(v, e);
    std::array<int, 2> va{};
    va[vpart] = dp.slots[0].slot_id;
    va[1 - vpart] = dp.slots[1].slot_id;
    assign[v] = va;

    EdgeEnds ends;
    int at_v = va[vpart];
    int at_w = assign.at(w)[t.part_of(w, e)];
    const Edge& ed = t.tree.edges[e];
    if (ed.u == v) {
      ends.slot_at_u = at_v;
      ends.slot_at_v = at_w;
    } else {
      ends.slot_at_u = at_w;
      ends.slot_at_v = at_v;
    }
    ends.carrier = 0;
    emb.edge_map[e] = ends;
  }

  ValidationReport check = verify_embedding(emb);
  if (!check.ok)
    throw InternalError("embed_in_connected: construction failed verification: " + check.summary());
  return emb;
}

LiftForest lift_forest(const SuitableEmbedding& e) {
  ValidationReport r = verify_embedding(e);
  if (!r.ok) throw InputError("lift_forest: embedding does not verify: " + r.summary());
  LiftForest f;
  std::map<int, std::array<int, 2>> assign = part_slots(e);
  std::map<int, int> node_of_slot;
  for (const auto& [v, slots] : assign)
    for (int part = 0; part < 2; ++part) {
      LiftForest::Node node;
      node.vertex = v;
      node.slot_id = slots[part];
      node.domain_component = e.target.slot_component(slots[part]);
      node.label = part_label(v, part);
      node_of_slot[slots[part]] = static_cast<int>(f.nodes.size());
      f.nodes.push_back(node);
    }
  for (size_t eid = 0; eid < e.tree.tree.edges.size(); ++eid) {
    const EdgeEnds& ends = e.edge_map.at(static_cast<int>(eid));
    f.links.emplace_back(node_of_slot.at(ends.slot_at_u), node_of_slot.at(ends.slot_at_v));
  }
  Dsu dsu(static_cast<int>(f.nodes.size()));
  for (auto [a, b] : f.links)
    if (!dsu.unite(a, b)) throw InternalError("lift_forest: cycle in a verified embedding");
  std::map<int, int> comp_ids;
  f.node_component.resize(f.nodes.size());
  for (size_t i = 0; i < f.nodes.size(); ++i) {
    int root = dsu.find(static_cast<int>(i));
    auto it = comp_ids.emplace(root, static_cast<int>(comp_ids.size())).first;
    f.node_component[i] = it->second;
  }
  f.component_count = static_cast<int>(comp_ids.size());
  return f;
}

LinkDiagram link_of_embedding(const SuitableEmbedding& e) {
  ValidationReport r = verify_embedding(e);
  if (!r.ok) throw InputError("link_of_embedding: embedding does not verify: " + r.summary());
  return associated_link(e.tree);
}

PlumbingTree parse_plumbing_text(const std::string& text) {
  PlumbingTree p;
  std::set<int> vset;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    auto err = [&](const std::string& msg) {
      return InputError("plumbing text line " + std::to_string(lineno) + ": " + msg);
    };
    if (kind == "vertex") {
      int id, genus;
      if (!(ls >> id >> genus)) throw err("expected `vertex id genus [euler]`");
      int euler;
      if (ls >> euler) p.euler_number[id] = euler;
      if (!vset.insert(id).second) throw err("duplicate vertex");
      p.genus[id] = genus;
    } else if (kind == "edge") {
      int u, v;
      if (!(ls >> u >> v)) throw err("expected `edge u v`");
      p.graph.edges.push_back({u, v});
    } else {
      throw err("expected `vertex` or `edge`");
    }
  }
  p.graph.vertices = std::vector<int>(vset.begin(), vset.end());
  ValidationReport r = validate_plumbing(p);
  if (!r.ok) throw InputError("plumbing text invalid: " + r.summary());
  return p;
}

std::string format_plumbing_text(const PlumbingTree& p) {
  std::ostringstream os;
  for (int v : p.graph.vertices) {
    auto g = p.genus.find(v);
    os << "vertex " << v << " " << (g == p.genus.end() ? 0 : g->second);
    auto e = p.euler_number.find(v);
    if (e != p.euler_number.end()) os << " " << e->second;
    os << "\n";
  }
  for (const Edge& ed : p.graph.edges) os << "edge " << ed.u << " " << ed.v << "\n";
  return os.str();
}

}  // namespace plumbline
