#include "plumbline/link.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "plumbline/errors.hpp"

namespace plumbline {

namespace {

using IncidenceMap = std::map<int, std::vector<Slot>>;

IncidenceMap incidence_map(const std::vector<Crossing>& crossings) {
  IncidenceMap incs;
  for (size_t c = 0; c < crossings.size(); ++c)
    for (int p = 0; p < 4; ++p) incs[crossings[c].arcs[p]].push_back({static_cast<int>(c), p});
  return incs;
}

Slot other_incidence(const IncidenceMap& incs, int arc, const Slot& s) {
  const auto& v = incs.at(arc);
  if (v.size() != 2) throw InternalError("arc " + std::to_string(arc) + " does not have two incidences");
  return v[0] == s ? v[1] : v[0];
}

struct Walk {
  bool ok = false;
  std::vector<int> order;
  std::map<int, ArcDirection> dirs;
};

// Follow the strand from `start` with the given head incidence. Entering a
// crossing at position p exits at position p+2.
Walk walk_component(const std::vector<Crossing>& crossings, const IncidenceMap& incs, int start,
                    int head_choice) {
  Walk w;
  auto it = incs.find(start);
  if (it == incs.end() || it->second.size() != 2) return w;
  Slot head = it->second[head_choice];
  int arc = start;
  size_t guard = 0;
  while (true) {
    if (++guard > incs.size() + 1) return w;
    w.order.push_back(arc);
    w.dirs[arc].head = head;
    Slot exit{head.crossing, (head.pos + 2) % 4};
    int next = crossings[exit.crossing].arcs[exit.pos];
    if (next == start) {
      if (w.dirs.count(start) && exit == it->second[head_choice]) return w;  // inconsistent
      w.dirs[start].tail = exit;
      w.ok = true;
      return w;
    }
    w.dirs[next].tail = exit;
    head = other_incidence(incs, next, exit);
    arc = next;
  }
}

std::vector<LinkComponent> derive_components(const std::vector<Crossing>& crossings,
                                             const std::set<int>& arcs) {
  IncidenceMap incs = incidence_map(crossings);
  std::set<int> visited;
  std::vector<LinkComponent> out;
  for (int a : arcs) {
    if (visited.count(a)) continue;
    LinkComponent comp;
    if (!incs.count(a)) {
      comp.arcs = {a};
    } else {
      Walk w = walk_component(crossings, incs, a, 0);
      if (!w.ok) throw InputError("PD code is not a closed diagram near arc " + std::to_string(a));
      comp.arcs = w.order;
    }
    visited.insert(comp.arcs.begin(), comp.arcs.end());
    out.push_back(std::move(comp));
  }
  return out;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Slots where some arc terminates; requires directions.
std::set<Slot> head_slots(const LinkDiagram& l) {
  std::set<Slot> heads;
  for (const auto& [arc, d] : l.directions) heads.insert(d.head);
  return heads;
}

// Rotate tuples by two where the arc at position 0 is outgoing, keeping the
// incoming-under-at-0 convention; remaps direction slots.
void normalize_under_in(LinkDiagram& l) {
  if (!l.oriented) return;
  std::set<Slot> heads = head_slots(l);
  for (size_t c = 0; c < l.crossings.size(); ++c) {
    Slot p0{static_cast<int>(c), 0};
    Slot p2{static_cast<int>(c), 2};
    if (heads.count(p0)) continue;
    if (!heads.count(p2))
      throw InternalError("crossing " + std::to_string(c) + " has no incoming under-strand");
    auto& t = l.crossings[c].arcs;
    t = {t[2], t[3], t[0], t[1]};
    for (auto& [arc, d] : l.directions) {
      if (d.tail.crossing == static_cast<int>(c)) d.tail.pos ^= 2;
      if (d.head.crossing == static_cast<int>(c)) d.head.pos ^= 2;
    }
    heads = head_slots(l);
  }
}

bool is_merge_label(const std::string& s, int* num) {
  if (s.size() < 2 || s[0] != 'm') return false;
  for (size_t i = 1; i < s.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(s[i]))) return false;
  *num = std::atoi(s.c_str() + 1);
  return true;
}

std::string shift_merge_label(const std::string& s, int delta) {
  int n = 0;
  if (!is_merge_label(s, &n)) return s;
  return "m" + std::to_string(n + delta);
}

std::vector<std::shared_ptr<const LinkDiagram>> factors_or_self(const LinkDiagram& d) {
  if (!d.factors.empty()) return d.factors;
  auto copy = std::make_shared<LinkDiagram>(d);
  copy->factors.clear();
  return {copy};
}

LaurentPoly jones_from_bracket(const LaurentPoly& bracket, int w) {
  LaurentPoly shifted = bracket.shifted(w % 2 == 0 ? 1 : -1, -3 * w);
  LaurentPoly out;
  for (const auto& [e, c] : shifted.terms()) {
    if (e % 2 != 0) throw InternalError("bracket exponent parity broken in jones conversion");
    out += LaurentPoly::monomial(c, -e / 2);
  }
  return out;
}

}  // namespace

std::vector<int> LinkDiagram::arc_ids() const {
  std::set<int> s;
  for (const auto& comp : components) s.insert(comp.arcs.begin(), comp.arcs.end());
  return std::vector<int>(s.begin(), s.end());
}

int LinkDiagram::component_index_of_arc(int arc) const {
  for (size_t i = 0; i < components.size(); ++i)
    for (int a : components[i].arcs)
      if (a == arc) return static_cast<int>(i);
  throw InputError("arc " + std::to_string(arc) + " not in any component");
}

int LinkDiagram::resolve_label(const std::string& label) const {
  std::string current = label;
  for (const MergeRecord& rec : merge_log)
    if (current == rec.left || current == rec.right) current = rec.merged;
  for (size_t i = 0; i < components.size(); ++i)
    if (components[i].label == current) return static_cast<int>(i);
  throw InputError("component label not found: " + label);
}

ValidationReport validate_link(const LinkDiagram& l) {
  ValidationReport r;
  if (l.components.empty()) {
    r.fail("diagram has no components");
    return r;
  }
  std::map<int, int> arc_component;
  for (size_t i = 0; i < l.components.size(); ++i) {
    if (l.components[i].arcs.empty()) r.fail("component " + l.components[i].label + " has no arcs");
    for (int a : l.components[i].arcs)
      if (!arc_component.emplace(a, static_cast<int>(i)).second)
        r.fail("arc " + std::to_string(a) + " listed in more than one component");
  }
  std::set<std::string> labels;
  for (const auto& comp : l.components)
    if (!labels.insert(comp.label).second) r.fail("duplicate component label " + comp.label);

  IncidenceMap incs = incidence_map(l.crossings);
  for (const auto& [arc, slots] : incs) {
    if (!arc_component.count(arc)) r.fail("arc " + std::to_string(arc) + " appears in a crossing but no component");
    if (slots.size() != 2)
      r.fail("arc " + std::to_string(arc) + " appears " + std::to_string(slots.size()) +
             " times in crossings (expected 2)");
  }
  if (!r.ok) return r;

  for (const auto& comp : l.components) {
    bool crossingless = !incs.count(comp.arcs.front());
    if (crossingless) {
      if (comp.arcs.size() != 1)
        r.fail("component " + comp.label + " mixes crossingless and crossing arcs");
      continue;
    }
    Walk w0 = walk_component(l.crossings, incs, comp.arcs.front(), 0);
    Walk w1 = walk_component(l.crossings, incs, comp.arcs.front(), 1);
    bool match = (w0.ok && w0.order == comp.arcs) || (w1.ok && w1.order == comp.arcs);
    if (!match) r.fail("stored arc order of component " + comp.label + " is not a strand traversal");
  }
  if (!r.ok) return r;

  // stored partition vs union-find over arcs through crossings
  std::vector<int> arcs = l.arc_ids();
  std::map<int, int> dense;
  for (size_t i = 0; i < arcs.size(); ++i) dense[arcs[i]] = static_cast<int>(i);
  Dsu dsu(static_cast<int>(arcs.size()));
  for (const Crossing& x : l.crossings) {
    dsu.unite(dense[x.arcs[0]], dense[x.arcs[2]]);
    dsu.unite(dense[x.arcs[1]], dense[x.arcs[3]]);
  }
  for (const auto& comp : l.components) {
    int root = dsu.find(dense[comp.arcs.front()]);
    for (int a : comp.arcs)
      if (dsu.find(dense[a]) != root)
        r.fail("stored component " + comp.label + " is not a single strand class");
  }
  std::set<int> roots;
  for (int a : arcs) roots.insert(dsu.find(dense[a]));
  if (roots.size() != l.components.size())
    r.fail("stored component count " + std::to_string(l.components.size()) +
           " != strand class count " + std::to_string(roots.size()));

  if (l.oriented) {
    for (const auto& [arc, slots] : incs) {
      auto it = l.directions.find(arc);
      if (it == l.directions.end()) {
        r.fail("oriented diagram misses direction of arc " + std::to_string(arc));
        continue;
      }
      std::set<Slot> stored{it->second.tail, it->second.head};
      std::set<Slot> actual(slots.begin(), slots.end());
      if (stored != actual) r.fail("direction slots of arc " + std::to_string(arc) + " are not its incidences");
    }
    if (r.ok) {
      std::set<Slot> heads = head_slots(l);
      for (size_t c = 0; c < l.crossings.size(); ++c) {
        if (!heads.count({static_cast<int>(c), 0}))
          r.fail("crossing " + std::to_string(c) + ": position 0 is not the incoming under-strand");
        int over_in = static_cast<int>(heads.count({static_cast<int>(c), 1})) +
                      static_cast<int>(heads.count({static_cast<int>(c), 3}));
        if (over_in != 1)
          r.fail("crossing " + std::to_string(c) + ": over-strand direction inconsistent");
      }
    }
  }
  return r;
}

LinkDiagram unknot(const std::string& label) {
  LinkDiagram l;
  l.components.push_back({label, {0}});
  return l;
}

LinkDiagram hopf_link(const std::string& label_a, const std::string& label_b) {
  if (label_a == label_b) throw InputError("hopf_link labels must be distinct");
  // Fixed 2-crossing template; arcs 0,1 on the first component, 2,3 on the
  // second. The two crossings always share their sign, so lk = +-1 under
  // every orientation.
  LinkDiagram l;
  l.crossings.push_back({{3, 0, 2, 1}});
  l.crossings.push_back({{1, 2, 0, 3}});
  l.components.push_back({label_a, {0, 1}});
  l.components.push_back({label_b, {2, 3}});
  return l;
}

LinkDiagram connected_sum(const LinkDiagram& l1, const std::string& c1, const LinkDiagram& l2,
                          const std::string& c2) {
  int i1 = l1.resolve_label(c1);

  std::vector<int> arcs1 = l1.arc_ids();
  int arc_off = arcs1.empty() ? 0 : arcs1.back() + 1;
  int cross_off = static_cast<int>(l1.crossings.size());
  int log_off = static_cast<int>(l1.merge_log.size());

  // shift l2: arc ids, crossing indices, merge labels
  LinkDiagram s2;
  s2.oriented = l2.oriented;
  for (const Crossing& x : l2.crossings) {
    Crossing y;
    for (int p = 0; p < 4; ++p) y.arcs[p] = x.arcs[p] + arc_off;
    s2.crossings.push_back(y);
  }
  for (const auto& comp : l2.components) {
    LinkComponent c;
    c.label = shift_merge_label(comp.label, log_off);
    for (int a : comp.arcs) c.arcs.push_back(a + arc_off);
    s2.components.push_back(std::move(c));
  }
  for (const auto& [arc, d] : l2.directions) s2.directions[arc + arc_off] = d;  // local indices
  for (const MergeRecord& rec : l2.merge_log)
    s2.merge_log.push_back({shift_merge_label(rec.merged, log_off), shift_merge_label(rec.left, log_off),
                            shift_merge_label(rec.right, log_off)});

  int i2 = s2.resolve_label(shift_merge_label(c2, log_off));

  LinkDiagram out;
  out.oriented = l1.oriented && l2.oriented;
  out.crossings = l1.crossings;
  out.crossings.insert(out.crossings.end(), s2.crossings.begin(), s2.crossings.end());
  if (out.oriented) {
    out.directions = l1.directions;
    for (const auto& [arc, d] : s2.directions)
      out.directions[arc] = {{d.tail.crossing + cross_off, d.tail.pos},
                             {d.head.crossing + cross_off, d.head.pos}};
  }

  const LinkComponent& compA = l1.components[i1];
  const LinkComponent& compB = s2.components[i2];
  int alpha = *std::min_element(compA.arcs.begin(), compA.arcs.end());
  int beta = *std::min_element(compB.arcs.begin(), compB.arcs.end());

  IncidenceMap incs1 = incidence_map(l1.crossings);
  IncidenceMap incs2 = incidence_map(s2.crossings);
  bool alpha_loose = !incs1.count(alpha);
  bool beta_loose = !incs2.count(beta);

  auto rotate_to_front = [](std::vector<int> v, int first) {
    auto it = std::find(v.begin(), v.end(), first);
    std::rotate(v.begin(), it, v.end());
    return v;
  };

  // Direction of a component's traversal: stored directions when oriented,
  // otherwise the walk reproducing the stored order.
  auto traversal_dirs = [](const LinkDiagram& d, const IncidenceMap& incs, const LinkComponent& comp) {
    if (d.oriented) return d.directions;
    Walk w0 = walk_component(d.crossings, incs, comp.arcs.front(), 0);
    if (w0.ok && w0.order == comp.arcs) return w0.dirs;
    Walk w1 = walk_component(d.crossings, incs, comp.arcs.front(), 1);
    if (w1.ok && w1.order == comp.arcs) return w1.dirs;
    throw InternalError("stored component order is not a traversal");
  };

  LinkComponent merged;
  if (alpha_loose && beta_loose) {
    merged.arcs = {alpha};
  } else if (alpha_loose) {
    merged.arcs = compB.arcs;
  } else if (beta_loose) {
    merged.arcs = compA.arcs;
  } else {
    auto dirsA = traversal_dirs(l1, incs1, compA);
    auto dirsB = traversal_dirs(s2, incs2, compB);
    Slot sa1 = dirsA.at(alpha).tail;
    Slot sa2 = dirsA.at(alpha).head;
    Slot sb1 = dirsB.at(beta).tail;
    Slot sb2 = dirsB.at(beta).head;
    // splice: alpha now runs sa1 -> sb2, beta runs sb1 -> sa2
    out.crossings[sb2.crossing + cross_off].arcs[sb2.pos] = alpha;
    out.crossings[sa2.crossing].arcs[sa2.pos] = beta;
    std::vector<int> a_order = rotate_to_front(compA.arcs, alpha);
    std::vector<int> b_order = rotate_to_front(compB.arcs, beta);
    merged.arcs.push_back(alpha);
    merged.arcs.insert(merged.arcs.end(), b_order.begin() + 1, b_order.end());
    merged.arcs.push_back(beta);
    merged.arcs.insert(merged.arcs.end(), a_order.begin() + 1, a_order.end());
    if (out.oriented) {
      out.directions[alpha] = {sa1, {sb2.crossing + cross_off, sb2.pos}};
      out.directions[beta] = {{sb1.crossing + cross_off, sb1.pos}, sa2};
    }
  }

  std::string fresh = "m" + std::to_string(l1.merge_log.size() + l2.merge_log.size());
  merged.label = fresh;

  for (size_t i = 0; i < l1.components.size(); ++i)
    out.components.push_back(static_cast<int>(i) == i1 ? merged : l1.components[i]);
  for (size_t i = 0; i < s2.components.size(); ++i)
    if (static_cast<int>(i) != i2) out.components.push_back(s2.components[i]);

  out.merge_log = l1.merge_log;
  out.merge_log.insert(out.merge_log.end(), s2.merge_log.begin(), s2.merge_log.end());
  out.merge_log.push_back({fresh, compA.label, compB.label});

  std::set<std::string> labels;
  for (const auto& comp : out.components)
    if (!labels.insert(comp.label).second)
      throw InputError("connected_sum would produce duplicate component label " + comp.label);

  if (out.oriented) {
    // drop directions of dropped crossingless arcs
    std::set<int> alive;
    for (const auto& comp : out.components) alive.insert(comp.arcs.begin(), comp.arcs.end());
    for (auto it = out.directions.begin(); it != out.directions.end();)
      it = alive.count(it->first) ? std::next(it) : out.directions.erase(it);
    normalize_under_in(out);
  }

  out.factors = factors_or_self(l1);
  auto f2 = factors_or_self(l2);
  out.factors.insert(out.factors.end(), f2.begin(), f2.end());
  return out;
}

std::string part_label(int vertex, int part) {
  return "v" + std::to_string(vertex) + (part == 0 ? ".A" : ".B");
}

LinkDiagram associated_link(const LBTree& t) {
  ValidationReport vr = validate_lbtree(t);
  if (!vr.ok) throw InputError("associated_link: invalid lbtree: " + vr.summary());

  std::map<int, LinkDiagram> hopfs;
  for (int v : t.tree.vertices) hopfs.emplace(v, hopf_link(part_label(v, 0), part_label(v, 1)));

  int v0 = t.tree.vertices.front();
  LinkDiagram acc = hopfs.at(v0);
  std::set<int> merged{v0};
  std::set<int> pending;
  for (size_t e = 0; e < t.tree.edges.size(); ++e) pending.insert(static_cast<int>(e));

  while (!pending.empty()) {
    int chosen = -1;
    for (int e : pending) {
      const Edge& ed = t.tree.edges[e];
      if (merged.count(ed.u) != merged.count(ed.v)) {
        chosen = e;
        break;
      }
    }
    if (chosen < 0) throw InternalError("associated_link: tree fold stuck");
    const Edge& ed = t.tree.edges[chosen];
    int inside = merged.count(ed.u) ? ed.u : ed.v;
    int outside = ed.other(inside);
    acc = connected_sum(acc, part_label(inside, t.part_of(inside, chosen)), hopfs.at(outside),
                        part_label(outside, t.part_of(outside, chosen)));
    merged.insert(outside);
    pending.erase(chosen);
  }

  size_t k = t.tree.vertices.size();
  if (acc.components.size() != k + 1 || acc.crossings.size() != 2 * k)
    throw InternalError("associated_link: wrong component or crossing count");
  return acc;
}

LinkDiagram mirror(const LinkDiagram& l) {
  LinkDiagram out = l;
  for (auto& x : out.crossings) x.arcs = {x.arcs[1], x.arcs[2], x.arcs[3], x.arcs[0]};
  for (auto& [arc, d] : out.directions) {
    d.tail.pos = (d.tail.pos + 3) % 4;
    d.head.pos = (d.head.pos + 3) % 4;
  }
  out.factors.clear();
  for (const auto& f : l.factors) out.factors.push_back(std::make_shared<LinkDiagram>(mirror(*f)));
  normalize_under_in(out);
  return out;
}

LinkDiagram orient(const LinkDiagram& l, const std::vector<bool>& flips) {
  LinkDiagram out = l;
  out.oriented = true;
  out.directions.clear();
  IncidenceMap incs = incidence_map(out.crossings);
  for (size_t ci = 0; ci < out.components.size(); ++ci) {
    LinkComponent& comp = out.components[ci];
    if (!incs.count(comp.arcs.front())) continue;  // crossingless
    int match = -1;
    Walk w0 = walk_component(out.crossings, incs, comp.arcs.front(), 0);
    Walk w1 = walk_component(out.crossings, incs, comp.arcs.front(), 1);
    if (w0.ok && w0.order == comp.arcs) match = 0;
    else if (w1.ok && w1.order == comp.arcs) match = 1;
    if (match < 0) throw InternalError("orient: stored component order is not a traversal");
    bool flip = ci < flips.size() && flips[ci];
    const Walk& w = (match == 0) != flip ? w0 : w1;
    if (!w.ok) throw InternalError("orient: traversal failed");
    comp.arcs = w.order;
    for (const auto& [arc, d] : w.dirs) out.directions[arc] = d;
  }
  normalize_under_in(out);
  return out;
}

LinkDiagram reverse_component(const LinkDiagram& l, const std::string& label) {
  if (!l.oriented) throw InputError("reverse_component requires an oriented diagram");
  LinkDiagram out = l;
  int ci = out.resolve_label(label);
  LinkComponent& comp = out.components[ci];
  for (int a : comp.arcs) {
    auto it = out.directions.find(a);
    if (it != out.directions.end()) std::swap(it->second.tail, it->second.head);
  }
  if (comp.arcs.size() > 1) std::reverse(comp.arcs.begin() + 1, comp.arcs.end());
  normalize_under_in(out);
  return out;
}

int component_count(const LinkDiagram& l) {
  std::vector<int> arcs = l.arc_ids();
  if (arcs.empty()) return 0;
  std::map<int, int> dense;
  for (size_t i = 0; i < arcs.size(); ++i) dense[arcs[i]] = static_cast<int>(i);
  Dsu dsu(static_cast<int>(arcs.size()));
  for (const Crossing& x : l.crossings) {
    dsu.unite(dense.at(x.arcs[0]), dense.at(x.arcs[2]));
    dsu.unite(dense.at(x.arcs[1]), dense.at(x.arcs[3]));
  }
  std::set<int> roots;
  for (size_t i = 0; i < arcs.size(); ++i) roots.insert(dsu.find(static_cast<int>(i)));
  return static_cast<int>(roots.size());
}

std::vector<int> crossing_signs(const LinkDiagram& l) {
  if (!l.oriented) throw InputError("crossing_signs requires an oriented diagram");
  std::set<Slot> heads = head_slots(l);
  std::vector<int> signs;
  for (size_t c = 0; c < l.crossings.size(); ++c) {
    bool in1 = heads.count({static_cast<int>(c), 1}) > 0;
    bool in3 = heads.count({static_cast<int>(c), 3}) > 0;
    if (in1 == in3) throw InternalError("over-strand direction inconsistent at crossing " + std::to_string(c));
    signs.push_back(in3 ? 1 : -1);  // positive: over-strand runs position 3 -> 1
  }
  return signs;
}

int writhe(const LinkDiagram& l) {
  int w = 0;
  for (int s : crossing_signs(l)) w += s;
  return w;
}

std::vector<std::vector<int>> linking_matrix(const LinkDiagram& l) {
  if (!l.oriented) throw InputError("linking_matrix requires an oriented diagram");
  size_t n = l.components.size();
  std::map<int, int> comp_of;
  for (size_t i = 0; i < n; ++i)
    for (int a : l.components[i].arcs) comp_of[a] = static_cast<int>(i);
  std::vector<std::vector<int>> twice(n, std::vector<int>(n, 0));
  std::vector<int> signs = crossing_signs(l);
  for (size_t c = 0; c < l.crossings.size(); ++c) {
    int under = comp_of.at(l.crossings[c].arcs[0]);
    int over = comp_of.at(l.crossings[c].arcs[1]);
    if (under == over) continue;
    twice[under][over] += signs[c];
    twice[over][under] += signs[c];
  }
  std::vector<std::vector<int>> out(n, std::vector<int>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (twice[i][j] % 2 != 0) throw InternalError("odd signed crossing count between components");
      out[i][j] = twice[i][j] / 2;
    }
  return out;
}

int default_crossing_cap() {
  if (const char* env = std::getenv("PLUMBLINE_CROSSING_CAP")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 20;
}

LaurentPoly kauffman_bracket(const LinkDiagram& l, const BracketOptions& opts) {
  if (opts.fast_path && !l.factors.empty()) {
    LaurentPoly out = LaurentPoly::one();
    for (const auto& f : l.factors) out = out * kauffman_bracket(*f, opts);
    return out;
  }
  int c = static_cast<int>(l.crossings.size());
  if (c > opts.crossing_cap)
    throw ResourceError("naive bracket on " + std::to_string(c) + " crossings exceeds the cap of " +
                        std::to_string(opts.crossing_cap) +
                        " (raise PLUMBLINE_CROSSING_CAP or use a connected-sum construction)");
  if (c > 28) throw ResourceError("naive bracket limited to 28 crossings");

  std::vector<int> arcs = l.arc_ids();
  if (arcs.empty()) throw InputError("bracket of an empty diagram");
  std::map<int, int> dense;
  for (size_t i = 0; i < arcs.size(); ++i) dense[arcs[i]] = static_cast<int>(i);

  LaurentPoly delta = LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2);
  std::vector<LaurentPoly> delta_pow{LaurentPoly::one()};
  for (size_t i = 1; i <= arcs.size(); ++i) delta_pow.push_back(delta_pow.back() * delta);

  LaurentPoly acc;
  for (std::uint32_t state = 0; state < (1u << c); ++state) {
    Dsu dsu(static_cast<int>(arcs.size()));
    for (int i = 0; i < c; ++i) {
      const auto& t = l.crossings[i].arcs;
      if ((state >> i) & 1u) {  // B-smoothing
        dsu.unite(dense.at(t[0]), dense.at(t[3]));
        dsu.unite(dense.at(t[1]), dense.at(t[2]));
      } else {  // A-smoothing
        dsu.unite(dense.at(t[0]), dense.at(t[1]));
        dsu.unite(dense.at(t[2]), dense.at(t[3]));
      }
    }
    std::set<int> roots;
    for (size_t i = 0; i < arcs.size(); ++i) roots.insert(dsu.find(static_cast<int>(i)));
    int loops = static_cast<int>(roots.size());
    int b_count = __builtin_popcount(state);
    acc += delta_pow[loops - 1].shifted(1, c - 2 * b_count);
  }
  return acc;
}

LaurentPoly jones(const LinkDiagram& l, const BracketOptions& opts) {
  if (!l.oriented) throw InputError("jones requires an oriented diagram");
  return jones_from_bracket(kauffman_bracket(l, opts), writhe(l));
}

AmphichiralEvidence amphichiral_evidence(const LinkDiagram& l, int component_cap,
                                         const BracketOptions& opts) {
  int nc = static_cast<int>(l.components.size());
  if (nc > component_cap)
    throw ResourceError("amphichiral_evidence: " + std::to_string(nc) +
                        " components exceed the orientation enumeration cap of " +
                        std::to_string(component_cap));

  LinkDiagram m = mirror(l);
  LaurentPoly bracket_l = kauffman_bracket(l, opts);
  LaurentPoly bracket_m = kauffman_bracket(m, opts);

  auto multiset_of = [&](const LinkDiagram& d, const LaurentPoly& bracket) {
    std::multiset<LaurentPoly> out;
    for (std::uint32_t mask = 0; mask < (1u << nc); ++mask) {
      std::vector<bool> flips(nc);
      for (int i = 0; i < nc; ++i) flips[i] = (mask >> i) & 1u;
      LinkDiagram od = orient(d, flips);
      out.insert(jones_from_bracket(bracket, writhe(od)));
    }
    return out;
  };

  std::multiset<LaurentPoly> ms_l = multiset_of(l, bracket_l);
  std::multiset<LaurentPoly> ms_m = multiset_of(m, bracket_m);

  std::multiset<LaurentPoly> ms_l_inverted;
  for (const auto& p : ms_l) ms_l_inverted.insert(p.invert_variable());
  if (ms_l_inverted != ms_m)
    throw InternalError("jones(mirror) != jones(t^-1); state sum implementation broken");

  AmphichiralEvidence ev;
  ev.orientation_count = 1 << nc;
  ev.pass = ms_l == ms_m;
  for (const auto& p : ms_l) ev.jones_multiset.push_back(p.to_string_half("t"));
  for (const auto& p : ms_m) ev.mirror_jones_multiset.push_back(p.to_string_half("t"));
  ev.detail = ev.pass ? "multiset of Jones polynomials is closed under t <-> 1/t"
                      : "multisets differ; diagram and mirror are distinguishable";
  return ev;
}

namespace {

// Canonical PD code: minimize a traversal token stream over every start arc,
// direction, and continuation branch. Tokens are expressed in first-visit
// arc ids, so the stream is relabeling-invariant; a sorted relabeled tuple
// section is appended to pin down the full structure.
struct CanonContext {
  const std::vector<Crossing>* crossings;
  IncidenceMap incs;
  std::vector<int> crossing_arcs;  // arc ids appearing in crossings
  std::map<int, int> dense;
  int crossingless = 0;
  std::vector<std::vector<int>> component_arcs;  // per stored component, crossing arcs only
  std::vector<int> best;
  bool have_best = false;
};

struct CanonState {
  std::map<int, int> new_id;
  int assigned = 0;
  std::vector<int> out;
  int cmp = 0;  // 0 tied with best, -1 strictly smaller somewhere
};

bool canon_emit(CanonContext& ctx, CanonState& st, int token) {
  if (st.cmp == 0 && ctx.have_best) {
    size_t pos = st.out.size();
    if (pos >= ctx.best.size()) return false;
    if (token > ctx.best[pos]) return false;
    if (token < ctx.best[pos]) st.cmp = -1;
  }
  st.out.push_back(token);
  return true;
}

bool canon_walk(CanonContext& ctx, CanonState& st, int start, int head_choice) {
  Slot head = ctx.incs.at(start)[head_choice];
  int arc = start;
  while (true) {
    if (!st.new_id.count(arc)) {
      st.new_id[arc] = st.assigned++;
    }
    const auto& tuple = (*ctx.crossings)[head.crossing].arcs;
    if (!canon_emit(ctx, st, st.new_id.at(arc))) return false;
    if (!canon_emit(ctx, st, head.pos % 2)) return false;
    for (int d = 1; d <= 3; ++d) {
      int a = tuple[(head.pos + d) % 4];
      auto it = st.new_id.find(a);
      if (!canon_emit(ctx, st, it == st.new_id.end() ? -1 : it->second)) return false;
    }
    Slot exit{head.crossing, (head.pos + 2) % 4};
    int next = (*ctx.crossings)[exit.crossing].arcs[exit.pos];
    if (next == start) return canon_emit(ctx, st, -2);
    head = other_incidence(ctx.incs, next, exit);
    arc = next;
  }
}

void canon_finalize(CanonContext& ctx, CanonState& st) {
  if (!canon_emit(ctx, st, -3)) return;
  std::vector<std::array<int, 4>> tuples;
  for (const Crossing& x : *ctx.crossings) {
    std::array<int, 4> t;
    for (int p = 0; p < 4; ++p) t[p] = st.new_id.at(x.arcs[p]);
    std::array<int, 4> rot{t[2], t[3], t[0], t[1]};
    tuples.push_back(std::min(t, rot));
  }
  std::sort(tuples.begin(), tuples.end());
  for (const auto& t : tuples)
    for (int p = 0; p < 4; ++p)
      if (!canon_emit(ctx, st, t[p])) return;
  if (!canon_emit(ctx, st, -4)) return;
  std::vector<std::vector<int>> comps;
  for (const auto& arcs : ctx.component_arcs) {
    std::vector<int> ids;
    for (int a : arcs) ids.push_back(st.new_id.at(a));
    std::sort(ids.begin(), ids.end());
    comps.push_back(std::move(ids));
  }
  std::sort(comps.begin(), comps.end());
  for (const auto& c : comps) {
    for (int id : c)
      if (!canon_emit(ctx, st, id)) return;
    if (!canon_emit(ctx, st, -5)) return;
  }
  if (!canon_emit(ctx, st, ctx.crossingless)) return;
  if (!ctx.have_best || st.out < ctx.best) {
    ctx.best = st.out;
    ctx.have_best = true;
  }
}

void canon_continue(CanonContext& ctx, CanonState& st) {
  if (st.assigned == static_cast<int>(ctx.crossing_arcs.size())) {
    canon_finalize(ctx, st);
    return;
  }
  // anchor crossings: smallest sorted labeled-id key among crossings that
  // still touch unlabeled arcs
  std::vector<int> starts;
  std::vector<int> best_key;
  bool found = false;
  for (const Crossing& x : *ctx.crossings) {
    std::vector<int> key;
    std::vector<int> unassigned;
    for (int p = 0; p < 4; ++p) {
      auto it = st.new_id.find(x.arcs[p]);
      if (it == st.new_id.end())
        unassigned.push_back(x.arcs[p]);
      else
        key.push_back(it->second);
    }
    if (key.empty() || unassigned.empty()) continue;
    std::sort(key.begin(), key.end());
    if (!found || key < best_key) {
      best_key = key;
      starts = unassigned;
      found = true;
    } else if (key == best_key) {
      starts.insert(starts.end(), unassigned.begin(), unassigned.end());
    }
  }
  if (!found)
    for (int a : ctx.crossing_arcs)
      if (!st.new_id.count(a)) starts.push_back(a);  // split remainder
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  for (int s : starts)
    for (int dir = 0; dir < 2; ++dir) {
      CanonState st2 = st;
      if (canon_walk(ctx, st2, s, dir)) canon_continue(ctx, st2);
    }
}

}  // namespace

std::string canonical_pd_code(const LinkDiagram& l) {
  if (l.crossings.size() > 32) throw ResourceError("canonical_pd_code limited to 32 crossings");
  CanonContext ctx;
  ctx.crossings = &l.crossings;
  ctx.incs = incidence_map(l.crossings);
  for (const auto& comp : l.components) {
    if (!ctx.incs.count(comp.arcs.front())) {
      ++ctx.crossingless;
      continue;
    }
    ctx.component_arcs.push_back(comp.arcs);
    for (int a : comp.arcs) ctx.crossing_arcs.push_back(a);
  }
  std::sort(ctx.crossing_arcs.begin(), ctx.crossing_arcs.end());

  if (ctx.crossing_arcs.empty()) {
    CanonState st;
    canon_finalize(ctx, st);
  } else {
    for (int a : ctx.crossing_arcs)
      for (int dir = 0; dir < 2; ++dir) {
        CanonState st;
        if (canon_walk(ctx, st, a, dir)) canon_continue(ctx, st);
      }
  }
  std::ostringstream os;
  for (size_t i = 0; i < ctx.best.size(); ++i) {
    if (i) os << ",";
    os << ctx.best[i];
  }
  return os.str();
}

bool same_diagram(const LinkDiagram& a, const LinkDiagram& b) {
  if (a.crossings.size() != b.crossings.size()) return false;
  for (size_t i = 0; i < a.crossings.size(); ++i) {
    const auto& x = a.crossings[i].arcs;
    const auto& y = b.crossings[i].arcs;
    std::array<int, 4> rot{y[2], y[3], y[0], y[1]};
    if (x != y && x != rot) return false;
  }
  if (a.components.size() != b.components.size()) return false;
  for (size_t i = 0; i < a.components.size(); ++i)
    if (a.components[i].label != b.components[i].label || a.components[i].arcs != b.components[i].arcs)
      return false;
  return true;
}

LinkDiagram parse_pd_text(const std::string& text) {
  LinkDiagram l;
  std::set<int> arcs;
  std::vector<std::pair<std::string, std::vector<int>>> comp_lines;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    auto err = [&](const std::string& msg) {
      return InputError("PD text line " + std::to_string(lineno) + ": " + msg);
    };
    if (line[0] == 'X') {
      auto open = line.find('(');
      auto close = line.find(')');
      if (open == std::string::npos || close == std::string::npos || close < open)
        throw err("expected X(a,b,c,d)");
      std::string body = line.substr(open + 1, close - open - 1);
      std::replace(body.begin(), body.end(), ',', ' ');
      std::istringstream bs(body);
      Crossing x;
      for (int p = 0; p < 4; ++p)
        if (!(bs >> x.arcs[p])) throw err("expected four arc ids");
      l.crossings.push_back(x);
      for (int p = 0; p < 4; ++p) arcs.insert(x.arcs[p]);
    } else if (line[0] == 'C') {
      auto colon = line.find(':');
      if (colon == std::string::npos) throw err("expected C label: arcs");
      std::string label = line.substr(1, colon - 1);
      auto lf = label.find_first_not_of(" \t");
      auto ll = label.find_last_not_of(" \t");
      label = lf == std::string::npos ? "" : label.substr(lf, ll - lf + 1);
      if (label.empty()) throw err("empty component label");
      std::string body = line.substr(colon + 1);
      std::replace(body.begin(), body.end(), ',', ' ');
      std::istringstream bs(body);
      std::vector<int> ids;
      int a;
      while (bs >> a) ids.push_back(a);
      if (ids.empty()) throw err("component without arcs");
      comp_lines.emplace_back(label, ids);
      for (int id : ids) arcs.insert(id);
    } else {
      throw err("expected X(...) or C ...");
    }
  }
  if (comp_lines.empty()) {
    l.components = derive_components(l.crossings, arcs);
    for (size_t i = 0; i < l.components.size(); ++i) l.components[i].label = "c" + std::to_string(i);
  } else {
    for (auto& [label, ids] : comp_lines) l.components.push_back({label, ids});
  }
  ValidationReport r = validate_link(l);
  if (!r.ok) throw InputError("PD text is not a valid diagram: " + r.summary());
  return l;
}

std::string format_pd_text(const LinkDiagram& l) {
  std::ostringstream os;
  for (const Crossing& x : l.crossings)
    os << "X(" << x.arcs[0] << "," << x.arcs[1] << "," << x.arcs[2] << "," << x.arcs[3] << ")\n";
  for (const auto& comp : l.components) {
    os << "C " << comp.label << ":";
    for (size_t i = 0; i < comp.arcs.size(); ++i) os << (i ? "," : " ") << comp.arcs[i];
    os << "\n";
  }
  return os.str();
}

}  // namespace plumbline
