#include "plumbline/tubing.hpp"

#include <algorithm>
#include <functional>
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
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ExcisedSurface excise(const ImmersedSurface& s, const SuitableEmbedding& e) {
  ValidationReport vr = verify_embedding(e);
  if (!vr.ok) throw InputError("excise: embedding does not verify: " + vr.summary());

  ExcisedSurface out;
  out.chi_original = s.domain.euler_characteristic();
  out.surface = s.domain;
  out.oriented = std::all_of(s.domain.components.begin(), s.domain.components.end(),
                             [](const SurfaceComponent& c) { return c.orientable; });

  LiftForest lift = lift_forest(e);
  out.link = link_of_embedding(e);

  // one disc removed per lift component, on the component's carrier
  std::vector<int> lift_domain(lift.component_count, -1);
  std::vector<std::string> lift_label(lift.component_count);
  for (size_t i = 0; i < lift.nodes.size(); ++i) {
    int lc = lift.node_component[i];
    lift_domain[lc] = lift.nodes[i].domain_component;
    if (lift_label[lc].empty()) lift_label[lc] = lift.nodes[i].label;
  }
  for (int lc = 0; lc < lift.component_count; ++lc) {
    int dc = lift_domain[lc];
    out.surface.components[dc].boundary_circles += 1;
    ExcisedSurface::Circle circle;
    circle.id = lc;
    circle.domain_component = dc;
    circle.part_label = lift_label[lc];
    circle.link_component = out.link.resolve_label(lift_label[lc]);
    out.circles.push_back(circle);
  }
  if (static_cast<int>(out.circles.size()) != static_cast<int>(out.link.components.size()))
    throw InternalError("excise: circle count does not match link component count");
  {
    std::set<int> seen;
    for (const auto& c : out.circles)
      if (!seen.insert(c.link_component).second)
        throw InternalError("excise: two circles map to one link component");
  }

  out.remaining_double_points =
      static_cast<int>(s.double_points.size()) - static_cast<int>(e.vertex_map.size());

  std::ostringstream os;
  os << "excised " << lift.component_count << " discs: chi " << out.chi_original << " -> "
     << out.surface.euler_characteristic();
  out.log.push_back(os.str());
  if (out.surface.euler_characteristic() != out.chi_original - lift.component_count)
    throw InternalError("excise: euler characteristic bookkeeping broken");
  return out;
}

TubingResult tube(const ExcisedSurface& a, const ExcisedSurface& b) {
  // the two excision links must agree componentwise through their labels;
  // for associated links of the same tree they are equal by construction
  // and mirror-equivalent as links
  if (a.link.components.size() != b.link.components.size()) {
    throw InputError("tube: links have " + std::to_string(a.link.components.size()) + " and " +
                     std::to_string(b.link.components.size()) + " components");
  }
  bool identical = same_diagram(a.link, b.link);
  if (!identical && canonical_pd_code(a.link) != canonical_pd_code(b.link))
    throw InputError("tube: excision links are not the same diagram up to relabeling");

  std::map<int, const ExcisedSurface::Circle*> circle_a, circle_b;
  for (const auto& c : a.circles) circle_a[c.link_component] = &c;
  std::vector<std::string> unpaired;
  for (const auto& cb : b.circles) {
    int idx;
    try {
      idx = a.link.resolve_label(cb.part_label);
    } catch (const Error&) {
      unpaired.push_back(cb.part_label);
      continue;
    }
    if (!circle_a.count(idx)) unpaired.push_back(cb.part_label);
    circle_b[idx] = &cb;
  }
  if (!unpaired.empty()) {
    std::string msg = "tube: unpaired link components:";
    for (const auto& u : unpaired) msg += " " + u;
    throw InputError(msg);
  }

  TubingResult r;
  r.inputs_oriented = a.oriented && b.oriented;
  r.chi_union = a.chi_original + b.chi_original;
  r.remaining_double_points = a.remaining_double_points + b.remaining_double_points;
  r.piece_a_components = static_cast<int>(a.surface.components.size());

  int na = static_cast<int>(a.surface.components.size());
  int nb = static_cast<int>(b.surface.components.size());
  Dsu dsu(na + nb);
  for (const auto& [link_comp, ca] : circle_a) {
    const ExcisedSurface::Circle* cb = circle_b.at(link_comp);
    Annulus an;
    an.circle_a = ca->id;
    an.circle_b = cb->id;
    an.piece_a_component = ca->domain_component;
    an.piece_b_component = cb->domain_component;
    an.link_component = link_comp;
    an.label = ca->part_label;
    r.annuli.push_back(an);
    dsu.unite(ca->domain_component, na + cb->domain_component);
  }
  r.annuli_count = static_cast<int>(r.annuli.size());

  // per merged class: chi adds, boundaries add minus two per annulus inside
  std::map<int, int> chi, boundary;
  std::map<int, bool> orientable;
  for (int i = 0; i < na + nb; ++i) {
    const SurfaceComponent& c =
        i < na ? a.surface.components[i] : b.surface.components[i - na];
    int root = dsu.find(i);
    chi[root] += c.euler_characteristic();
    boundary[root] += c.boundary_circles;
    auto it = orientable.find(root);
    orientable[root] = (it == orientable.end() ? true : it->second) && c.orientable;
  }
  for (const Annulus& an : r.annuli) boundary[dsu.find(an.piece_a_component)] -= 2;

  for (const auto& [root, x] : chi) {
    int base = x;
    int bd = boundary.at(root);
    int twice_genus = 2 - base - bd;
    if (twice_genus < 0 || twice_genus % 2 != 0)
      throw InternalError("tube: merged component has no consistent genus (chi " + std::to_string(base) +
                          ", boundary " + std::to_string(bd) + ")");
    SurfaceComponent c;
    c.genus = twice_genus / 2;
    c.boundary_circles = bd;
    c.orientable = orientable.at(root);
    r.surface.components.push_back(c);
  }

  int chi_result = r.surface.euler_characteristic();
  int link_count = static_cast<int>(a.link.components.size());
  std::ostringstream os;
  os << "tubed " << r.annuli_count << " annuli: chi(union) " << r.chi_union << " - 2*" << link_count
     << " = " << chi_result;
  r.log.push_back(os.str());
  if (chi_result != r.chi_union - 2 * link_count)
    throw InternalError("tube: euler characteristic law broken");
  return r;
}

TubingResult orient_result(const TubingResult& r, const std::vector<CirclePairing>& orientations) {
  if (!r.inputs_oriented) throw InputError("orient_result: both tubing inputs must be oriented");
  if (orientations.size() != r.annuli.size())
    throw InputError("orient_result: expected one pairing per annulus");

  // 2-colouring over piece components: nodes carry a sign relative to their
  // class root; a reversed pairing forces equal signs, a flipped one opposite
  int na = r.piece_a_components;
  int max_b = 0;
  for (const Annulus& an : r.annuli) max_b = std::max(max_b, an.piece_b_component + 1);
  int n = na + max_b;
  std::vector<int> parent(n), parity(n, 0);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::pair<int, int>(int)> find = [&](int x) -> std::pair<int, int> {
    if (parent[x] == x) return {x, 0};
    auto [root, par] = find(parent[x]);
    parent[x] = root;
    parity[x] ^= par;
    return {root, parity[x]};
  };
  for (size_t i = 0; i < r.annuli.size(); ++i) {
    const Annulus& an = r.annuli[i];
    int u = an.piece_a_component;
    int v = na + an.piece_b_component;
    int want = orientations[i].reversed ? 0 : 1;
    auto [ru, pu] = find(u);
    auto [rv, pv] = find(v);
    if (ru != rv) {
      parent[ru] = rv;
      parity[ru] = pu ^ pv ^ want;
    } else if ((pu ^ pv) != want) {
      throw InputError("orient_result: inconsistent orientation system at circle pair (" +
                       std::to_string(an.circle_a) + ", " + std::to_string(an.circle_b) + ") labelled " +
                       an.label);
    }
  }
  TubingResult out = r;
  out.orientation_checked = true;
  out.orientation_consistent = true;
  out.log.push_back("orientation system consistent over " + std::to_string(r.annuli.size()) + " annuli");
  return out;
}

int euler_characteristic(const AbstractSurface& s) { return s.euler_characteristic(); }

SurfaceClass classify(const AbstractSurface& s) {
  SurfaceClass out;
  out.components = static_cast<int>(s.components.size());
  for (const SurfaceComponent& c : s.components) {
    if (!c.orientable) throw InputError("classify: non-orientable surfaces unsupported");
    out.genus_boundary.emplace_back(c.genus, c.boundary_circles);
  }
  return out;
}

}  // namespace plumbline
