#include "plumbline/certificate_io.hpp"

#include <algorithm>
#include <sstream>

#include "plumbline/errors.hpp"

namespace plumbline {

using nlohmann::json;

namespace {

json tree_to_json(const LBTree& t, const Bicolouring& c) {
  json jt;
  jt["vertices"] = t.tree.vertices;
  json edges = json::array();
  for (const Edge& e : t.tree.edges) edges.push_back({e.u, e.v});
  jt["edges"] = edges;
  json parts;
  for (const auto& [v, pr] : t.parts) {
    parts[std::to_string(v)] = {{"a", std::vector<int>(pr.first.begin(), pr.first.end())},
                                {"b", std::vector<int>(pr.second.begin(), pr.second.end())}};
  }
  jt["parts"] = parts;
  json colours;
  for (const auto& [e, col] : c.colour) colours[std::to_string(e)] = col;
  jt["bicolouring"] = colours;
  return jt;
}

void tree_from_json(const json& jt, LBTree& t, Bicolouring& c) {
  t = LBTree{};
  c = Bicolouring{};
  t.tree.vertices = jt.at("vertices").get<std::vector<int>>();
  for (const auto& e : jt.at("edges")) t.tree.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  for (const auto& [key, val] : jt.at("parts").items()) {
    EdgeSet a, b;
    for (int e : val.at("a").get<std::vector<int>>()) a.insert(e);
    for (int e : val.at("b").get<std::vector<int>>()) b.insert(e);
    t.parts[std::stoi(key)] = {a, b};
  }
  for (const auto& [key, val] : jt.at("bicolouring").items()) c.colour[std::stoi(key)] = val.get<int>();
}

void embedding_maps_from_json(const json& je, SuitableEmbedding& e) {
  for (const auto& [key, val] : je.at("vertex_map").items()) e.vertex_map[std::stoi(key)] = val.get<int>();
  for (const auto& [key, val] : je.at("edge_map").items())
    e.edge_map[std::stoi(key)] = {val.at("slot_at_u").get<int>(), val.at("slot_at_v").get<int>(),
                                  val.at("carrier").get<int>()};
}

json link_to_json(const LinkDiagram& l) {
  json jl;
  json xs = json::array();
  for (const Crossing& x : l.crossings) xs.push_back({x.arcs[0], x.arcs[1], x.arcs[2], x.arcs[3]});
  jl["crossings"] = xs;
  json comps = json::array();
  for (const auto& c : l.components) comps.push_back({{"label", c.label}, {"arcs", c.arcs}});
  jl["components"] = comps;
  json merges = json::array();
  for (const auto& m : l.merge_log) merges.push_back({{"merged", m.merged}, {"left", m.left}, {"right", m.right}});
  jl["merge_log"] = merges;
  return jl;
}

LinkDiagram link_from_json(const json& jl) {
  LinkDiagram l;
  for (const auto& x : jl.at("crossings")) {
    Crossing cr;
    for (int p = 0; p < 4; ++p) cr.arcs[p] = x.at(p).get<int>();
    l.crossings.push_back(cr);
  }
  for (const auto& c : jl.at("components"))
    l.components.push_back({c.at("label").get<std::string>(), c.at("arcs").get<std::vector<int>>()});
  for (const auto& m : jl.at("merge_log"))
    l.merge_log.push_back({m.at("merged").get<std::string>(), m.at("left").get<std::string>(),
                           m.at("right").get<std::string>()});
  return l;
}

json plumbing_to_json(const PlumbingTree& p) {
  json jp;
  json vs = json::array();
  for (int v : p.graph.vertices) {
    json jv;
    jv["id"] = v;
    jv["genus"] = p.genus.count(v) ? p.genus.at(v) : 0;
    if (p.euler_number.count(v)) jv["euler"] = p.euler_number.at(v);
    vs.push_back(jv);
  }
  jp["vertices"] = vs;
  json es = json::array();
  for (const Edge& e : p.graph.edges) es.push_back({e.u, e.v});
  jp["edges"] = es;
  return jp;
}

PlumbingTree plumbing_from_json(const json& jp) {
  PlumbingTree p;
  for (const auto& jv : jp.at("vertices")) {
    int id = jv.at("id").get<int>();
    p.graph.vertices.push_back(id);
    p.genus[id] = jv.at("genus").get<int>();
    if (jv.contains("euler")) p.euler_number[id] = jv.at("euler").get<int>();
  }
  for (const auto& e : jp.at("edges")) p.graph.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  return p;
}

json surface_to_json(const AbstractSurface& s) {
  json out = json::array();
  for (const SurfaceComponent& c : s.components)
    out.push_back({{"genus", c.genus}, {"boundary", c.boundary_circles}, {"orientable", c.orientable}});
  return out;
}

AbstractSurface surface_from_json(const json& js) {
  AbstractSurface s;
  for (const auto& c : js)
    s.components.push_back({c.at("genus").get<int>(), c.at("boundary").get<int>(),
                            c.at("orientable").get<bool>()});
  return s;
}

json excision_to_json(const ExcisedSurface& e) {
  json je;
  je["surface"] = surface_to_json(e.surface);
  je["chi_original"] = e.chi_original;
  je["remaining_double_points"] = e.remaining_double_points;
  je["oriented"] = e.oriented;
  json circles = json::array();
  for (const auto& c : e.circles)
    circles.push_back({{"id", c.id},
                       {"domain_component", c.domain_component},
                       {"link_component", c.link_component},
                       {"part_label", c.part_label}});
  je["circles"] = circles;
  return je;
}

ExcisedSurface excision_from_json(const json& je) {
  ExcisedSurface e;
  e.surface = surface_from_json(je.at("surface"));
  e.chi_original = je.at("chi_original").get<int>();
  e.remaining_double_points = je.at("remaining_double_points").get<int>();
  e.oriented = je.at("oriented").get<bool>();
  for (const auto& c : je.at("circles"))
    e.circles.push_back({c.at("id").get<int>(), c.at("domain_component").get<int>(),
                         c.at("link_component").get<int>(), c.at("part_label").get<std::string>()});
  return e;
}

json opt_to_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json embedding_maps_to_json(const SuitableEmbedding& e) {
  json je;
  json vm = json::object();
  for (const auto& [v, d] : e.vertex_map) vm[std::to_string(v)] = d;
  je["vertex_map"] = vm;
  json em = json::object();
  for (const auto& [eid, ends] : e.edge_map)
    em[std::to_string(eid)] = {
        {"slot_at_u", ends.slot_at_u}, {"slot_at_v", ends.slot_at_v}, {"carrier", ends.carrier}};
  je["edge_map"] = em;
  return je;
}

namespace {

std::optional<int> opt_from_json(const json& j) {
  return j.is_null() ? std::nullopt : std::optional<int>(j.get<int>());
}

}  // namespace

json certificate_to_json(const Certificate& c) {
  json j;
  j["schema"] = c.schema;
  j["category"] = c.category;
  j["knot"] = {{"name", c.knot.name},
               {"u", opt_to_json(c.knot.u_upper)},
               {"c4", opt_to_json(c.knot.c4_upper)},
               {"g4", opt_to_json(c.knot.g4_upper)},
               {"source", c.knot.source}};
  j["bounds"] = {{"u", opt_to_json(c.bounds.u_upper)},
                 {"c4", opt_to_json(c.bounds.c4_upper)},
                 {"g4", opt_to_json(c.bounds.g4_upper)},
                 {"c4_source", c.bounds.c4_source},
                 {"slice_in_b4", c.bounds.slice_in_b4},
                 {"notes", c.bounds.notes}};
  json jm;
  jm["name"] = c.manifold.name;
  jm["shape"] = c.manifold.synthetic_shape ? "synthetic" : "explicit";
  if (const PlumbingTree* p = c.manifold.plumbing()) {
    jm["kind"] = "plumbing";
    jm["plumbing"] = plumbing_to_json(*p);
  } else {
    const ZeroFramedSphere* z = c.manifold.zero_framed();
    jm["kind"] = "zero_framed_sphere";
    jm["zero_framed_sphere"] = {{"dual_genus", z->dual_genus}, {"framing", z->framing}};
  }
  j["manifold"] = jm;
  j["pipeline_run"] = c.pipeline_run;
  j["verdict"] = {{"kind", verdict_kind_name(c.verdict.kind)},
                  {"genus", c.verdict.genus},
                  {"reason", c.verdict.reason}};
  json reports = json::array();
  for (const auto& [name, r] : c.reports)
    reports.push_back({{"name", name}, {"ok", r.ok}, {"violations", r.violations}});
  j["reports"] = reports;
  j["failed"] = c.failed;

  if (c.pipeline_run) {
    j["disc"] = {{"double_points", c.disc_double_points}, {"boundary", c.disc_boundary_label}};
    j["tree"] = tree_to_json(c.tree, c.tree_colours);
    j["embeddings"] = {{"plumbing", embedding_maps_to_json(c.emb_plumbing)},
                       {"disc", embedding_maps_to_json(c.emb_disc)}};
    j["link"] = link_to_json(c.link);
    j["excisions"] = {{"disc", excision_to_json(c.excision_disc)},
                      {"plumbing", excision_to_json(c.excision_plumbing)}};
    json jt;
    json annuli = json::array();
    for (const auto& a : c.tubing.annuli)
      annuli.push_back({{"circle_a", a.circle_a},
                        {"circle_b", a.circle_b},
                        {"piece_a_component", a.piece_a_component},
                        {"piece_b_component", a.piece_b_component},
                        {"link_component", a.link_component},
                        {"label", a.label}});
    jt["annuli"] = annuli;
    jt["annuli_count"] = c.tubing.annuli_count;
    jt["inputs_oriented"] = c.tubing.inputs_oriented;
    jt["orientation_checked"] = c.tubing.orientation_checked;
    jt["orientation_consistent"] = c.tubing.orientation_consistent;
    jt["piece_a_components"] = c.tubing.piece_a_components;
    jt["remaining_double_points"] = c.tubing.remaining_double_points;
    jt["chi_union"] = c.tubing.chi_union;
    jt["surface"] = surface_to_json(c.tubing.surface);
    jt["log"] = c.tubing.log;
    j["tubing"] = jt;
  }
  return j;
}

Certificate certificate_from_json(const json& j) {
  Certificate c;
  c.schema = j.at("schema").get<std::string>();
  if (c.schema != "plumbline.certificate/1") throw InputError("unknown certificate schema: " + c.schema);
  c.category = j.at("category").get<std::string>();
  const json& jk = j.at("knot");
  c.knot = {jk.at("name").get<std::string>(), opt_from_json(jk.at("u")), opt_from_json(jk.at("c4")),
            opt_from_json(jk.at("g4")), jk.at("source").get<std::string>()};
  const json& jb = j.at("bounds");
  c.bounds.u_upper = opt_from_json(jb.at("u"));
  c.bounds.c4_upper = opt_from_json(jb.at("c4"));
  c.bounds.g4_upper = opt_from_json(jb.at("g4"));
  c.bounds.c4_source = jb.at("c4_source").get<std::string>();
  c.bounds.slice_in_b4 = jb.at("slice_in_b4").get<bool>();
  c.bounds.notes = jb.at("notes").get<std::vector<std::string>>();
  const json& jm = j.at("manifold");
  c.manifold.name = jm.at("name").get<std::string>();
  c.manifold.synthetic_shape = jm.at("shape").get<std::string>() == "synthetic";
  if (jm.at("kind") == "plumbing") {
    c.manifold.model = plumbing_from_json(jm.at("plumbing"));
  } else if (jm.at("kind") == "zero_framed_sphere") {
    const json& jz = jm.at("zero_framed_sphere");
    c.manifold.model = ZeroFramedSphere{jz.at("dual_genus").get<int>(), jz.at("framing").get<int>()};
  } else {
    throw InputError("unknown manifold kind in certificate");
  }
  c.pipeline_run = j.at("pipeline_run").get<bool>();
  const json& jv = j.at("verdict");
  std::string kind = jv.at("kind").get<std::string>();
  if (kind == "slice") c.verdict.kind = VerdictKind::slice;
  else if (kind == "genus-bound") c.verdict.kind = VerdictKind::genus_bound;
  else if (kind == "not-certified") c.verdict.kind = VerdictKind::not_certified;
  else throw InputError("unknown verdict kind: " + kind);
  c.verdict.genus = jv.at("genus").get<int>();
  c.verdict.reason = jv.at("reason").get<std::string>();
  for (const auto& r : j.at("reports")) {
    ValidationReport vr;
    vr.ok = r.at("ok").get<bool>();
    vr.violations = r.at("violations").get<std::vector<std::string>>();
    c.reports.emplace_back(r.at("name").get<std::string>(), vr);
  }
  c.failed = j.at("failed").get<bool>();

  if (c.pipeline_run) {
    c.disc_double_points = j.at("disc").at("double_points").get<int>();
    c.disc_boundary_label = j.at("disc").at("boundary").get<std::string>();
    tree_from_json(j.at("tree"), c.tree, c.tree_colours);
    embedding_maps_from_json(j.at("embeddings").at("plumbing"), c.emb_plumbing);
    embedding_maps_from_json(j.at("embeddings").at("disc"), c.emb_disc);
    c.emb_plumbing.tree = c.tree;
    c.emb_disc.tree = c.tree;
    c.link = link_from_json(j.at("link"));
    c.excision_disc = excision_from_json(j.at("excisions").at("disc"));
    c.excision_plumbing = excision_from_json(j.at("excisions").at("plumbing"));
    const json& jt = j.at("tubing");
    for (const auto& a : jt.at("annuli"))
      c.tubing.annuli.push_back({a.at("circle_a").get<int>(), a.at("circle_b").get<int>(),
                                 a.at("piece_a_component").get<int>(), a.at("piece_b_component").get<int>(),
                                 a.at("link_component").get<int>(), a.at("label").get<std::string>()});
    c.tubing.annuli_count = jt.at("annuli_count").get<int>();
    c.tubing.inputs_oriented = jt.at("inputs_oriented").get<bool>();
    c.tubing.orientation_checked = jt.at("orientation_checked").get<bool>();
    c.tubing.orientation_consistent = jt.at("orientation_consistent").get<bool>();
    c.tubing.piece_a_components = jt.at("piece_a_components").get<int>();
    c.tubing.remaining_double_points = jt.at("remaining_double_points").get<int>();
    c.tubing.chi_union = jt.at("chi_union").get<int>();
    c.tubing.surface = surface_from_json(jt.at("surface"));
    c.tubing.log = jt.at("log").get<std::vector<std::string>>();
  }
  return c;
}

std::string certificate_to_string(const Certificate& c) { return certificate_to_json(c).dump(2) + "\n"; }

VerifyOutcome verify_certificate(const json& j) {
  VerifyOutcome out;
  out.pass = true;
  auto check = [&](const std::string& name, bool ok, const std::string& why = "") {
    out.lines.push_back(std::string(ok ? "pass" : "FAIL") + "  " + name + (ok || why.empty() ? "" : ": " + why));
    if (!ok) out.pass = false;
  };

  Certificate c;
  try {
    c = certificate_from_json(j);
  } catch (const std::exception& e) {
    check("parse", false, e.what());
    return out;
  }
  check("parse", true);
  check("category", c.category == "smooth", "only smooth-category certificates are emitted");
  check("stored-reports", !c.failed && std::all_of(c.reports.begin(), c.reports.end(),
                                                   [](const auto& r) { return r.second.ok; }),
        "certificate records a failed check");

  // bounds re-derivation
  try {
    BoundsReport fresh = clasp_chain(c.knot);
    check("bounds-chain", fresh.u_upper == c.bounds.u_upper && fresh.c4_upper == c.bounds.c4_upper &&
                              fresh.g4_upper == c.bounds.g4_upper,
          "stored bounds differ from the clasp chain of the knot record");
  } catch (const Error& e) {
    check("bounds-chain", false, e.what());
  }

  // manifold fidelity
  if (const PlumbingTree* p = c.manifold.plumbing()) {
    check("manifold-plumbing", validate_plumbing(*p).ok);
    if (c.manifold.name == "K3") {
      PlumbingTree k3 = k3_plumbing();
      bool same = p->graph.vertices == k3.graph.vertices && p->graph.edges.size() == k3.graph.edges.size();
      check("manifold-k3", same && tree_canonical_code(p->graph) == tree_canonical_code(k3.graph),
            "stored K3 plumbing is not the 22-sphere tree");
    }
  } else if (const ZeroFramedSphere* z = c.manifold.zero_framed()) {
    check("manifold-framing", z->framing == 0, "0-framed sphere required");
  }

  if (!c.pipeline_run) {
    bool consistent = c.verdict.kind == VerdictKind::not_certified ||
                      (c.verdict.kind == VerdictKind::slice &&
                       ((c.bounds.c4_upper && *c.bounds.c4_upper == 0) ||
                        (c.bounds.u_upper && *c.bounds.u_upper == 0)));
    check("verdict-without-pipeline", consistent,
          "verdict claims more than the recorded bounds without a pipeline");
    return out;
  }

  check("tree-valid", validate_lbtree(c.tree).ok);
  try {
    LBTree induced = bipartitions_from_bicolouring(c.tree.tree, c.tree_colours);
    check("tree-bicolouring", equal_mod_swap(induced, c.tree),
          "stored bicolouring does not induce the stored bipartitions");
  } catch (const Error& e) {
    check("tree-bicolouring", false, e.what());
  }

  // rebuild both target surfaces
  ImmersedSurface plumb_surface, disc;
  bool targets_ok = true;
  try {
    if (const PlumbingTree* p = c.manifold.plumbing()) {
      plumb_surface = make_plumbing(*p);
    } else {
      const ZeroFramedSphere* z = c.manifold.zero_framed();
      PlumbingTree star;
      int n = c.disc_double_points;
      star.graph.vertices.resize(n + 1);
      for (int i = 0; i <= n; ++i) star.graph.vertices[i] = i;
      star.genus[0] = z->dual_genus;
      for (int i = 1; i <= n; ++i) {
        star.genus[i] = 0;
        star.graph.edges.push_back({0, i});
      }
      plumb_surface = make_plumbing(star);
    }
    disc = make_immersed_disc(c.disc_double_points, c.disc_boundary_label);
  } catch (const Error& e) {
    targets_ok = false;
    check("targets", false, e.what());
  }
  if (!targets_ok) return out;
  check("targets", true);

  c.emb_plumbing.target = plumb_surface;
  c.emb_disc.target = disc;
  check("embedding-plumbing", verify_embedding(c.emb_plumbing).ok);
  check("embedding-disc", verify_embedding(c.emb_disc).ok);
  if (!out.pass) return out;

  try {
    LinkDiagram fresh_link = associated_link(c.tree);
    check("link-matches-tree", same_diagram(fresh_link, c.link),
          "stored link is not the associated link of the stored tree");
    ExcisedSurface ep = excise(plumb_surface, c.emb_plumbing);
    ExcisedSurface ed = excise(disc, c.emb_disc);
    auto excision_equal = [](const ExcisedSurface& a, const ExcisedSurface& b) {
      if (a.chi_original != b.chi_original) return false;
      if (a.remaining_double_points != b.remaining_double_points) return false;
      if (a.circles.size() != b.circles.size()) return false;
      for (size_t i = 0; i < a.circles.size(); ++i) {
        const auto& x = a.circles[i];
        const auto& y = b.circles[i];
        if (x.id != y.id || x.domain_component != y.domain_component ||
            x.link_component != y.link_component || x.part_label != y.part_label)
          return false;
      }
      return a.surface.euler_characteristic() == b.surface.euler_characteristic();
    };
    check("excision-plumbing", excision_equal(ep, c.excision_plumbing));
    check("excision-disc", excision_equal(ed, c.excision_disc));

    TubingResult fresh = tube(ed, ep);
    check("chi-law", fresh.chi_union == c.tubing.chi_union &&
                         fresh.surface.euler_characteristic() ==
                             c.tubing.chi_union - 2 * static_cast<int>(c.link.components.size()) &&
                         fresh.surface.euler_characteristic() == c.tubing.surface.euler_characteristic(),
          "euler characteristic accounting differs");
    check("annuli-count", fresh.annuli_count == c.tubing.annuli_count &&
                              fresh.annuli_count == static_cast<int>(c.link.components.size()));
    SurfaceClass fresh_cls = classify(fresh.surface);
    SurfaceClass stored_cls = classify(c.tubing.surface);
    check("result-surface", fresh_cls.components == stored_cls.components &&
                                fresh_cls.genus_boundary == stored_cls.genus_boundary);
    check("no-double-points", fresh.remaining_double_points == 0 &&
                                  c.tubing.remaining_double_points == 0);
    if (c.tubing.orientation_checked) {
      std::vector<CirclePairing> pairings(fresh.annuli.size());
      TubingResult oriented = orient_result(fresh, pairings);
      check("orientation", oriented.orientation_consistent && c.tubing.orientation_consistent);
    }
    switch (c.verdict.kind) {
      case VerdictKind::slice:
        check("verdict", stored_cls.components == 1 &&
                             stored_cls.genus_boundary[0] == std::pair<int, int>{0, 1},
              "slice verdict without a disc result");
        break;
      case VerdictKind::genus_bound:
        check("verdict", stored_cls.components == 1 &&
                             stored_cls.genus_boundary[0] == std::pair<int, int>{c.verdict.genus, 1},
              "genus-bound verdict does not match the result surface");
        break;
      case VerdictKind::not_certified:
        check("verdict", false, "pipeline ran but verdict is not-certified");
        break;
    }
  } catch (const Error& e) {
    check("recomputation", false, e.what());
  }
  return out;
}

VerifyOutcome verify_certificate_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    VerifyOutcome out;
    out.lines.push_back(std::string("FAIL  json: ") + e.what());
    return out;
  }
  return verify_certificate(j);
}

}  // namespace plumbline
