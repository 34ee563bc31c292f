#include "plumbline/theorems.hpp"

#include <algorithm>
#include <sstream>

#include "plumbline/errors.hpp"

namespace plumbline {

int en_bound(int n) {
  if (n < 2)
    throw InputError("en_bound is defined for n >= 2; every knot is already slice in E(1)");
  return 11 * n - (n + 4) / 5;
}

int en_sphere_count(int n) { return en_bound(n) + 1; }

namespace {

// Leg end of each E6-tilde fiber where the section attaches (offset within
// the 7-vertex block; 2 is the end of the first leg).
constexpr int kSectionAttachOffset = 2;

}  // namespace

PlumbingTree k3_plumbing() {
  PlumbingTree p;
  // vertex 0: section; three E6-tilde blocks of 7 vertices each
  p.graph.vertices.resize(22);
  for (int i = 0; i < 22; ++i) p.graph.vertices[i] = i;
  for (int f = 0; f < 3; ++f) {
    int base = 1 + 7 * f;  // hub of this fiber
    p.graph.edges.push_back({base, base + 1});
    p.graph.edges.push_back({base + 1, base + 2});
    p.graph.edges.push_back({base, base + 3});
    p.graph.edges.push_back({base + 3, base + 4});
    p.graph.edges.push_back({base, base + 5});
    p.graph.edges.push_back({base + 5, base + 6});
    p.graph.edges.push_back({0, base + kSectionAttachOffset});
  }
  for (int i = 0; i < 22; ++i) {
    p.genus[i] = 0;
    p.euler_number[i] = -2;
  }
  return p;
}

PlumbingTree en_plumbing(int n) {
  int count = en_sphere_count(n);
  PlumbingTree p;
  p.graph.vertices.resize(count);
  for (int i = 0; i < count; ++i) {
    p.graph.vertices[i] = i;
    p.genus[i] = 0;
  }
  for (int i = 0; i + 1 < count; ++i) p.graph.edges.push_back({i, i + 1});
  return p;
}

Manifold Manifold::K3() {
  Manifold m;
  m.name = "K3";
  m.model = k3_plumbing();
  return m;
}

Manifold Manifold::En(int n) {
  Manifold m;
  m.name = "E(" + std::to_string(n) + ")";
  m.synthetic_shape = true;
  m.model = en_plumbing(n);
  return m;
}

Manifold Manifold::zero_sphere(int dual_genus, int framing, const std::string& name) {
  if (dual_genus < 0) throw InputError("zero_sphere: negative dual genus");
  Manifold m;
  m.name = name.empty() ? "zero-sphere(g=" + std::to_string(dual_genus) + ")" : name;
  m.model = ZeroFramedSphere{dual_genus, framing};
  return m;
}

Manifold Manifold::custom_plumbing(const PlumbingTree& p, const std::string& name) {
  Manifold m;
  m.name = name;
  m.model = p;
  return m;
}

BoundsReport clasp_chain(const KnotRecord& k) {
  if (!k.u_upper && !k.c4_upper && !k.g4_upper)
    throw InputError("clasp_chain: record `" + k.name + "` carries no bounds");
  BoundsReport r;
  r.u_upper = k.u_upper;
  r.c4_upper = k.c4_upper;
  if (k.c4_upper) r.c4_source = "c4";
  if (k.u_upper && (!r.c4_upper || *k.u_upper < *r.c4_upper)) {
    r.c4_upper = k.u_upper;
    r.c4_source = "u";
    r.notes.push_back("c4 <= u gives c4 <= " + std::to_string(*k.u_upper));
  }
  r.g4_upper = k.g4_upper;
  if (r.c4_upper && (!r.g4_upper || *r.c4_upper < *r.g4_upper)) {
    r.g4_upper = r.c4_upper;
    r.notes.push_back("g4 <= c4 gives g4 <= " + std::to_string(*r.c4_upper));
  }
  if (r.c4_upper && *r.c4_upper == 0) {
    r.slice_in_b4 = true;
    r.notes.push_back("c4 = 0: slice in the 4-ball");
  }
  return r;
}

std::string verdict_kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::slice: return "slice";
    case VerdictKind::genus_bound: return "genus-bound";
    case VerdictKind::not_certified: return "not-certified";
  }
  return "?";
}

namespace {

void add_report(Certificate& cert, const std::string& name, const ValidationReport& r) {
  cert.reports.emplace_back(name, r);
  if (!r.ok) cert.failed = true;
}

ValidationReport report_of(bool ok, const std::string& msg) {
  ValidationReport r;
  if (!ok) r.fail(msg);
  return r;
}

}  // namespace

Certificate certify_slice_in_plumbing(const KnotRecord& k, const Manifold& m) {
  const PlumbingTree* plumbing = m.plumbing();
  if (plumbing == nullptr)
    throw InputError("certify_slice_in_plumbing: manifold " + m.name + " carries no plumbing");
  ValidationReport pv = validate_plumbing(*plumbing);
  if (!pv.ok) throw InputError("certify_slice_in_plumbing: invalid plumbing: " + pv.summary());
  for (int v : plumbing->graph.vertices)
    if (plumbing->genus.count(v) && plumbing->genus.at(v) != 0)
      throw InputError("certify_slice_in_plumbing: plumbing must consist of spheres");

  Certificate cert;
  cert.knot = k;
  cert.manifold = m;
  cert.bounds = clasp_chain(k);
  int n = static_cast<int>(plumbing->graph.vertices.size());

  if (!cert.bounds.c4_upper) {
    cert.verdict = {VerdictKind::not_certified, 0, "no finite clasp bound on record"};
    return cert;
  }
  int c4 = *cert.bounds.c4_upper;
  if (c4 > n - 1) {
    cert.verdict = {VerdictKind::not_certified, 0,
                    "clasp bound " + std::to_string(c4) + " exceeds n-1 = " + std::to_string(n - 1)};
    return cert;
  }
  if (n == 1) {
    // no double points to trade; only the trivial bound goes through
    cert.verdict = {VerdictKind::slice, 0, "clasp bound 0: the disc is already embedded"};
    return cert;
  }

  try {
    cert.disc_double_points = n - 1;  // pad with extra self-intersections
    cert.disc_boundary_label = k.name;
    ImmersedSurface plumb_surface = make_plumbing(*plumbing);
    ImmersedSurface disc = make_immersed_disc(n - 1, k.name);

    EmbedResult er = embed_in_plumbing(plumb_surface);
    cert.tree = er.tree;
    cert.tree_colours = compatible_bicolouring(er.tree);
    cert.emb_plumbing = er.embedding;
    add_report(cert, "tree", validate_lbtree(cert.tree));
    add_report(cert, "embedding-plumbing", verify_embedding(cert.emb_plumbing));

    cert.emb_disc = embed_in_connected(disc, er.tree);
    add_report(cert, "embedding-disc", verify_embedding(cert.emb_disc));

    LinkDiagram link_p = link_of_embedding(cert.emb_plumbing);
    LinkDiagram link_d = link_of_embedding(cert.emb_disc);
    cert.link = link_p;
    add_report(cert, "link", validate_link(cert.link));
    add_report(cert, "link-match",
               report_of(same_diagram(link_p, link_d), "excision links differ between the two surfaces"));
    add_report(cert, "link-components",
               report_of(component_count(cert.link) == n, "associated link does not have |V|+1 components"));

    cert.excision_plumbing = excise(plumb_surface, cert.emb_plumbing);
    cert.excision_disc = excise(disc, cert.emb_disc);
    cert.tubing = tube(cert.excision_disc, cert.excision_plumbing);
    cert.pipeline_run = true;

    SurfaceClass cls = classify(cert.tubing.surface);
    bool is_disc = cls.components == 1 && cls.genus_boundary[0] == std::pair<int, int>{0, 1} &&
                   cert.tubing.remaining_double_points == 0;
    add_report(cert, "result-is-disc",
               report_of(is_disc, "tubing result is not an embedded disc"));
    if (cert.failed) {
      cert.verdict = {VerdictKind::not_certified, 0, "internal verification failure"};
    } else {
      cert.verdict = {VerdictKind::slice, 0,
                      "clasp bound " + std::to_string(c4) + " <= " + std::to_string(n - 1)};
    }
  } catch (const Error& err) {
    cert.failed = true;
    add_report(cert, "pipeline", report_of(false, err.what()));
    cert.verdict = {VerdictKind::not_certified, 0, std::string("pipeline error: ") + err.what()};
  }
  return cert;
}

Certificate certify_norman(const KnotRecord& k, const Manifold& m) {
  const ZeroFramedSphere* zs = m.zero_framed();
  if (zs == nullptr)
    throw InputError("certify_norman: manifold " + m.name + " carries no 0-framed sphere");
  if (zs->framing != 0)
    throw InputError("certify_norman: sphere framing " + std::to_string(zs->framing) +
                     " != 0; parallel push-offs need the 0-framing");

  Certificate cert;
  cert.knot = k;
  cert.manifold = m;
  cert.bounds = clasp_chain(k);
  int g = zs->dual_genus;

  if (!cert.bounds.u_upper) {
    cert.verdict = {VerdictKind::not_certified, 0, "no finite unknotting bound on record"};
    return cert;
  }
  int n = *cert.bounds.u_upper;
  if (n == 0) {
    cert.verdict = {VerdictKind::slice, 0, "unknotting number 0: the disc is already embedded"};
    return cert;
  }

  try {
    // star plumbing: dual surface at the centre, n sphere push-offs around it
    PlumbingTree star;
    star.graph.vertices.resize(n + 1);
    for (int i = 0; i <= n; ++i) star.graph.vertices[i] = i;
    star.genus[0] = g;
    for (int i = 1; i <= n; ++i) {
      star.genus[i] = 0;
      star.euler_number[i] = 0;  // push-offs of the 0-framed sphere
      star.graph.edges.push_back({0, i});
    }

    ImmersedSurface plumb_surface = make_plumbing(star);
    ImmersedSurface disc = make_immersed_disc(n, k.name);
    cert.disc_double_points = n;
    cert.disc_boundary_label = k.name;

    EmbedResult er = embed_in_plumbing(plumb_surface);
    cert.tree = er.tree;
    cert.tree_colours = compatible_bicolouring(er.tree);
    cert.emb_plumbing = er.embedding;
    add_report(cert, "tree", validate_lbtree(cert.tree));
    // the expected simple shape: a uniformly coloured path carried by the
    // dual surface
    bool uniform_path = true;
    for (const auto& [eid, ends] : cert.emb_plumbing.edge_map)
      if (ends.carrier != 0) uniform_path = false;
    for (int v : cert.tree.tree.vertices)
      if (cert.tree.tree.degree(v) > 2) uniform_path = false;
    add_report(cert, "uniform-path-tree",
               report_of(uniform_path, "embedded tree is not the uniformly coloured arc in the dual surface"));
    add_report(cert, "embedding-plumbing", verify_embedding(cert.emb_plumbing));

    cert.emb_disc = embed_in_connected(disc, er.tree);
    add_report(cert, "embedding-disc", verify_embedding(cert.emb_disc));

    LinkDiagram link_p = link_of_embedding(cert.emb_plumbing);
    LinkDiagram link_d = link_of_embedding(cert.emb_disc);
    cert.link = link_p;
    add_report(cert, "link", validate_link(cert.link));
    add_report(cert, "link-match",
               report_of(same_diagram(link_p, link_d), "excision links differ between the two surfaces"));

    cert.excision_plumbing = excise(plumb_surface, cert.emb_plumbing);
    cert.excision_disc = excise(disc, cert.emb_disc);
    cert.tubing = tube(cert.excision_disc, cert.excision_plumbing);
    cert.pipeline_run = true;

    std::vector<CirclePairing> pairings(cert.tubing.annuli.size());  // all reversed
    cert.tubing = orient_result(cert.tubing, pairings);
    add_report(cert, "orientation",
               report_of(cert.tubing.orientation_consistent, "orientation system inconsistent"));

    SurfaceClass cls = classify(cert.tubing.surface);
    bool expected = cls.components == 1 && cls.genus_boundary[0] == std::pair<int, int>{g, 1} &&
                    cert.tubing.remaining_double_points == 0;
    add_report(cert, "result-genus",
               report_of(expected, "tubing result is not a genus-" + std::to_string(g) +
                                       " surface with one boundary circle"));
    if (cert.failed) {
      cert.verdict = {VerdictKind::not_certified, 0, "internal verification failure"};
    } else if (g == 0) {
      cert.verdict = {VerdictKind::slice, 0, "dual sphere: genus bound 0"};
    } else {
      cert.verdict = {VerdictKind::genus_bound, g, "dual surface genus " + std::to_string(g)};
    }
  } catch (const Error& err) {
    cert.failed = true;
    add_report(cert, "pipeline", report_of(false, err.what()));
    cert.verdict = {VerdictKind::not_certified, 0, std::string("pipeline error: ") + err.what()};
  }
  return cert;
}

}  // namespace plumbline
