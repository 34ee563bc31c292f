#include <doctest.h>

#include <set>

#include "plumbline/errors.hpp"
#include "plumbline/theorems.hpp"

using namespace plumbline;

namespace {

KnotRecord knot(const std::string& name, std::optional<int> u, std::optional<int> c4 = std::nullopt,
                std::optional<int> g4 = std::nullopt) {
  return {name, u, c4, g4, "test"};
}

}  // namespace

TEST_CASE("en_bound values") {
  CHECK(en_bound(2) == 21);
  CHECK(en_bound(5) == 54);
  CHECK(en_bound(10) == 108);
  CHECK_THROWS_AS(en_bound(1), InputError);
  for (int n = 2; n <= 25; ++n) {
    int ceil_n5 = (n + 4) / 5;
    CHECK(en_bound(n) == 11 * n - ceil_n5);
    CHECK(en_sphere_count(n) == en_bound(n) + 1);
  }
}

TEST_CASE("k3 plumbing is the 22-sphere tree of three E6-tilde fibers and a section") {
  PlumbingTree p = k3_plumbing();
  CHECK(p.graph.vertices.size() == 22);
  CHECK(p.graph.edges.size() == 21);
  CHECK(validate_plumbing(p).ok);
  for (int v : p.graph.vertices) {
    CHECK(p.genus.at(v) == 0);
    CHECK(p.euler_number.at(v) == -2);
  }

  // deleting the section leaves three copies of the E6-tilde shape
  Tree e6;
  e6.vertices = {0, 1, 2, 3, 4, 5, 6};
  e6.edges = {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}};
  std::string e6_code = tree_canonical_code(e6);

  std::set<int> fibers[3];
  for (int f = 0; f < 3; ++f)
    for (int i = 0; i < 7; ++i) fibers[f].insert(1 + 7 * f + i);
  for (int f = 0; f < 3; ++f) {
    Tree sub;
    sub.vertices = std::vector<int>(fibers[f].begin(), fibers[f].end());
    for (const Edge& e : p.graph.edges)
      if (fibers[f].count(e.u) && fibers[f].count(e.v)) sub.edges.push_back(e);
    CHECK(tree_canonical_code(sub) == e6_code);
  }
  // the section connects to exactly one vertex in each fiber
  int section_edges = 0;
  for (const Edge& e : p.graph.edges)
    if (e.u == 0 || e.v == 0) ++section_edges;
  CHECK(section_edges == 3);
}

TEST_CASE("en_plumbing is a synthetic path with the right sphere count") {
  for (int n : {2, 3, 7}) {
    PlumbingTree p = en_plumbing(n);
    CHECK(static_cast<int>(p.graph.vertices.size()) == en_sphere_count(n));
    CHECK(validate_plumbing(p).ok);
    CHECK(Manifold::En(n).synthetic_shape);
  }
  CHECK_FALSE(Manifold::K3().synthetic_shape);
}

TEST_CASE("clasp_chain propagates upper bounds downward only") {
  BoundsReport r = clasp_chain(knot("a", 3));
  CHECK(r.c4_upper == 3);
  CHECK(r.g4_upper == 3);
  CHECK(r.c4_source == "u");

  BoundsReport zero = clasp_chain(knot("b", 0, 0, 0));
  CHECK(zero.slice_in_b4);

  BoundsReport g4_only = clasp_chain(knot("c", std::nullopt, std::nullopt, 2));
  CHECK_FALSE(g4_only.c4_upper.has_value());
  CHECK_FALSE(g4_only.u_upper.has_value());
  CHECK(g4_only.g4_upper == 2);

  BoundsReport keep_smaller = clasp_chain(knot("d", 5, 2));
  CHECK(keep_smaller.c4_upper == 2);
  CHECK(keep_smaller.c4_source == "c4");

  CHECK_THROWS_AS(clasp_chain(knot("empty", std::nullopt)), InputError);
}

TEST_CASE("certify_slice_in_plumbing: the K3 headline") {
  Certificate cert = certify_slice_in_plumbing(knot("big_knot", 21), Manifold::K3());
  CHECK(cert.verdict.kind == VerdictKind::slice);
  CHECK_FALSE(cert.failed);
  CHECK(cert.pipeline_run);
  SurfaceClass cls = classify(cert.tubing.surface);
  CHECK(cls.components == 1);
  CHECK(cls.genus_boundary[0] == std::pair<int, int>{0, 1});
  CHECK(cert.tubing.remaining_double_points == 0);
  for (const auto& [name, report] : cert.reports) CHECK(report.ok);
}

TEST_CASE("certify_slice_in_plumbing: E(5) takes c4 up to 54") {
  Certificate cert = certify_slice_in_plumbing(knot("ck", std::nullopt, 54), Manifold::En(5));
  CHECK(cert.verdict.kind == VerdictKind::slice);
  Certificate declined = certify_slice_in_plumbing(knot("ck", std::nullopt, 55), Manifold::En(5));
  CHECK(declined.verdict.kind == VerdictKind::not_certified);
}

TEST_CASE("certify_slice_in_plumbing declines beyond the bound, never refutes") {
  Certificate cert = certify_slice_in_plumbing(knot("far", std::nullopt, 30), Manifold::K3());
  CHECK(cert.verdict.kind == VerdictKind::not_certified);
  CHECK_FALSE(cert.pipeline_run);
  CHECK_FALSE(cert.failed);
  Certificate none = certify_slice_in_plumbing(knot("unbounded", std::nullopt, std::nullopt, 4),
                                               Manifold::K3());
  CHECK(none.verdict.kind == VerdictKind::not_certified);
}

TEST_CASE("certify_slice_in_plumbing needs a plumbing of spheres") {
  CHECK_THROWS_AS(certify_slice_in_plumbing(knot("a", 1), Manifold::zero_sphere(0)), InputError);
  PlumbingTree p;
  p.graph.vertices = {0, 1};
  p.graph.edges = {{0, 1}};
  p.genus[0] = 1;
  p.genus[1] = 0;
  CHECK_THROWS_AS(certify_slice_in_plumbing(knot("a", 1), Manifold::custom_plumbing(p, "torus")),
                  InputError);
}

TEST_CASE("certify_norman: genus bounds by the dual surface") {
  Certificate g0 = certify_norman(knot("any", 7), Manifold::zero_sphere(0));
  CHECK(g0.verdict.kind == VerdictKind::slice);
  CHECK(classify(g0.tubing.surface).genus_boundary[0] == std::pair<int, int>{0, 1});
  CHECK(g0.tubing.orientation_consistent);

  Certificate g2 = certify_norman(knot("k", 3), Manifold::zero_sphere(2));
  CHECK(g2.verdict.kind == VerdictKind::genus_bound);
  CHECK(g2.verdict.genus == 2);
  CHECK(classify(g2.tubing.surface).genus_boundary[0] == std::pair<int, int>{2, 1});
  // chi oracle: (1 - (u+1)) + u + (1 - 2g) = 1 - 2g
  CHECK(g2.tubing.surface.euler_characteristic() == 1 - 2 * 2);
  for (const auto& [name, report] : g2.reports) CHECK(report.ok);
}

TEST_CASE("certify_norman rejects nonzero framing") {
  CHECK_THROWS_WITH_AS(certify_norman(knot("k", 2), Manifold::zero_sphere(1, 1)),
                       doctest::Contains("push-offs"), InputError);
}

TEST_CASE("certify_norman without an unknotting bound declines") {
  Certificate cert = certify_norman(knot("k", std::nullopt, 4), Manifold::zero_sphere(1));
  CHECK(cert.verdict.kind == VerdictKind::not_certified);
}

TEST_CASE("certify_norman u = 0 short-circuits to slice") {
  Certificate cert = certify_norman(knot("unknot", 0), Manifold::zero_sphere(5));
  CHECK(cert.verdict.kind == VerdictKind::slice);
  CHECK_FALSE(cert.pipeline_run);
}

TEST_CASE("slice verdicts across random plumbing shapes") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 39);
    PlumbingTree p;
    p.graph = random_tree(n, rng);
    for (int v : p.graph.vertices) p.genus[v] = 0;
    int c4 = static_cast<int>(rng() % n);  // always <= n-1
    Certificate cert = certify_slice_in_plumbing(knot("r", std::nullopt, c4),
                                                 Manifold::custom_plumbing(p, "random"));
    CHECK(cert.verdict.kind == VerdictKind::slice);
    CHECK_FALSE(cert.failed);
  }
}
