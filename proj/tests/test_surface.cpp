#include <doctest.h>

#include <random>

#include "plumbline/errors.hpp"
#include "plumbline/link.hpp"
#include "plumbline/surface.hpp"

#include "oracles.hpp"

using namespace plumbline;

namespace {

PlumbingTree sphere_path(int n) {
  PlumbingTree p;
  for (int i = 0; i < n; ++i) {
    p.graph.vertices.push_back(i);
    p.genus[i] = 0;
  }
  for (int i = 0; i + 1 < n; ++i) p.graph.edges.push_back({i, i + 1});
  return p;
}

PlumbingTree sphere_star(int leaves) {
  PlumbingTree p;
  p.graph.vertices.push_back(0);
  p.genus[0] = 0;
  for (int i = 1; i <= leaves; ++i) {
    p.graph.vertices.push_back(i);
    p.genus[i] = 0;
    p.graph.edges.push_back({0, i});
  }
  return p;
}

}  // namespace

TEST_CASE("make_plumbing shapes") {
  ImmersedSurface one = make_plumbing(sphere_path(1));
  CHECK(one.domain.components.size() == 1);
  CHECK(one.double_points.empty());
  CHECK(one.domain.euler_characteristic() == 2);

  ImmersedSurface three = make_plumbing(sphere_path(3));
  CHECK(three.domain.components.size() == 3);
  CHECK(three.double_points.size() == 2);
  CHECK(three.domain.euler_characteristic() == 6);
  CHECK(validate_immersed(three).ok);

  for (int n = 1; n <= 8; ++n)
    CHECK(make_plumbing(sphere_path(n)).domain.euler_characteristic() == 2 * n);
}

TEST_CASE("make_immersed_disc shapes") {
  ImmersedSurface flat = make_immersed_disc(0);
  CHECK(flat.domain.euler_characteristic() == 1);
  CHECK(flat.double_points.empty());
  CHECK(flat.boundary_knot == "K");

  ImmersedSurface k3_input = make_immersed_disc(21, "big_knot");
  CHECK(k3_input.double_points.size() == 21);
  CHECK(k3_input.domain.euler_characteristic() == 1);
  CHECK(k3_input.boundary_knot == "big_knot");
  CHECK(validate_immersed(k3_input).ok);
  CHECK_THROWS_AS(make_immersed_disc(-1), InputError);
}

TEST_CASE("embed_in_plumbing: two spheres give the one-vertex tree") {
  EmbedResult er = embed_in_plumbing(make_plumbing(sphere_path(2)));
  CHECK(er.tree.tree.vertices.size() == 1);
  CHECK(er.tree.tree.edges.empty());
  CHECK(verify_embedding(er.embedding).ok);
}

TEST_CASE("embed_in_plumbing: path of three spheres routes through the middle") {
  EmbedResult er = embed_in_plumbing(make_plumbing(sphere_path(3)));
  CHECK(er.tree.tree.vertices.size() == 2);
  CHECK(er.tree.tree.edges.size() == 1);
  CHECK(er.embedding.edge_map.at(0).carrier == 1);  // the middle sphere
  CHECK(verify_embedding(er.embedding).ok);
}

TEST_CASE("embed_in_plumbing: star of five spheres carries everything on the hub") {
  EmbedResult er = embed_in_plumbing(make_plumbing(sphere_star(4)));
  CHECK(er.tree.tree.vertices.size() == 4);
  for (const auto& [eid, ends] : er.embedding.edge_map) CHECK(ends.carrier == 0);
  // at each vertex all hub-side edges share a part
  for (int v : er.tree.tree.vertices) {
    const auto& parts = er.tree.parts.at(v);
    CHECK((parts.first.empty() || parts.second.empty()));
  }
  CHECK(verify_embedding(er.embedding).ok);
}

TEST_CASE("embed_in_plumbing covers all double points on random plumbings") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    int n = 2 + static_cast<int>(rng() % 14);
    PlumbingTree p;
    p.graph = random_tree(n, rng);
    for (int v : p.graph.vertices) p.genus[v] = 0;
    ImmersedSurface s = make_plumbing(p);
    EmbedResult er = embed_in_plumbing(s);
    CHECK(er.tree.tree.vertices.size() == static_cast<size_t>(n - 1));
    CHECK(er.embedding.vertex_map.size() == s.double_points.size());
    CHECK(verify_embedding(er.embedding).ok);
  }
}

TEST_CASE("embed_in_plumbing rejects the single surface unless told otherwise") {
  ImmersedSurface s = make_plumbing(sphere_path(1));
  CHECK_THROWS_AS(embed_in_plumbing(s), InputError);
  EmbedResult er = embed_in_plumbing(s, true);
  CHECK(er.tree.tree.vertices.empty());
}

TEST_CASE("embed_in_connected base case and preconditions") {
  LBTree single = parse_lbtree_text("0\n");
  SuitableEmbedding e = embed_in_connected(make_immersed_disc(1), single);
  CHECK(e.vertex_map.at(0) == 0);
  CHECK(verify_embedding(e).ok);

  CHECK_THROWS_AS(embed_in_connected(make_immersed_disc(0), single), InputError);
  CHECK_THROWS_AS(embed_in_connected(make_plumbing(sphere_path(2)), single), InputError);
}

TEST_CASE("embed_in_connected succeeds exhaustively for small trees and discs") {
  for (int k = 1; k <= 4; ++k)
    for (const LBTree& t : enumerate_lbtrees(k))
      for (int m = k; m <= k + 2; ++m) {
        SuitableEmbedding e = embed_in_connected(make_immersed_disc(m), t);
        CHECK(verify_embedding(e).ok);
        CHECK(e.vertex_map.size() == static_cast<size_t>(k));
      }
}

TEST_CASE("embed_in_connected succeeds on random larger trees") {
  std::mt19937_64 rng(88);
  for (int trial = 0; trial < 50; ++trial) {
    int k = 1 + static_cast<int>(rng() % 20);
    int m = k + static_cast<int>(rng() % 10);
    LBTree t = random_lbtree(k, rng);
    SuitableEmbedding e = embed_in_connected(make_immersed_disc(m), t);
    CHECK(verify_embedding(e).ok);
    // free double points stay untouched, lowest indices are used first
    for (const auto& [v, dp] : e.vertex_map) CHECK(dp < k);
  }
}

TEST_CASE("verify_embedding names a same-part slot violation") {
  LBTree star = parse_lbtree_text("0 1 0\n0 2 0\n0 3 0\n");  // uniform at the centre
  SuitableEmbedding e = embed_in_connected(make_immersed_disc(4), star);
  REQUIRE(verify_embedding(e).ok);
  // move one centre edge to the other slot of the centre's double point
  int centre_dp = e.vertex_map.at(0);
  const DoublePoint& dp = e.target.double_points.at(centre_dp);
  EdgeEnds& ends = e.edge_map.at(1);
  int at_centre = e.tree.tree.edges[1].u == 0 ? ends.slot_at_u : ends.slot_at_v;
  int other = dp.slots[0].slot_id == at_centre ? dp.slots[1].slot_id : dp.slots[0].slot_id;
  (e.tree.tree.edges[1].u == 0 ? ends.slot_at_u : ends.slot_at_v) = other;
  ValidationReport r = verify_embedding(e);
  CHECK_FALSE(r.ok);
  bool found = false;
  for (const auto& v : r.violations) found = found || v.find("same part use different slots") != std::string::npos;
  CHECK(found);
}

TEST_CASE("verify_embedding rejects a multigraph attempt at a lift cycle") {
  LBTree bad;
  bad.tree.vertices = {0, 1};
  bad.tree.edges = {{0, 1}, {0, 1}};  // two edges between the same slots
  bad.parts[0] = {{0}, {1}};
  bad.parts[1] = {{0}, {1}};
  SuitableEmbedding e;
  e.target = make_immersed_disc(2);
  e.tree = bad;
  e.vertex_map = {{0, 0}, {1, 1}};
  e.edge_map[0] = {0, 2, 0};
  e.edge_map[1] = {1, 3, 0};
  ValidationReport r = verify_embedding(e);
  CHECK_FALSE(r.ok);  // rejected at tree validation: parallel edges
}

TEST_CASE("verify_embedding rejects a non-injective vertex map") {
  LBTree t = parse_lbtree_text("0 1 0\n");
  SuitableEmbedding e = embed_in_connected(make_immersed_disc(2), t);
  e.vertex_map[1] = e.vertex_map[0];
  CHECK_FALSE(verify_embedding(e).ok);
}

TEST_CASE("lift forest counts components like the associated link") {
  LBTree single = parse_lbtree_text("0\n");
  LiftForest f1 = lift_forest(embed_in_connected(make_immersed_disc(1), single));
  CHECK(f1.nodes.size() == 2);
  CHECK(f1.links.empty());
  CHECK(f1.component_count == 2);

  for (int k = 1; k <= 5; ++k)
    for (const LBTree& t : enumerate_lbtrees(k)) {
      SuitableEmbedding e = embed_in_connected(make_immersed_disc(k), t);
      LiftForest f = lift_forest(e);
      CHECK(f.nodes.size() == 2 * static_cast<size_t>(k));
      CHECK(f.links.size() == static_cast<size_t>(k) - 1);
      CHECK(f.component_count == k + 1);
      CHECK(f.component_count == component_count(associated_link(t)));
    }
}

TEST_CASE("link_of_embedding is the associated link") {
  LBTree single = parse_lbtree_text("0\n");
  SuitableEmbedding e1 = embed_in_connected(make_immersed_disc(1), single);
  CHECK(canonical_pd_code(link_of_embedding(e1)) == canonical_pd_code(hopf_link("a", "b")));

  LBTree chain = parse_lbtree_text("0 1 0\n1 2 0\n");
  SuitableEmbedding e3 = embed_in_connected(make_immersed_disc(3), chain);
  LinkDiagram l = link_of_embedding(e3);
  CHECK(component_count(l) == 4);
  CHECK(oracles::pd_component_count(l) == 4);

  for (int k = 1; k <= 6; ++k)
    for (const LBTree& t : enumerate_lbtrees(k)) {
      SuitableEmbedding e = embed_in_connected(make_immersed_disc(k), t);
      CHECK(same_diagram(link_of_embedding(e), associated_link(t)));
    }
}

TEST_CASE("plumbing text round trip") {
  PlumbingTree p = sphere_star(3);
  p.euler_number[0] = -2;
  std::string text = format_plumbing_text(p);
  PlumbingTree back = parse_plumbing_text(text);
  CHECK(back.graph.vertices == p.graph.vertices);
  CHECK(back.graph.edges.size() == p.graph.edges.size());
  CHECK(back.euler_number.at(0) == -2);
  CHECK(back.genus.at(2) == 0);
  CHECK_THROWS_AS(parse_plumbing_text("vertex 0 0\nvertex 1 0\n"), InputError);       // disconnected
  CHECK_THROWS_AS(parse_plumbing_text("vertex 0 0\nedge 0 1\n"), InputError);         // missing vertex
  CHECK_THROWS_AS(parse_plumbing_text("vertx 0 0\n"), InputError);                    // typo
}

TEST_CASE("genus plumbings embed too") {
  PlumbingTree star = sphere_star(3);
  star.genus[0] = 2;  // the central surface need not be a sphere
  EmbedResult er = embed_in_plumbing(make_plumbing(star));
  CHECK(verify_embedding(er.embedding).ok);
  CHECK(er.tree.tree.vertices.size() == 3);
}
