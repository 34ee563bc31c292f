#include <doctest.h>

#include <random>

#include "plumbline/errors.hpp"
#include "plumbline/theorems.hpp"
#include "plumbline/tubing.hpp"

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

}  // namespace

TEST_CASE("classify and euler characteristic basics") {
  AbstractSurface sphere{{SurfaceComponent{0, 0, true}}};
  CHECK(euler_characteristic(sphere) == 2);
  AbstractSurface disc{{SurfaceComponent{0, 1, true}}};
  CHECK(euler_characteristic(disc) == 1);
  AbstractSurface genus2{{SurfaceComponent{2, 1, true}}};
  CHECK(euler_characteristic(genus2) == -3);
  SurfaceClass cls = classify(genus2);
  CHECK(cls.components == 1);
  CHECK(cls.genus_boundary[0] == std::pair<int, int>{2, 1});
  AbstractSurface bad{{SurfaceComponent{1, 0, false}}};
  CHECK_THROWS_AS(classify(bad), InputError);
}

TEST_CASE("excise a disc along a full tree") {
  // 21 double points, 21-vertex tree: chi 1 -> -21 over 22 new circles
  LBTree t = embed_in_plumbing(make_plumbing(sphere_path(22))).tree;
  ImmersedSurface disc = make_immersed_disc(21);
  SuitableEmbedding e = embed_in_connected(disc, t);
  ExcisedSurface ex = excise(disc, e);
  CHECK(ex.chi_original == 1);
  CHECK(ex.surface.euler_characteristic() == -21);
  CHECK(ex.circles.size() == 22);
  CHECK(ex.remaining_double_points == 0);
  CHECK(ex.surface.components[0].boundary_circles == 23);  // the knot boundary plus 22 cuts
}

TEST_CASE("excise a sphere plumbing leaves one disc per sphere") {
  for (int n : {2, 5, 9}) {
    ImmersedSurface s = make_plumbing(sphere_path(n));
    EmbedResult er = embed_in_plumbing(s);
    ExcisedSurface ex = excise(s, er.embedding);
    CHECK(ex.chi_original == 2 * n);
    CHECK(ex.surface.euler_characteristic() == n);
    CHECK(static_cast<int>(ex.circles.size()) == n);
    for (const SurfaceComponent& c : ex.surface.components) {
      CHECK(c.genus == 0);
      CHECK(c.boundary_circles == 1);
    }
  }
}

TEST_CASE("excise the two-sphere plumbing: hopf circle map") {
  ImmersedSurface s = make_plumbing(sphere_path(2));
  EmbedResult er = embed_in_plumbing(s);
  ExcisedSurface ex = excise(s, er.embedding);
  CHECK(ex.circles.size() == 2);
  CHECK(ex.link.components.size() == 2);
  CHECK(ex.circles[0].domain_component != ex.circles[1].domain_component);
  // each circle pairs with a distinct component of the hopf link
  CHECK(ex.circles[0].link_component != ex.circles[1].link_component);
}

TEST_CASE("excise refuses an unverified embedding") {
  LBTree t = parse_lbtree_text("0 1 0\n");
  ImmersedSurface disc = make_immersed_disc(2);
  SuitableEmbedding e = embed_in_connected(disc, t);
  e.vertex_map[1] = e.vertex_map[0];
  CHECK_THROWS_AS(excise(disc, e), InputError);
}

TEST_CASE("tube: the K3 pipeline yields a disc") {
  ImmersedSurface plumb = make_plumbing(k3_plumbing());
  EmbedResult er = embed_in_plumbing(plumb);
  ImmersedSurface disc = make_immersed_disc(21);
  SuitableEmbedding ed = embed_in_connected(disc, er.tree);
  ExcisedSurface a = excise(disc, ed);
  ExcisedSurface b = excise(plumb, er.embedding);
  TubingResult r = tube(a, b);
  CHECK(r.chi_union == 1 + 44);
  CHECK(r.annuli_count == 22);
  CHECK(r.surface.euler_characteristic() == 1);
  SurfaceClass cls = classify(r.surface);
  CHECK(cls.components == 1);
  CHECK(cls.genus_boundary[0] == std::pair<int, int>{0, 1});
  CHECK(r.remaining_double_points == 0);
}

TEST_CASE("tube: the classic hopf tubing of two discs") {
  LBTree t = parse_lbtree_text("0\n");
  ImmersedSurface d1 = make_immersed_disc(1, "K1");
  ImmersedSurface d2 = make_immersed_disc(1, "K2");
  SuitableEmbedding e1 = embed_in_connected(d1, t);
  SuitableEmbedding e2 = embed_in_connected(d2, t);
  ExcisedSurface a = excise(d1, e1);
  ExcisedSurface b = excise(d2, e2);
  TubingResult r = tube(a, b);
  // union of two discs (chi 2) drops by 2*|hopf| = 4
  CHECK(r.chi_union == 2);
  CHECK(r.annuli_count == 2);
  CHECK(r.surface.euler_characteristic() == -2);
  SurfaceClass cls = classify(r.surface);
  CHECK(cls.components == 1);
  CHECK(cls.genus_boundary[0] == std::pair<int, int>{1, 2});
  CHECK(r.remaining_double_points == 0);

  SUBCASE("orientation bookkeeping on the double annulus") {
    CHECK(r.inputs_oriented);
    std::vector<CirclePairing> reversed(2);
    TubingResult oriented = orient_result(r, reversed);
    CHECK(oriented.orientation_consistent);
    std::vector<CirclePairing> flipped{{true}, {false}};
    CHECK_THROWS_WITH_AS(orient_result(r, flipped), doctest::Contains("circle pair"), InputError);
  }
}

TEST_CASE("tube rejects mismatched links") {
  LBTree t1 = parse_lbtree_text("0\n");
  LBTree t2 = parse_lbtree_text("0 1 0\n");
  ImmersedSurface d1 = make_immersed_disc(1);
  ImmersedSurface d2 = make_immersed_disc(2);
  ExcisedSurface a = excise(d1, embed_in_connected(d1, t1));
  ExcisedSurface b = excise(d2, embed_in_connected(d2, t2));
  CHECK_THROWS_AS(tube(a, b), InputError);
}

TEST_CASE("tube lists unpaired component labels") {
  // same link shape but the trees carry different vertex names, so the
  // construction labels cannot be paired
  LBTree t0 = parse_lbtree_text("0\n");
  LBTree t5 = parse_lbtree_text("5\n");
  ImmersedSurface d1 = make_immersed_disc(1);
  ImmersedSurface d2 = make_immersed_disc(1);
  ExcisedSurface a = excise(d1, embed_in_connected(d1, t0));
  ExcisedSurface b = excise(d2, embed_in_connected(d2, t5));
  CHECK_THROWS_WITH_AS(tube(a, b), doctest::Contains("unpaired"), InputError);
}

TEST_CASE("orient_result demands oriented inputs and matching pairing count") {
  LBTree t = parse_lbtree_text("0\n");
  ImmersedSurface d1 = make_immersed_disc(1);
  ImmersedSurface d2 = make_immersed_disc(1);
  ExcisedSurface a = excise(d1, embed_in_connected(d1, t));
  ExcisedSurface b = excise(d2, embed_in_connected(d2, t));
  TubingResult r = tube(a, b);
  CHECK_THROWS_AS(orient_result(r, {}), InputError);
  TubingResult unoriented = r;
  unoriented.inputs_oriented = false;
  std::vector<CirclePairing> reversed(2);
  CHECK_THROWS_AS(orient_result(unoriented, reversed), InputError);
}

TEST_CASE("chi law across randomized plumbing pipelines") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 12);
    PlumbingTree p;
    p.graph = random_tree(n, rng);
    for (int v : p.graph.vertices) p.genus[v] = 0;
    ImmersedSurface plumb = make_plumbing(p);
    EmbedResult er = embed_in_plumbing(plumb);
    ImmersedSurface disc = make_immersed_disc(n - 1);
    SuitableEmbedding ed = embed_in_connected(disc, er.tree);
    TubingResult r = tube(excise(disc, ed), excise(plumb, er.embedding));
    int link_count = static_cast<int>(r.annuli_count);
    CHECK(link_count == n);
    CHECK(r.surface.euler_characteristic() == r.chi_union - 2 * link_count);
    CHECK(classify(r.surface).genus_boundary[0] == std::pair<int, int>{0, 1});
  }
}
