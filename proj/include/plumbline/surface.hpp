#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plumbline/link.hpp"
#include "plumbline/tree.hpp"

namespace plumbline {

struct SurfaceComponent {
  int genus = 0;
  int boundary_circles = 0;
  bool orientable = true;

  int euler_characteristic() const { return 2 - 2 * genus - boundary_circles; }
};

/// Disjoint union of abstract surface pieces (the domain of an immersion).
struct AbstractSurface {
  std::vector<SurfaceComponent> components;

  int euler_characteristic() const;
};

/// One sheet of a double point: which domain component it lies on, plus a
/// globally unique slot id.
struct SheetSlot {
  int component = 0;
  int slot_id = 0;
};

struct DoublePoint {
  std::array<SheetSlot, 2> slots;
};

enum class SurfaceKind { generic, plumbing, disc };

/// Combinatorial model of a normally immersed surface: abstract domain
/// components plus transverse double points, each with two sheet slots.
struct ImmersedSurface {
  AbstractSurface domain;
  std::vector<DoublePoint> double_points;
  std::optional<std::string> boundary_knot;
  SurfaceKind kind = SurfaceKind::generic;

  /// (double point index, slot index 0/1) for a global slot id.
  std::pair<int, int> locate_slot(int slot_id) const;
  int slot_component(int slot_id) const;
};

ValidationReport validate_immersed(const ImmersedSurface& s);

/// Surfaces intersecting pairwise in single points, intersection pattern a
/// tree. Genus 0 everywhere models a sphere plumbing; euler numbers are
/// inert metadata except where a 0-framing is required.
struct PlumbingTree {
  Tree graph;
  std::map<int, int> genus;
  std::map<int, int> euler_number;
};

ValidationReport validate_plumbing(const PlumbingTree& p);

/// One closed domain component per plumbing vertex, one double point per
/// plumbing edge with a slot on each incident component.
ImmersedSurface make_plumbing(const PlumbingTree& p);

/// Disc (genus 0, one boundary circle) with m double points, both slots on
/// the single component; boundary labelled by the knot.
ImmersedSurface make_immersed_disc(int m, const std::string& boundary = "K");

/// Per-edge data of a suitable embedding: the slot chosen at each endpoint
/// and the domain component carrying the arc.
struct EdgeEnds {
  int slot_at_u = -1;
  int slot_at_v = -1;
  int carrier = -1;
};

/// Vertex -> double point bijection plus per-edge sheet/domain assignments.
/// Edges in the same part of the bipartition at a vertex must use the same
/// slot there; different parts different slots; both ends of an edge lie on
/// its carrier component; the lift graph is acyclic.
struct SuitableEmbedding {
  ImmersedSurface target;
  LBTree tree;
  std::map<int, int> vertex_map;      // vertex id -> double point index
  std::map<int, EdgeEnds> edge_map;   // edge id -> ends
};

ValidationReport verify_embedding(const SuitableEmbedding& e);

/// Slot ids used at a vertex for part A (index 0) and part B (index 1).
/// Nonempty parts take the slot of their edges; an empty part takes the
/// remaining slot; an isolated vertex assigns A to the first slot.
std::map<int, std::array<int, 2>> part_slots(const SuitableEmbedding& e);

struct EmbedResult {
  LBTree tree;
  SuitableEmbedding embedding;
};

/// Build a locally bipartitioned tree with one vertex per double point of a
/// plumbing, suitably embedded, covering every double point, with each
/// component's carried edges a connected acyclic subgraph. Strips the
/// lowest-id leaf surface first. A single-surface plumbing has no double
/// points: error unless allow_empty.
EmbedResult embed_in_plumbing(const ImmersedSurface& s, bool allow_empty = false);

/// Suitably embed t into a connected immersed surface with at least |V(t)|
/// double points. Leaf induction; free double points are taken lowest index
/// first and the new vertex uses the first slot.
SuitableEmbedding embed_in_connected(const ImmersedSurface& s, const LBTree& t);

/// Lift of the embedded tree to the domain: nodes are the two slots of each
/// mapped double point, links join the chosen slots of each tree edge.
/// Always a forest with |V|+1 components.
struct LiftForest {
  struct Node {
    int vertex = -1;
    int slot_id = -1;
    int domain_component = -1;
    std::string label;  // part label, matches associated_link components
  };
  std::vector<Node> nodes;
  std::vector<std::pair<int, int>> links;  // node indices
  std::vector<int> node_component;         // lift component id per node
  int component_count = 0;
};

LiftForest lift_forest(const SuitableEmbedding& e);

/// The link cut out on the boundary of a regular neighbourhood of the
/// embedded tree: exactly the associated link of e.tree. The slot-to-label
/// correspondence travels through lift_forest.
LinkDiagram link_of_embedding(const SuitableEmbedding& e);

/// Text format: `vertex id genus [euler]` and `edge u v` lines.
PlumbingTree parse_plumbing_text(const std::string& text);
std::string format_plumbing_text(const PlumbingTree& p);

}  // namespace plumbline
