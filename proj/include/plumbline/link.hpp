#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plumbline/laurent.hpp"
#include "plumbline/tree.hpp"

namespace plumbline {

/// One crossing of a planar diagram. The four incident arc ids are listed
/// counterclockwise starting from the under-strand; positions 0 and 2 always
/// hold the under-strand, and in an oriented diagram position 0 is the
/// incoming under arc. See the README for a worked example.
struct Crossing {
  std::array<int, 4> arcs{};
};

/// Crossing slot: (crossing index, position 0..3).
struct Slot {
  int crossing = -1;
  int pos = -1;
  bool operator==(const Slot& o) const { return crossing == o.crossing && pos == o.pos; }
  bool operator!=(const Slot& o) const { return !(*this == o); }
  bool operator<(const Slot& o) const {
    return crossing != o.crossing ? crossing < o.crossing : pos < o.pos;
  }
};

/// Direction of an arc in an oriented diagram: it leaves `tail` and ends at
/// `head`. Crossingless arcs carry no direction data.
struct ArcDirection {
  Slot tail;
  Slot head;
};

struct LinkComponent {
  std::string label;
  std::vector<int> arcs;  // cyclic traversal order
};

struct MergeRecord {
  std::string merged;
  std::string left;
  std::string right;
};

/// Link diagram as a PD code with labelled components. Components whose arc
/// never appears in a crossing are crossingless unknots. A diagram built by
/// connected sums remembers its factors, which enables the multiplicative
/// bracket fast path.
struct LinkDiagram {
  std::vector<Crossing> crossings;
  std::vector<LinkComponent> components;
  bool oriented = false;
  std::map<int, ArcDirection> directions;  // arc -> direction, oriented only
  std::vector<MergeRecord> merge_log;
  std::vector<std::shared_ptr<const LinkDiagram>> factors;

  std::vector<int> arc_ids() const;  // sorted
  int component_index_of_arc(int arc) const;

  /// Component index for a label, following the merge log. Throws if absent.
  int resolve_label(const std::string& label) const;
};

ValidationReport validate_link(const LinkDiagram& l);

LinkDiagram unknot(const std::string& label = "u");
LinkDiagram hopf_link(const std::string& label_a, const std::string& label_b);

/// Splice the lowest-id arc of component c1 of l1 to the lowest-id arc of
/// component c2 of l2. The merged component gets a fresh label recorded in
/// the merge log. Result is oriented only if both inputs are.
LinkDiagram connected_sum(const LinkDiagram& l1, const std::string& c1, const LinkDiagram& l2,
                          const std::string& c2);

/// Label of the part (0 = A, 1 = B) of the bipartition at a vertex, shared
/// between the associated-link construction and the embedding layer.
std::string part_label(int vertex, int part);

/// One Hopf link per vertex labelled by its parts, connect-summed along each
/// edge at the parts containing it. |V|+1 components, 2|V| crossings.
LinkDiagram associated_link(const LBTree& t);

/// Swap over/under at every crossing (rotate each PD tuple by one).
LinkDiagram mirror(const LinkDiagram& l);

/// Orient every component; flips[i] reverses the direction of component i.
LinkDiagram orient(const LinkDiagram& l, const std::vector<bool>& flips = {});

LinkDiagram reverse_component(const LinkDiagram& l, const std::string& label);

/// Number of components recomputed by union-find over arcs through
/// crossings (independent of the stored partition).
int component_count(const LinkDiagram& l);

std::vector<int> crossing_signs(const LinkDiagram& l);  // oriented only
int writhe(const LinkDiagram& l);

/// linking_matrix[i][j] = half the signed crossing count between components
/// i != j; diagonal zero.
std::vector<std::vector<int>> linking_matrix(const LinkDiagram& l);

int default_crossing_cap();

struct BracketOptions {
  int crossing_cap = default_crossing_cap();
  bool fast_path = true;
};

/// Kauffman bracket, normalized so the unknot evaluates to 1; exact state
/// sum over all smoothings. Diagrams recorded as connected sums multiply
/// their factor brackets instead. Result lives in integer powers of A.
LaurentPoly kauffman_bracket(const LinkDiagram& l, const BracketOptions& opts = {});

/// Writhe-normalized bracket in half-integer powers of t (exponent p means
/// t^(p/2)). Requires an oriented diagram.
LaurentPoly jones(const LinkDiagram& l, const BracketOptions& opts = {});

struct AmphichiralEvidence {
  bool pass = false;
  int orientation_count = 0;
  std::vector<std::string> jones_multiset;         // sorted text forms
  std::vector<std::string> mirror_jones_multiset;  // sorted text forms
  std::string detail;
};

/// Necessary condition for unoriented amphichirality: the multiset of Jones
/// polynomials over all orientation choices of l must coincide with the one
/// of mirror(l), equivalently be closed under t <-> 1/t. Never a proof.
AmphichiralEvidence amphichiral_evidence(const LinkDiagram& l, int component_cap = 12,
                                         const BracketOptions& opts = {});

/// Relabeling-invariant code of the unoriented diagram; equal codes mean the
/// diagrams differ only by arc/crossing relabeling (and per-tuple rotation
/// by two). Minimizes a traversal token stream over all starts.
std::string canonical_pd_code(const LinkDiagram& l);

/// Structural equality up to per-tuple rotation by two.
bool same_diagram(const LinkDiagram& a, const LinkDiagram& b);

/// Text format: `X(a,b,c,d)` lines plus optional `C label: a,b,...` lines.
LinkDiagram parse_pd_text(const std::string& text);
std::string format_pd_text(const LinkDiagram& l);

}  // namespace plumbline
