#pragma once

#include <string>
#include <vector>

#include "plumbline/surface.hpp"

namespace plumbline {

/// Surface after excising a regular neighbourhood of an embedded tree: one
/// open disc removed per lift-forest component (chi drops by one each, one
/// new boundary circle each); the excision boundary is the associated link
/// and each new circle pairs with one link component.
struct ExcisedSurface {
  struct Circle {
    int id = -1;
    int domain_component = -1;
    int link_component = -1;
    std::string part_label;
  };

  AbstractSurface surface;
  LinkDiagram link;
  std::vector<Circle> circles;
  int chi_original = 0;
  int remaining_double_points = 0;
  bool oriented = false;
  std::vector<std::string> log;
};

ExcisedSurface excise(const ImmersedSurface& s, const SuitableEmbedding& e);

struct Annulus {
  int circle_a = -1;
  int circle_b = -1;
  int piece_a_component = -1;  // component index in a
  int piece_b_component = -1;  // component index in b
  int link_component = -1;
  std::string label;
};

struct TubingResult {
  AbstractSurface surface;
  int annuli_count = 0;
  bool inputs_oriented = false;
  bool orientation_checked = false;
  bool orientation_consistent = false;
  std::vector<Annulus> annuli;
  int piece_a_components = 0;
  int remaining_double_points = 0;
  int chi_union = 0;  // chi of the two pre-excision domains together
  std::vector<std::string> log;
};

/// Glue one annulus per link component along the paired circles. Annuli are
/// chi-neutral, so chi(result) = chi(a) + chi(b), equivalently
/// chi(pre-excision union) - 2 * |link components|. Requires the two
/// excision links to agree (same construction) with matching labels.
TubingResult tube(const ExcisedSurface& a, const ExcisedSurface& b);

struct CirclePairing {
  bool reversed = true;  // true: the circle pair is glued with opposite orientations
};

/// Orientation bookkeeping for the oriented tubing case: each annulus
/// constrains the relative orientation of the two pieces it joins; the
/// system is consistent iff the constraint graph is 2-colourable. Throws on
/// unoriented inputs or on an inconsistent system, naming the circle pair.
TubingResult orient_result(const TubingResult& r, const std::vector<CirclePairing>& orientations);

int euler_characteristic(const AbstractSurface& s);

struct SurfaceClass {
  int components = 0;
  std::vector<std::pair<int, int>> genus_boundary;  // per component
};

SurfaceClass classify(const AbstractSurface& s);

}  // namespace plumbline
