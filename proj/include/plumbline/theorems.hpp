#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plumbline/knotdata.hpp"
#include "plumbline/surface.hpp"
#include "plumbline/tubing.hpp"

namespace plumbline {

/// Largest clasp bound certified slice in E(n): 11n - ceil(n/5). Defined for
/// n >= 2; E(1) needs no bound (every knot is slice there).
int en_bound(int n);

/// Sphere count of the E(n) plumbing: en_bound(n) + 1.
int en_sphere_count(int n);

/// The 22-sphere plumbing tree in K3: a section vertex joined to a leg end
/// of each of three E6-tilde fibers (degree-3 hub, three legs of length
/// two). All spheres, euler number -2 throughout (inert metadata).
PlumbingTree k3_plumbing();

/// Synthetic stand-in for the E(n) sphere plumbing: a path with the correct
/// sphere count. Certification only uses the count and tree-ness; the flag
/// travels into certificates as shape "synthetic".
PlumbingTree en_plumbing(int n);

struct ZeroFramedSphere {
  int dual_genus = 0;
  int framing = 0;
};

struct Manifold {
  std::string name;
  bool synthetic_shape = false;
  std::variant<PlumbingTree, ZeroFramedSphere> model;

  static Manifold K3();
  static Manifold En(int n);
  static Manifold zero_sphere(int dual_genus, int framing = 0, const std::string& name = "");
  static Manifold custom_plumbing(const PlumbingTree& p, const std::string& name);

  const PlumbingTree* plumbing() const { return std::get_if<PlumbingTree>(&model); }
  const ZeroFramedSphere* zero_framed() const { return std::get_if<ZeroFramedSphere>(&model); }
};

/// Upper bounds propagated down the chain g4 <= c4 <= u. Upper bounds only;
/// nothing is ever propagated upward.
struct BoundsReport {
  std::optional<int> u_upper;
  std::optional<int> c4_upper;
  std::optional<int> g4_upper;
  std::string c4_source;  // "c4", "u", or empty
  bool slice_in_b4 = false;
  std::vector<std::string> notes;
};

BoundsReport clasp_chain(const KnotRecord& k);

enum class VerdictKind { slice, genus_bound, not_certified };

struct Verdict {
  VerdictKind kind = VerdictKind::not_certified;
  int genus = 0;
  std::string reason;
};

std::string verdict_kind_name(VerdictKind k);

/// Full record of one certification pipeline; everything a verifier needs
/// to re-check the run from serialized data alone.
struct Certificate {
  std::string schema = "plumbline.certificate/1";
  std::string category = "smooth";
  KnotRecord knot;
  BoundsReport bounds;
  Manifold manifold;
  bool pipeline_run = false;
  int disc_double_points = 0;
  std::string disc_boundary_label;
  LBTree tree;
  Bicolouring tree_colours;
  SuitableEmbedding emb_plumbing;
  SuitableEmbedding emb_disc;
  LinkDiagram link;
  ExcisedSurface excision_plumbing;
  ExcisedSurface excision_disc;
  TubingResult tubing;
  Verdict verdict;
  std::vector<std::pair<std::string, ValidationReport>> reports;
  bool failed = false;
};

/// Pipeline for sliceness in a manifold carrying a sphere plumbing: pad the
/// disc to n-1 double points, embed the same tree in both surfaces, excise
/// and tube, and demand the result is a disc. Verdict is one-sided: when the
/// bound does not reach, the answer is not-certified, never "not slice".
Certificate certify_slice_in_plumbing(const KnotRecord& k, const Manifold& m);

/// Pipeline for the 0-framed sphere bound: u parallel sphere copies plus the
/// dual surface in a star plumbing, a uniformly coloured path tree carried
/// by the dual surface, oriented tubing. Result genus equals the dual genus;
/// genus 0 yields a slice verdict.
Certificate certify_norman(const KnotRecord& k, const Manifold& m);

}  // namespace plumbline
