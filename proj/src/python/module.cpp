#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "plumbline/certificate_io.hpp"
#include "plumbline/errors.hpp"
#include "plumbline/knotdata.hpp"
#include "plumbline/link.hpp"
#include "plumbline/surface.hpp"
#include "plumbline/svg.hpp"
#include "plumbline/theorems.hpp"
#include "plumbline/tree.hpp"

namespace py = pybind11;
using namespace plumbline;

namespace {

KnotRecord record_from_args(const std::string& name, std::optional<int> u, std::optional<int> c4,
                            std::optional<int> g4) {
  return {name, u, c4, g4, "python"};
}

Manifold manifold_from_spec(const std::string& spec) {
  if (spec == "K3") return Manifold::K3();
  if (spec.rfind("E:", 0) == 0) return Manifold::En(std::atoi(spec.c_str() + 2));
  if (spec.rfind("zero-sphere:", 0) == 0) return Manifold::zero_sphere(std::atoi(spec.c_str() + 12));
  throw InputError("unknown manifold spec `" + spec + "`; expected K3, E:n, or zero-sphere:g");
}

std::string certify_json(const std::string& name, std::optional<int> u, std::optional<int> c4,
                         std::optional<int> g4, const std::string& manifold_spec) {
  Manifold m = manifold_from_spec(manifold_spec);
  KnotRecord rec = record_from_args(name, u, c4, g4);
  Certificate cert = m.zero_framed() ? certify_norman(rec, m) : certify_slice_in_plumbing(rec, m);
  return certificate_to_string(cert);
}

py::dict verify_certificate_py(const std::string& text) {
  VerifyOutcome out = verify_certificate_text(text);
  py::dict d;
  d["pass"] = out.pass;
  d["lines"] = out.lines;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "plumbline core: locally bipartitioned trees, associated links, tubing certificates";

  py::register_exception<Error>(m, "PlumblineError");

  m.def("bicolour", [](const std::string& tree_text) {
    LBTree t = parse_lbtree_text(tree_text);
    return format_lbtree_text(t, compatible_bicolouring(t));
  },
        "Compatible bicolouring of a tree given in `u v [0|1]` text form");
  m.def("canonical_code", [](const std::string& tree_text) {
    return canonical_code_hex(parse_lbtree_text(tree_text));
  },
        "Canonical code (hex) of a locally bipartitioned tree");
  m.def("lbtree_count", [](int k) { return static_cast<int>(enumerate_lbtrees(k).size()); },
        "Number of locally bipartitioned trees with k vertices up to equivalence");
  m.def("associated_link_pd", [](const std::string& tree_text) {
    return format_pd_text(associated_link(parse_lbtree_text(tree_text)));
  },
        "PD code of the associated link of a tree");
  m.def("associated_link_svg_text", [](const std::string& tree_text) {
    return associated_link_svg(parse_lbtree_text(tree_text));
  },
        "SVG rendering of the associated link");
  m.def("component_count", [](const std::string& pd_text) {
    return component_count(parse_pd_text(pd_text));
  },
        "Number of link components of a PD code");
  m.def("bracket", [](const std::string& pd_text) {
    return kauffman_bracket(parse_pd_text(pd_text)).to_string_int("A");
  },
        "Kauffman bracket (unknot = 1), written in powers of A");
  m.def("jones", [](const std::string& pd_text) {
    LinkDiagram l = parse_pd_text(pd_text);
    return jones(l.oriented ? l : orient(l)).to_string_half("t");
  },
        "Jones polynomial in half-integer powers of t");
  m.def("en_bound", &en_bound, "Clasp bound certified slice in E(n): 11n - ceil(n/5)");
  m.def("en_sphere_count", &en_sphere_count, "Sphere count of the E(n) plumbing");
  m.def("k3_plumbing_text", [] { return format_plumbing_text(k3_plumbing()); },
        "The 22-sphere K3 plumbing in text form");
  m.def("certify", &certify_json, py::arg("name"), py::arg("u") = std::nullopt,
        py::arg("c4") = std::nullopt, py::arg("g4") = std::nullopt, py::arg("manifold") = "K3",
        "Run a certification pipeline; returns the certificate JSON");
  m.def("verify_certificate", &verify_certificate_py, "Re-check a certificate JSON string");

  m.attr("__version__") = "0.1.0";
}
