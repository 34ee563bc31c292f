#include <doctest.h>

#include "plumbline/certificate_io.hpp"
#include "plumbline/errors.hpp"

using namespace plumbline;
using nlohmann::json;

namespace {

KnotRecord knot(const std::string& name, std::optional<int> u, std::optional<int> c4 = std::nullopt) {
  return {name, u, c4, std::nullopt, "test"};
}

}  // namespace

TEST_CASE("certificate json round trip preserves the verdict and accounting") {
  Certificate cert = certify_slice_in_plumbing(knot("big_knot", 21), Manifold::K3());
  json j = certificate_to_json(cert);
  Certificate back = certificate_from_json(j);
  CHECK(back.verdict.kind == cert.verdict.kind);
  CHECK(back.tubing.chi_union == cert.tubing.chi_union);
  CHECK(back.tubing.annuli_count == cert.tubing.annuli_count);
  CHECK(back.link.crossings.size() == cert.link.crossings.size());
  CHECK(equal_mod_swap(back.tree, cert.tree));
  CHECK(back.knot.u_upper == 21);
  json again = certificate_to_json(back);
  // embedding targets are rebuilt rather than stored, so the dumps agree
  CHECK(again == j);
}

TEST_CASE("verify_certificate passes freshly emitted certificates") {
  for (Certificate cert : {certify_slice_in_plumbing(knot("a", 21), Manifold::K3()),
                           certify_slice_in_plumbing(knot("b", std::nullopt, 30), Manifold::K3()),
                           certify_norman(knot("c", 4), Manifold::zero_sphere(2)),
                           certify_norman(knot("d", 0), Manifold::zero_sphere(0))}) {
    VerifyOutcome out = verify_certificate(certificate_to_json(cert));
    INFO(certificate_to_string(cert));
    for (const auto& line : out.lines) INFO(line);
    CHECK(out.pass);
  }
}

TEST_CASE("verify_certificate rejects tampered certificates") {
  Certificate cert = certify_slice_in_plumbing(knot("a", 21), Manifold::K3());
  json good = certificate_to_json(cert);

  SUBCASE("verdict inflated without data") {
    json j = good;
    j["tubing"]["surface"][0]["genus"] = 1;
    CHECK_FALSE(verify_certificate(j).pass);
  }
  SUBCASE("chi accounting broken") {
    json j = good;
    j["tubing"]["chi_union"] = 7;
    CHECK_FALSE(verify_certificate(j).pass);
  }
  SUBCASE("link swapped out") {
    json j = good;
    j["link"]["crossings"][0] = {1, 2, 3, 0};
    CHECK_FALSE(verify_certificate(j).pass);
  }
  SUBCASE("embedding corrupted") {
    json j = good;
    j["embeddings"]["disc"]["vertex_map"]["0"] = j["embeddings"]["disc"]["vertex_map"]["1"];
    CHECK_FALSE(verify_certificate(j).pass);
  }
  SUBCASE("tree parts corrupted") {
    json j = good;
    j["tree"]["parts"]["0"]["a"] = json::array();
    j["tree"]["parts"]["0"]["b"] = json::array();
    CHECK_FALSE(verify_certificate(j).pass);
  }
  SUBCASE("slice verdict on a declined run") {
    json j = good;
    j["pipeline_run"] = false;
    CHECK_FALSE(verify_certificate(j).pass);
  }
  SUBCASE("unknown schema") {
    json j = good;
    j["schema"] = "plumbline.certificate/99";
    CHECK_FALSE(verify_certificate(j).pass);
  }
}

TEST_CASE("verify_certificate_text handles malformed json") {
  VerifyOutcome out = verify_certificate_text("{not json");
  CHECK_FALSE(out.pass);
  CHECK_FALSE(out.lines.empty());
}

TEST_CASE("not-certified certificates verify without pipeline data") {
  Certificate cert = certify_slice_in_plumbing(knot("far", std::nullopt, 30), Manifold::K3());
  json j = certificate_to_json(cert);
  CHECK_FALSE(j.contains("tree"));
  CHECK(verify_certificate(j).pass);
}
