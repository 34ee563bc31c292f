#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "plumbline/theorems.hpp"

namespace plumbline {

nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

/// vertex_map / edge_map of an embedding as JSON (the wire format used in
/// certificates and by the `embed` subcommand).
nlohmann::json embedding_maps_to_json(const SuitableEmbedding& e);

std::string certificate_to_string(const Certificate& c);

struct VerifyOutcome {
  bool pass = false;
  std::vector<std::string> lines;
};

/// Re-check every claim of a serialized certificate from its own data:
/// tree validity, both embeddings, the link against the tree, the chi
/// accounting, the result surface classification, and the verdict.
VerifyOutcome verify_certificate(const nlohmann::json& j);
VerifyOutcome verify_certificate_text(const std::string& text);

}  // namespace plumbline
