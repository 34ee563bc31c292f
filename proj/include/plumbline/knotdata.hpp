#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace plumbline {

/// Upper bounds on unknotting number, 4-dimensional clasp number, and slice
/// genus for one knot, as ingested from a table. Blank means unknown.
struct KnotRecord {
  std::string name;
  std::optional<int> u_upper;
  std::optional<int> c4_upper;
  std::optional<int> g4_upper;
  std::string source;
};

struct CsvLoadResult {
  struct Reject {
    int row = 0;
    std::string reason;
    std::string raw;
  };
  std::vector<KnotRecord> records;
  std::vector<Reject> rejects;
};

/// CSV with header `name,u,c4,g4`; blank cells mean unknown. Malformed rows
/// are collected as rejects, never dropped silently. Throws on an unreadable
/// file or missing header.
CsvLoadResult load_knot_csv(const std::string& path);
CsvLoadResult parse_knot_csv(std::istream& in, const std::string& origin);

}  // namespace plumbline
