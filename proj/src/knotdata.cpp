#include "plumbline/knotdata.hpp"

#include <fstream>
#include <sstream>

#include "plumbline/errors.hpp"

namespace plumbline {

namespace {

std::string trim(const std::string& s) {
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

CsvLoadResult parse_knot_csv(std::istream& in, const std::string& origin) {
  std::string header;
  if (!std::getline(in, header)) throw InputError(origin + ": empty file, expected header name,u,c4,g4");
  std::vector<std::string> cols = split_csv_line(trim(header));
  for (auto& c : cols) c = trim(c);
  if (cols.size() != 4 || cols[0] != "name" || cols[1] != "u" || cols[2] != "c4" || cols[3] != "g4")
    throw InputError(origin + ": missing or wrong header, expected `name,u,c4,g4`");

  CsvLoadResult result;
  std::string line;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    std::string raw = line;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    auto reject = [&](const std::string& reason) {
      result.rejects.push_back({row, reason, raw});
    };
    if (cells.size() != 4) {
      reject("expected 4 cells, got " + std::to_string(cells.size()));
      continue;
    }
    KnotRecord rec;
    rec.name = trim(cells[0]);
    rec.source = origin + ":row" + std::to_string(row);
    if (rec.name.empty()) {
      reject("empty knot name");
      continue;
    }
    bool ok = true;
    auto parse_bound = [&](const std::string& cell, const char* what) -> std::optional<int> {
      std::string v = trim(cell);
      if (v.empty()) return std::nullopt;
      std::istringstream vs(v);
      int x;
      char rest;
      if (!(vs >> x) || vs >> rest) {
        reject(std::string(what) + " is not an integer: `" + v + "`");
        ok = false;
        return std::nullopt;
      }
      if (x < 0) {
        reject(std::string(what) + " bound is negative: " + std::to_string(x));
        ok = false;
        return std::nullopt;
      }
      return x;
    };
    rec.u_upper = parse_bound(cells[1], "u");
    rec.c4_upper = parse_bound(cells[2], "c4");
    rec.g4_upper = parse_bound(cells[3], "g4");
    if (!ok) continue;
    result.records.push_back(std::move(rec));
  }
  return result;
}

CsvLoadResult load_knot_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read knot table: " + path);
  return parse_knot_csv(in, path);
}

}  // namespace plumbline
