#include <doctest.h>

#include <sstream>

#include "plumbline/errors.hpp"
#include "plumbline/knotdata.hpp"
#include "plumbline/theorems.hpp"

using namespace plumbline;

TEST_CASE("csv parsing: bounds, blanks, provenance") {
  std::istringstream in("name,u,c4,g4\n3_1,1,,\nunknot,0,0,0\n");
  CsvLoadResult r = parse_knot_csv(in, "mem");
  REQUIRE(r.records.size() == 2);
  CHECK(r.rejects.empty());
  CHECK(r.records[0].name == "3_1");
  CHECK(r.records[0].u_upper == 1);
  CHECK_FALSE(r.records[0].c4_upper.has_value());
  CHECK(r.records[0].source == "mem:row2");
  CHECK(r.records[1].u_upper == 0);
  CHECK(r.records[1].c4_upper == 0);
  CHECK(r.records[1].g4_upper == 0);

  // the clasp chain turns u <= 1 into c4 <= 1
  BoundsReport b = clasp_chain(r.records[0]);
  CHECK(b.c4_upper == 1);
}

TEST_CASE("csv parsing: rejects carry row and reason") {
  std::istringstream in("name,u,c4,g4\nbad,-1,,\nshort,1\n,2,,\nok,,3,\nnum,x,,\n");
  CsvLoadResult r = parse_knot_csv(in, "mem");
  CHECK(r.records.size() == 1);
  CHECK(r.records[0].name == "ok");
  REQUIRE(r.rejects.size() == 4);
  CHECK(r.rejects[0].row == 2);
  CHECK(r.rejects[0].reason.find("negative") != std::string::npos);
  CHECK(r.rejects[1].reason.find("4 cells") != std::string::npos);
  CHECK(r.rejects[2].reason.find("name") != std::string::npos);
  CHECK(r.rejects[3].reason.find("integer") != std::string::npos);
}

TEST_CASE("csv parsing: header errors") {
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_knot_csv(empty, "mem"), InputError);
  std::istringstream wrong("nm,u,c4,g4\n");
  CHECK_THROWS_AS(parse_knot_csv(wrong, "mem"), InputError);
  CHECK_THROWS_AS(load_knot_csv("/nonexistent/path.csv"), InputError);
}

TEST_CASE("csv parsing is total: every row lands in records or rejects") {
  std::istringstream in("name,u,c4,g4\na,1,,\nb,oops,,\nc,,,\n\nd,4,4,4\n");
  CsvLoadResult r = parse_knot_csv(in, "mem");
  // c has no bounds but parses fine; blank line skipped
  CHECK(r.records.size() + r.rejects.size() == 4);
}
