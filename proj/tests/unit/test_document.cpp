#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "../support/generators.hpp"
#include "document.hpp"

using namespace stratacode;

namespace {

ErrorCode parse_error_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

std::string minimal(const std::string& ring, const std::string& entries, const std::string& extra = "") {
  return R"({"schema_version": "1.0", "ring": ")" + ring +
         R"(", "strata": [{"id": "e", "modules": {"0": 2, "1": 1}, "boundaries": {"1": {"rows": 2, "cols": 1, "entries": )" +
         entries + R"(}}}], "gluings": [])" + extra + "}";
}

}  // namespace

TEST_SUITE("document") {

TEST_CASE("catalog documents round-trip") {
  for (const auto& e : standard_entries()) {
    CAPTURE(e.annotations.name);
    DiagramDocument doc = to_document(e);
    std::string text = serialize(doc);
    DiagramDocument back = parse_document(text);
    CHECK(back == doc);
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("random documents round-trip") {
  testing::Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    DiagramDocument doc{testing::random_simplicial_diagram(rng, trial % 2 ? Ring::INT : Ring::GF2, 0.2), {}};
    doc.diagram.canonicalize();
    CHECK(parse_document(serialize(doc)) == doc);
  }
}

TEST_CASE("minimal document parses") {
  auto doc = parse_document(minimal("Z", "[[0, 0, -1], [1, 0, 1]]"));
  CHECK(doc.diagram.ring == Ring::INT);
  CHECK(doc.diagram.strata[0].boundaries.at(1).at(0, 0) == -1);
}

TEST_CASE("strict parsing") {
  CHECK(parse_error_of("{") == ErrorCode::ParseError);
  CHECK(parse_error_of(minimal("Q", "[]")) == ErrorCode::ParseError);
  CHECK(parse_error_of(minimal("Z", "[[0, 0, 1], [0, 0, 1]]")) == ErrorCode::ParseError);
  CHECK(parse_error_of(minimal("Z", "[[0, 0, 0]]")) == ErrorCode::ParseError);
  CHECK(parse_error_of(minimal("F2", "[[0, 0, 2]]")) == ErrorCode::ParseError);
  CHECK(parse_error_of(minimal("Z", "[[2, 0, 1]]")) == ErrorCode::ParseError);
  CHECK(parse_error_of(minimal("Z", "[]", R"(, "colour": "red")")) == ErrorCode::ParseError);
  std::string old = minimal("Z", "[]");
  old.replace(old.find("1.0"), 3, "0.9");
  CHECK(parse_error_of(old) == ErrorCode::ParseError);
}

TEST_CASE("large coefficients travel as strings") {
  Integer big("123456789012345678901234567890");
  CHECK(integer_to_json(big).is_string());
  CHECK(integer_to_json(Integer(-7)).is_number_integer());
  CHECK(integer_from_json(integer_to_json(big)) == big);
  CHECK(integer_from_json(Json("-5")) == -5);
  auto m = SparseMatrix::from_triples(Ring::INT, 1, 1, {{0, 0, big}});
  CHECK(matrix_from_json(matrix_to_json(m), Ring::INT) == m);
  CHECK_THROWS_AS(integer_from_json(Json("12x")), Error);
}

TEST_CASE("files") {
  try {
    read_document("/nonexistent/stratacode.json");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
  const std::string path = "document_test_tmp.json";
  DiagramDocument doc = to_document(rp2());
  write_text(path, serialize(doc));
  CHECK(read_document(path) == doc);
  std::remove(path.c_str());
}

}
