#include <doctest.h>

#include "../support/generators.hpp"
#include "catalog.hpp"
#include "diagram.hpp"

using namespace stratacode;

namespace {

bool has_code(const ValidationReport& r, ErrorCode code) {
  for (const auto& f : r.findings)
    if (f.code == code) return true;
  return false;
}

}  // namespace

TEST_SUITE("diagram") {

TEST_CASE("poset closure and heights") {
  Poset p = close_poset({"c", "a", "b"}, {{"a", "b"}, {"b", "c"}});
  CHECK(p.elements() == std::vector<std::string>{"a", "b", "c"});
  CHECK(p.less(0, 2));
  CHECK(p.height(2) == 2);
  CHECK(p.covers().size() == 2);
  CHECK(p.strict_pairs().size() == 3);
  CHECK(p.between(0, 2) == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(close_poset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), Error);
  CHECK_THROWS_AS(p.index("zz"), Error);
}

TEST_CASE("catalog diagrams validate except the counterexample") {
  for (const auto& e : standard_entries()) {
    CAPTURE(e.annotations.name);
    ValidationReport r = validate(e.diagram);
    CHECK(r.ok() == !e.annotations.expect_invalid);
  }
}

TEST_CASE("counterexample finding") {
  auto r = validate(nontransitive_counterexample().diagram);
  REQUIRE(r.findings.size() == 1);
  CHECK(r.findings[0].code == ErrorCode::TransitivityViolation);
  CHECK(r.findings[0].describe().rfind("TransitivityViolation at (sigma0,tau1) degree 0", 0) == 0);
  try {
    resolve_gluings(nontransitive_counterexample().diagram);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TransitivityViolation);
  }
  CHECK(validate(nontransitive_counterexample(true).diagram).ok());
}

TEST_CASE("structural findings") {
  Diagram d = segment(Ring::GF2).diagram;
  Diagram dup = d;
  dup.strata.push_back(dup.strata.front());
  CHECK(has_code(validate(dup), ErrorCode::InvalidArgument));

  Diagram unknown = d;
  unknown.gluings.push_back({"v", "nowhere", {}});
  CHECK(has_code(validate(unknown), ErrorCode::UnknownStratum));

  Diagram cyc = d;
  cyc.gluings.push_back({"e", "v", {{0, SparseMatrix::from_rows(Ring::GF2, {{1, 0}})}}});
  CHECK(has_code(validate(cyc), ErrorCode::CycleDetected));

  Diagram missing = d;
  missing.gluings.clear();
  missing.relations.push_back({"v", "e"});
  CHECK(has_code(validate(missing), ErrorCode::MissingCover));

  Diagram shape = d;
  shape.gluings[0].maps[0] = SparseMatrix::from_rows(Ring::GF2, {{1}});
  CHECK(has_code(validate(shape), ErrorCode::DimensionMismatch));

  Diagram ring = d;
  ring.strata[0].boundaries[1] = SparseMatrix::from_rows(Ring::INT, {{-1}, {1}});
  CHECK(has_code(validate(ring), ErrorCode::RingMismatch));
}

TEST_CASE("chain map condition is checked") {
  Diagram d = segment(Ring::INT).diagram;
  // An edge mapped into the edge stratum needs d phi = phi d; a vertex has no d.
  Stratum loop{"loop", 1, {{0, 1}, {1, 1}}, {{1, SparseMatrix::from_rows(Ring::INT, {{0}})}}};
  d.strata.push_back(loop);
  d.gluings.push_back({"loop", "e",
                       {{0, SparseMatrix::from_rows(Ring::INT, {{1}, {0}})},
                        {1, SparseMatrix::from_rows(Ring::INT, {{1}})}}});
  d.canonicalize();
  CHECK(has_code(validate(d), ErrorCode::NotAChainMap));
}

TEST_CASE("composites are resolved through intermediate strata") {
  auto sd = resolve_gluings(rp2(Ring::INT).diagram);
  const auto s0 = sd.index("sigma0"), s2 = sd.index("sigma2");
  CHECK(sd.poset().less(s0, s2));
  auto composite = sd.map(s0, s2, 0);
  CHECK(composite.rows() == sd.rank(s2, 0));
  CHECK(composite.nnz() == 1);
  CHECK(sd.map(s2, s2, 1) == SparseMatrix::identity(Ring::INT, 1));
}

TEST_CASE("mutations are rejected") {
  testing::Rng rng(21);
  int squares = 0, transits = 0;
  for (int trial = 0; trial < 80; ++trial) {
    Ring ring = trial % 2 ? Ring::INT : Ring::GF2;
    Diagram d = testing::random_simplicial_diagram(rng, ring);
    REQUIRE(validate(d).ok());
    Diagram a = d;
    if (testing::break_local_square(rng, a)) {
      ++squares;
      CHECK(has_code(validate(a), ErrorCode::NotAComplex));
    }
    Diagram b = d;
    if (testing::break_transitivity(rng, b)) {
      ++transits;
      CHECK(has_code(validate(b), ErrorCode::TransitivityViolation));
    }
  }
  CHECK(squares > 10);
  CHECK(transits > 10);
}

TEST_CASE("forced resolution keeps the first map") {
  auto sd = resolve_unchecked(nontransitive_counterexample().diagram);
  CHECK(sd.forced());
  CHECK(sd.map(sd.index("sigma0"), sd.index("tau1"), 0).at(0, 0) == -1);
}

}
