#include <doctest.h>

#include "catalog.hpp"
#include "pipeline.hpp"

using namespace stratacode;

TEST_SUITE("pipeline") {

TEST_CASE("validate reports") {
  auto ok = run_validate(to_document(rp2()), false);
  CHECK(ok.ok);
  CHECK(ok.report.at("compatibility").at("ok") == true);
  auto bad = run_validate(to_document(nontransitive_counterexample()), false);
  CHECK_FALSE(bad.ok);
  CHECK(bad.report.at("findings")[0].at("code") == "TransitivityViolation");
  CHECK(bad.report.at("compatibility").is_null());
  auto forced = run_validate(to_document(nontransitive_counterexample()), true);
  CHECK_FALSE(forced.ok);
  CHECK(forced.report.at("build").at("error") == "TorsionChainModule");
}

TEST_CASE("homology reports") {
  auto r = run_homology(to_document(rp2()), {});
  const Json& row = r.report.at("table")[1];
  CHECK(row.at("homology").at("free") == 0);
  CHECK(row.at("homology").at("factors") == Json::array({2}));
  HomologyOptions f2;
  f2.ring_override = Ring::GF2;
  f2.degree = 1;
  auto g = run_homology(to_document(rp2()), f2);
  REQUIRE(g.report.at("table").size() == 1);
  CHECK(g.report.at("table")[0].at("homology").at("free") == 1);
  HomologyOptions five;
  five.degree = 5;
  auto z = run_homology(to_document(segment()), five);
  CHECK(z.report.at("table")[0].at("chain_rank") == 0);
  CHECK(z.report.at("table")[0].at("homology").at("free") == 0);
}

TEST_CASE("code reports") {
  auto t = run_code(to_document(toric(4)), {});
  CHECK(t.report.at("k") == 2);
  CHECK(t.report.at("dual_pairing") == Json::array({Json::array({1, 0}), Json::array({0, 1})}));
  auto d = run_code(to_document(dangling_square()), {});
  CHECK(d.report.at("parameters") == "[[3, 1, 1]]");
  CHECK(d.report.at("distance").at("z").at("value") == 1);
  CHECK_THROWS_AS(run_code(to_document(rp2()), {}), Error);
}

TEST_CASE("example reports flag disagreements") {
  auto f = run_example_report(to_document(fracton_cube(2)), true);
  CHECK(f.ok);
  CHECK(f.report.at("oracle").at("agrees_with_pipeline") == true);
  CHECK_FALSE(f.report.at("discrepancies").empty());
  auto r = run_example_report(to_document(rp2()), true);
  CHECK(r.report.at("discrepancies").empty());
  auto n = run_example_report(to_document(nontransitive_counterexample()), false);
  CHECK(n.ok);
  CHECK(n.report.at("status") == "invalid as expected");
}

TEST_CASE("surgery reports") {
  auto s = to_document(segment());
  auto out = run_surgery(s, s, {{"v", "v"}});
  CHECK(out.result.report.at("after").at("table")[0].at("homology").at("free") == 1);
  auto apart = run_surgery(s, s, {});
  CHECK(apart.result.report.at("after").at("table")[0].at("homology").at("free") == 2);
}

TEST_CASE("reports are deterministic") {
  auto doc = to_document(toric(3));
  CHECK(run_code(doc, {}).report.dump() == run_code(doc, {}).report.dump());
  CHECK(run_homology(doc, {}).report.dump() == run_homology(doc, {}).report.dump());
}

}
