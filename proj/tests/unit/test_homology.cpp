#include <doctest.h>

#include "../support/generators.hpp"
#include "catalog.hpp"
#include "homology.hpp"

using namespace stratacode;

namespace {

ColimitComplex built(const CatalogEntry& e) { return build(resolve_gluings(e.diagram)); }

}  // namespace

TEST_SUITE("homology") {

TEST_CASE("rp2 over the integers") {
  auto c = built(rp2(Ring::INT));
  CHECK(homology_at(c, 2).invariants() == ModuleInvariants{0, {}});
  CHECK(homology_at(c, 1).invariants() == ModuleInvariants{0, {2}});
  CHECK(homology_at(c, 0).invariants() == ModuleInvariants{1, {}});
  CHECK(cohomology_at(c, 2).invariants() == ModuleInvariants{0, {2}});
  CHECK(cohomology_at(c, 1).invariants() == ModuleInvariants{0, {}});
  auto u = uct_check(c);
  CHECK(u.consistent());
  CHECK(u.rows.size() == 3);
  CHECK(u.rows[2].ext_factors == std::vector<Integer>{2});
}

TEST_CASE("rp2 over GF(2) and the split variant") {
  CHECK(homology_at(built(rp2(Ring::GF2)), 1).free_rank == 1);
  CHECK(homology_at(built(rp2(Ring::GF2)), 2).free_rank == 1);
  auto split = built(rp2_split());
  CHECK(homology_at(split, 1).invariants() == ModuleInvariants{0, {}});
}

TEST_CASE("degrees outside the complex are zero") {
  auto c = built(segment(Ring::GF2));
  auto h = homology_at(c, 5);
  CHECK(h.chain_rank == 0);
  CHECK(h.free_rank == 0);
  CHECK(homology_at(c, -1).free_rank == 0);
}

TEST_CASE("representatives are independent cycles") {
  testing::Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    Ring ring = trial % 2 ? Ring::INT : Ring::GF2;
    auto c = build(resolve_gluings(testing::random_simplicial_diagram(rng, ring, 0.25)));
    for (int k = 0; k <= c.top_degree(); ++k) {
      auto h = homology_at(c, k);
      CHECK((c.boundary(k) * h.representatives).is_zero());
      CHECK(h.representatives.cols() == h.free_rank + h.invariant_factors.size());
      auto co = cohomology_at(c, k);
      CHECK((c.boundary(k + 1).transpose() * co.representatives).is_zero());
      if (ring == Ring::GF2) CHECK(co.free_rank == h.free_rank);
    }
    CHECK(uct_check(c).consistent());
  }
}

TEST_CASE("betti table") {
  auto rows = betti_table(built(toric(3)));
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].chain_rank == 18);
  CHECK(rows[1].homology.free_rank == 2);
  CHECK(rows[0].homology.free_rank == 1);
  CHECK(rows[2].cohomology.free_rank == 1);
}

TEST_CASE("torus families") {
  CHECK(homology_at(built(twisted_torus(4, 1, 1)), 2).free_rank == 2);
  CHECK(homology_at(built(twisted_torus(6, 2, 1)), 2).free_rank == 1);
  CHECK(homology_at(built(twisted_torus(12, 3, 3)), 2).free_rank == 18);
  CHECK_FALSE(twisted_torus_is_complex(12, 3, 3));
  CHECK(twisted_torus_is_complex(5, 0, 1));
}

}
