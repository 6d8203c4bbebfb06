#include <doctest.h>

#include "../support/generators.hpp"
#include "catalog.hpp"
#include "homology.hpp"
#include "logical.hpp"
#include "oracles.hpp"

using namespace stratacode;

namespace {

ColimitComplex built(const CatalogEntry& e) { return build(resolve_gluings(e.diagram)); }

}  // namespace

TEST_SUITE("logical") {

TEST_CASE("toric code parameters and dual bases") {
  for (long n : {2, 3, 4}) {
    auto code = css_extract(built(toric(n)), 1);
    CHECK(code.n == static_cast<std::size_t>(2 * n * n));
    CHECK(code.k_logical == 2);
    CHECK((code.hx * code.hz.transpose()).is_zero());
    auto dual = dualize_bases(pairing_matrix(code));
    CHECK(dual.matrix == SparseMatrix::identity(Ring::GF2, 2));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(commutation_sign(dual.cocycles.column(i), dual.cycles.column(j)) == (i == j ? -1 : 1));
  }
}

TEST_CASE("distances") {
  auto toric3 = css_extract(built(toric(3)), 1);
  auto dz = min_distance(toric3, LogicalKind::Z);
  CHECK(dz.exact);
  CHECK(dz.value == 3);
  CHECK(min_distance(toric3, LogicalKind::X).value == 3);
  auto dangling = css_extract(built(dangling_square()), 1);
  CHECK(dangling.n == 3);
  CHECK(dangling.k_logical == 1);
  auto d = min_distance(dangling, LogicalKind::Z);
  CHECK(d.exact);
  CHECK(d.value == 1);
  auto bound = min_distance(toric3, LogicalKind::Z, 4);
  CHECK_FALSE(bound.exact);
  CHECK(bound.value >= 3);
}

TEST_CASE("integer diagrams have no CSS code") {
  try {
    css_extract(built(rp2(Ring::INT)), 1);
    FAIL("expected RingMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RingMismatch);
  }
}

TEST_CASE("pairing is invariant under boundary shifts") {
  testing::Rng rng(51);
  auto c = built(toric(3)).chain_complex();
  auto z = homology_at(c, 1).representatives;
  auto x = cohomology_at(c, 1).representatives;
  auto base = pairing_matrix(x, z, 1).matrix;
  for (int trial = 0; trial < 20; ++trial) {
    auto eta = testing::random_matrix(rng, Ring::GF2, c.rank(2), z.cols(), 1, 0.3);
    auto gamma = testing::random_matrix(rng, Ring::GF2, c.rank(0), x.cols(), 1, 0.3);
    auto z2 = z + c.boundary(2) * eta;
    auto x2 = x + c.boundary(1).transpose() * gamma;
    CHECK(pairing_matrix(x2, z2, 1).matrix == base);
  }
}

TEST_CASE("commutation sign against explicit Pauli strings") {
  testing::Rng rng(52);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(testing::uniform(rng, 1, 12));
    Vector a(n), b(n);
    for (auto& v : a) v = testing::uniform(rng, 0, 1);
    for (auto& v : b) v = testing::uniform(rng, 0, 1);
    CHECK(commutation_sign(a, b) == oracles::pauli_commutation_oracle(a, b));
  }
}

TEST_CASE("inverse and degenerate pairings") {
  auto singular = SparseMatrix::from_rows(Ring::GF2, {{1, 1}, {1, 1}});
  CHECK_FALSE(inverse_gf2(singular).has_value());
  auto p = pairing_matrix(singular, SparseMatrix::identity(Ring::GF2, 2), 0);
  try {
    dualize_bases(p);
    FAIL("expected DegeneratePairing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegeneratePairing);
  }
  auto m = SparseMatrix::from_rows(Ring::GF2, {{1, 1}, {0, 1}});
  CHECK(*inverse_gf2(m) * m == SparseMatrix::identity(Ring::GF2, 2));
}

TEST_CASE("independent checks drop redundant rows") {
  auto code = css_extract(built(toric(3)), 1, true);
  CHECK(code.hx.rows() == 8);
  CHECK(code.hz.rows() == 8);
}

}
