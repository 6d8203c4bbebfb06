#include "homology.hpp"

#include <algorithm>

#include "parallel.hpp"

namespace stratacode {

namespace {

HomologyResult subquotient_gf2(std::size_t n, const SparseMatrix& d_out, const SparseMatrix& d_in) {
  HomologyResult h;
  h.ring = Ring::GF2;
  h.chain_rank = n;
  SparseMatrix z = kernel_basis(d_out);
  if (z.cols() + rank(d_out) != n) fail(ErrorCode::Internal, "rank-nullity audit failed");
  SparseMatrix b = image_basis(d_in);
  // Greedy column selection over [B | Z]: Z columns independent of everything
  // before them represent homology classes.
  const std::size_t nb = b.cols();
  BitMatrix m(n, nb + z.cols());
  for (const auto& e : b.entries()) m.flip(e.row, e.col);
  for (const auto& e : z.entries()) m.flip(e.row, nb + e.col);
  std::vector<std::size_t> picked;
  for (std::size_t p : gf2_rref(m)) {
    if (p >= nb) picked.push_back(p - nb);
  }
  h.free_rank = picked.size();
  if (h.free_rank != z.cols() - nb) fail(ErrorCode::Internal, "boundaries are not cycles");
  h.representatives = z.select_columns(picked);
  return h;
}

HomologyResult subquotient_int(std::size_t n, const SparseMatrix& d_out, const SparseMatrix& d_in) {
  HomologyResult h;
  h.ring = Ring::INT;
  h.chain_rank = n;
  DenseSmith outer = smith_dense(IntMatrix::from_sparse(d_out), true);
  const std::size_t r = outer.diagonal.size();
  const std::size_t z = n - r;
  // Kernel lattice basis K = V[:, r:]; d_in = K * C with C = (V^-1 d_in)[r:, :].
  IntMatrix in = IntMatrix::from_sparse(d_in);
  IntMatrix moved = outer.v_inv.multiply(in);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < in.cols(); ++j) {
      if (moved.at(i, j) != 0) fail(ErrorCode::Internal, "boundaries are not cycles");
    }
  }
  IntMatrix coords(z, in.cols());
  for (std::size_t i = 0; i < z; ++i) {
    for (std::size_t j = 0; j < in.cols(); ++j) coords.at(i, j) = moved.at(r + i, j);
  }
  DenseSmith inner = smith_dense(coords, true);
  const std::size_t s = inner.diagonal.size();
  // New kernel basis K * U'^-1; column j carries the class of order d_j.
  IntMatrix basis(n, z);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < z; ++j) {
      Integer acc = 0;
      for (std::size_t t = 0; t < z; ++t) {
        if (outer.v.at(i, r + t) != 0 && inner.u_inv.at(t, j) != 0) {
          acc += outer.v.at(i, r + t) * inner.u_inv.at(t, j);
        }
      }
      basis.at(i, j) = acc;
    }
  }
  std::vector<std::size_t> order;
  for (std::size_t j = s; j < z; ++j) order.push_back(j);
  for (std::size_t j = 0; j < s; ++j) {
    if (inner.diagonal[j] > 1) {
      order.push_back(j);
      h.invariant_factors.push_back(inner.diagonal[j]);
    }
  }
  h.free_rank = z - s;
  std::vector<Entry> entries;
  for (std::size_t c = 0; c < order.size(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      if (basis.at(i, order[c]) != 0) entries.push_back({i, c, basis.at(i, order[c])});
    }
  }
  h.representatives = SparseMatrix::from_triples(Ring::INT, n, order.size(), std::move(entries));
  return h;
}

}  // namespace

HomologyResult subquotient(Ring ring, std::size_t n, const SparseMatrix& d_out,
                           const SparseMatrix& d_in) {
  if (d_out.cols() != n || d_in.rows() != n) {
    fail(ErrorCode::DimensionMismatch, "maps do not meet at a module of rank " + std::to_string(n));
  }
  if (d_out.ring() != ring || d_in.ring() != ring) fail(ErrorCode::RingMismatch, "ring mismatch");
  return ring == Ring::GF2 ? subquotient_gf2(n, d_out, d_in) : subquotient_int(n, d_out, d_in);
}

HomologyResult homology_at(const ChainComplex& c, int k) {
  HomologyResult h = subquotient(c.ring, c.rank(k), c.boundary(k), c.boundary(k + 1));
  h.degree = k;
  return h;
}

HomologyResult cohomology_at(const ChainComplex& c, int k) {
  HomologyResult h =
      subquotient(c.ring, c.rank(k), c.boundary(k + 1).transpose(), c.boundary(k).transpose());
  h.degree = k;
  return h;
}

HomologyResult homology_at(const ColimitComplex& c, int k) {
  return homology_at(c.chain_complex(), k);
}

HomologyResult cohomology_at(const ColimitComplex& c, int k) {
  return cohomology_at(c.chain_complex(), k);
}

bool UctReport::consistent() const {
  return std::all_of(rows.begin(), rows.end(), [](const UctRow& r) { return r.consistent; });
}

std::vector<BettiRow> betti_table(const ChainComplex& c) {
  std::vector<BettiRow> rows(static_cast<std::size_t>(std::max(0, c.top_degree() + 1)));
  parallel_for(rows.size(), [&](std::size_t i) {
    const int k = static_cast<int>(i);
    rows[i] = {k, c.rank(k), homology_at(c, k).invariants(), cohomology_at(c, k).invariants()};
  });
  return rows;
}

std::vector<BettiRow> betti_table(const ColimitComplex& c) {
  return betti_table(c.chain_complex());
}

UctReport uct_check(const ChainComplex& c) {
  UctReport report;
  auto table = betti_table(c);
  for (std::size_t i = 0; i < table.size(); ++i) {
    UctRow row;
    row.degree = table[i].degree;
    row.hom_free_rank = table[i].homology.free_rank;
    if (i > 0) row.ext_factors = table[i - 1].homology.factors;
    row.observed = table[i].cohomology;
    auto a = row.ext_factors;
    auto b = row.observed.factors;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    row.consistent = row.observed.free_rank == row.hom_free_rank && a == b;
    report.rows.push_back(std::move(row));
  }
  return report;
}

UctReport uct_check(const ColimitComplex& c) { return uct_check(c.chain_complex()); }

}  // namespace stratacode
