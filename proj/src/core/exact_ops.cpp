#include <algorithm>

#include "exact.hpp"

namespace stratacode {

namespace {

void require_ring(const SparseMatrix& m, Ring ring, const char* op) {
  if (m.ring() != ring) {
    fail(ErrorCode::RingMismatch,
         std::string(op) + " requires ring " + std::string(ring_name(ring)));
  }
}

SparseMatrix columns_of(const IntMatrix& a, std::size_t first, std::size_t last) {
  std::vector<Entry> entries;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = first; c < last; ++c) {
      if (a.at(r, c) != 0) entries.push_back({r, c - first, a.at(r, c)});
    }
  }
  return SparseMatrix::from_triples(Ring::INT, a.rows(), last - first, std::move(entries));
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  if (m.is_zero()) return 0;
  if (m.ring() == Ring::GF2) {
    // Eliminate along the shorter side.
    BitMatrix b = m.rows() <= m.cols() ? BitMatrix::from_sparse(m)
                                       : BitMatrix::from_sparse(m.transpose());
    return gf2_rref(b).size();
  }
  return smith_dense(IntMatrix::from_sparse(m), false).diagonal.size();
}

RrefResult rref_gf2(const SparseMatrix& m) {
  require_ring(m, Ring::GF2, "rref_gf2");
  BitMatrix b = BitMatrix::from_sparse(m);
  auto pivots = gf2_rref(b);
  std::vector<std::size_t> keep(pivots.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  return {b.to_sparse().select_rows(keep), std::move(pivots)};
}

SparseMatrix kernel_basis(const SparseMatrix& m) {
  const std::size_t n = m.cols();
  if (m.ring() == Ring::GF2) {
    BitMatrix b = BitMatrix::from_sparse(m);
    auto pivots = gf2_rref(b);
    std::vector<char> is_pivot(n, 0);
    for (std::size_t p : pivots) is_pivot[p] = 1;
    std::vector<Entry> entries;
    std::size_t col = 0;
    for (std::size_t f = 0; f < n; ++f) {
      if (is_pivot[f]) continue;
      entries.push_back({f, col, Integer(1)});
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (b.get(i, f)) entries.push_back({pivots[i], col, Integer(1)});
      }
      ++col;
    }
    return SparseMatrix::from_triples(Ring::GF2, n, col, std::move(entries));
  }
  DenseSmith snf = smith_dense(IntMatrix::from_sparse(m), true);
  return columns_of(snf.v, snf.diagonal.size(), n);
}

SparseMatrix image_basis(const SparseMatrix& m) {
  if (m.ring() == Ring::GF2) {
    BitMatrix b = BitMatrix::from_sparse(m);
    auto pivots = gf2_rref(b);
    return m.select_columns(pivots);
  }
  DenseSmith snf = smith_dense(IntMatrix::from_sparse(m), true);
  const std::size_t r = snf.diagonal.size();
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t c = 0; c < r; ++c) {
      if (snf.u_inv.at(i, c) != 0) {
        entries.push_back({i, c, snf.u_inv.at(i, c) * snf.diagonal[c]});
      }
    }
  }
  return SparseMatrix::from_triples(Ring::INT, m.rows(), r, std::move(entries));
}

SmithDecomposition smith_normal_form(const SparseMatrix& m) {
  require_ring(m, Ring::INT, "smith_normal_form");
  DenseSmith snf = smith_dense(IntMatrix::from_sparse(m), true);
  return {snf.u.to_sparse(), snf.s.to_sparse(), snf.v.to_sparse(), snf.diagonal};
}

std::optional<Vector> in_span(const SparseMatrix& m, std::span<const Integer> v) {
  return SpanTester(m).solve(v);
}

ModuleInvariants cokernel_invariants(const SparseMatrix& m) {
  require_ring(m, Ring::INT, "cokernel_invariants");
  DenseSmith snf = smith_dense(IntMatrix::from_sparse(m), false);
  ModuleInvariants out;
  out.free_rank = m.rows() - snf.diagonal.size();
  for (const auto& d : snf.diagonal) {
    if (d > 1) out.factors.push_back(d);
  }
  return out;
}

SpanTester::SpanTester(const SparseMatrix& generators)
    : ring_(generators.ring()), rows_(generators.rows()), cols_(generators.cols()) {
  if (ring_ == Ring::GF2) {
    echelon_ = BitMatrix(cols_, rows_ + cols_);
    for (const auto& e : generators.entries()) echelon_.flip(e.col, e.row);
    for (std::size_t j = 0; j < cols_; ++j) echelon_.flip(j, rows_ + j);
    std::vector<std::size_t> order(rows_);
    for (std::size_t i = 0; i < rows_; ++i) order[i] = i;
    pivots_ = gf2_rref(echelon_, order);
  } else {
    smith_ = smith_dense(IntMatrix::from_sparse(generators), true);
  }
}

bool SpanTester::contains(std::span<const Integer> v) const { return solve(v).has_value(); }

std::optional<Vector> SpanTester::solve(std::span<const Integer> v) const {
  if (v.size() != rows_) {
    fail(ErrorCode::DimensionMismatch,
         "vector of length " + std::to_string(v.size()) + " tested against " +
             std::to_string(rows_) + " rows");
  }
  if (ring_ == Ring::GF2) {
    BitMatrix acc(1, rows_ + cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (mpz_odd_p(v[i].get_mpz_t())) acc.flip(0, i);
    }
    std::uint64_t* a = acc.row_data(0);
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      if (!acc.get(0, pivots_[i])) continue;
      const std::uint64_t* row = echelon_.row_data(i);
      for (std::size_t w = 0; w < acc.words_per_row(); ++w) a[w] ^= row[w];
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (acc.get(0, i)) return std::nullopt;
    }
    Vector x(cols_, Integer(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      if (acc.get(0, rows_ + j)) x[j] = 1;
    }
    return x;
  }
  // u * m * v = s, so m x = b  <=>  s y = u b with x = v y.
  const IntMatrix& u = smith_.u;
  Vector w(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < rows_; ++k) {
      if (u.at(i, k) != 0 && v[k] != 0) w[i] += u.at(i, k) * v[k];
    }
  }
  const std::size_t r = smith_.diagonal.size();
  Vector y(cols_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i < r) {
      if (w[i] % smith_.diagonal[i] != 0) return std::nullopt;
      y[i] = w[i] / smith_.diagonal[i];
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  Vector x(cols_, Integer(0));
  for (std::size_t i = 0; i < cols_; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      if (smith_.v.at(i, k) != 0 && y[k] != 0) x[i] += smith_.v.at(i, k) * y[k];
    }
  }
  return x;
}

}  // namespace stratacode
