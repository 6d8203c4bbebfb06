#include "logical.hpp"

#include <algorithm>
#include <atomic>
#include <bit>

#include "parallel.hpp"

namespace stratacode {

namespace {

SparseMatrix independent_rows(const SparseMatrix& m) {
  if (m.rows() == 0) return m;
  return rref_gf2(m).reduced;
}

using Bits = std::vector<std::uint64_t>;

Bits column_bits(const SparseMatrix& m, std::size_t col, std::size_t words) {
  Bits b(words, 0);
  for (const auto& e : m.entries()) {
    if (e.col == col) b[e.row / 64] ^= std::uint64_t{1} << (e.row % 64);
  }
  return b;
}

std::size_t weight(const Bits& b) {
  std::size_t w = 0;
  for (auto x : b) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

void xor_into(Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

}  // namespace

CSSCode css_extract(const ChainComplex& c, int k, bool independent_checks) {
  if (c.ring != Ring::GF2) {
    fail(ErrorCode::RingMismatch, "CSS codes need GF(2) coefficients; rebuild the diagram over F2");
  }
  CSSCode code;
  code.qubit_degree = k;
  code.n = c.rank(k);
  code.hx = c.boundary(k);
  code.hz = c.boundary(k + 1).transpose();
  if (independent_checks) {
    code.hx = independent_rows(code.hx);
    code.hz = independent_rows(code.hz);
  }
  HomologyResult h = homology_at(c, k);
  HomologyResult co = cohomology_at(c, k);
  code.k_logical = h.free_rank;
  code.logical_z = h.representatives;
  code.logical_x = co.representatives;
  if (!(code.hx * code.hz.transpose()).is_zero()) {
    fail(ErrorCode::Internal, "X and Z checks do not commute");
  }
  return code;
}

CSSCode css_extract(const ColimitComplex& c, int k, bool independent_checks) {
  if (c.ring() != Ring::GF2) {
    fail(ErrorCode::RingMismatch, "CSS codes need GF(2) coefficients; rebuild the diagram over F2");
  }
  return css_extract(c.chain_complex(), k, independent_checks);
}

PairingMatrix pairing_matrix(const SparseMatrix& cocycles, const SparseMatrix& cycles, int degree) {
  if (cocycles.rows() != cycles.rows()) {
    fail(ErrorCode::DimensionMismatch, "cocycles and cycles live in different chain modules");
  }
  return {degree, cocycles.transpose() * cycles, cocycles, cycles};
}

PairingMatrix pairing_matrix(const ChainComplex& c, int k) {
  return pairing_matrix(cohomology_at(c, k).representatives, homology_at(c, k).representatives, k);
}

PairingMatrix pairing_matrix(const ColimitComplex& c, int k) {
  return pairing_matrix(c.chain_complex(), k);
}

PairingMatrix pairing_matrix(const CSSCode& code) {
  return pairing_matrix(code.logical_x, code.logical_z, code.qubit_degree);
}

std::optional<SparseMatrix> inverse_gf2(const SparseMatrix& m) {
  if (m.ring() != Ring::GF2) fail(ErrorCode::RingMismatch, "inverse_gf2 needs a GF(2) matrix");
  if (m.rows() != m.cols()) fail(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  BitMatrix aug(n, 2 * n);
  for (const auto& e : m.entries()) aug.flip(e.row, e.col);
  for (std::size_t i = 0; i < n; ++i) aug.flip(i, n + i);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (gf2_rref(aug, order).size() != n) return std::nullopt;
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (aug.get(i, n + j)) entries.push_back({i, j, Integer(1)});
    }
  }
  return SparseMatrix::from_triples(Ring::GF2, n, n, std::move(entries));
}

PairingMatrix dualize_bases(const PairingMatrix& p) {
  if (p.matrix.ring() != Ring::GF2) fail(ErrorCode::RingMismatch, "dual bases need GF(2)");
  if (p.matrix.rows() != p.matrix.cols()) {
    fail(ErrorCode::DimensionMismatch, "pairing matrix is not square");
  }
  auto inv = inverse_gf2(p.matrix);
  if (!inv) fail(ErrorCode::DegeneratePairing, "pairing matrix is singular");
  // A' = A (P^-1)^T gives A'^T B = P^-1 A^T B = 1.
  SparseMatrix cocycles = p.cocycles * inv->transpose();
  return pairing_matrix(cocycles, p.cycles, p.degree);
}

int commutation_sign(std::span<const Integer> alpha, std::span<const Integer> beta) {
  if (alpha.size() != beta.size()) fail(ErrorCode::DimensionMismatch, "operator lengths differ");
  return dot(Ring::GF2, alpha, beta) == 0 ? 1 : -1;
}

DistanceResult min_distance(const CSSCode& code, LogicalKind kind, std::size_t budget) {
  DistanceResult out;
  const SparseMatrix& reps = kind == LogicalKind::Z ? code.logical_z : code.logical_x;
  const SparseMatrix& checks = kind == LogicalKind::Z ? code.hz : code.hx;
  const std::size_t kl = reps.cols();
  if (kl == 0) return out;
  out.has_logicals = true;
  const std::size_t n = code.n;
  const std::size_t words = (n + 63) / 64;
  SparseMatrix gens = image_basis(checks.transpose());
  const std::size_t r = gens.cols();

  std::vector<Bits> g(r), basis(kl);
  for (std::size_t i = 0; i < r; ++i) g[i] = column_bits(gens, i, words);
  for (std::size_t i = 0; i < kl; ++i) basis[i] = column_bits(reps, i, words);

  // Greedy descent gives an upper bound that is always available.
  std::size_t best = SIZE_MAX;
  for (const auto& start : basis) {
    Bits v = start;
    for (bool improved = true; improved;) {
      improved = false;
      for (const auto& x : g) {
        Bits t = v;
        xor_into(t, x);
        if (weight(t) < weight(v)) {
          v = std::move(t);
          improved = true;
        }
      }
    }
    best = std::min(best, weight(v));
  }

  const bool coset_fits = r < 63 && (std::size_t{1} << r) <= budget;
  if (!coset_fits) {
    out.value = best;
    return out;
  }
  const std::size_t coset = std::size_t{1} << r;
  const bool all_fit = kl < 63 && ((std::size_t{1} << kl) - 1) <= budget / coset;
  const std::size_t classes = all_fit ? (std::size_t{1} << kl) - 1
                                      : std::max<std::size_t>(1, budget / coset);
  std::atomic<std::size_t> global{best};
  parallel_for(classes, [&](std::size_t idx) {
    // Class index idx+1 as a bit mask over the basis; beyond 2^kl - 1 only
    // single basis classes are tried.
    std::size_t mask = idx + 1;
    Bits v(words, 0);
    if (all_fit) {
      for (std::size_t i = 0; i < kl; ++i) {
        if ((mask >> i) & 1u) xor_into(v, basis[i]);
      }
    } else {
      v = basis[idx % kl];
    }
    std::size_t local = weight(v);
    for (std::size_t i = 1; i < coset; ++i) {
      xor_into(v, g[static_cast<std::size_t>(std::countr_zero(i))]);
      local = std::min(local, weight(v));
    }
    std::size_t cur = global.load();
    while (local < cur && !global.compare_exchange_weak(cur, local)) {
    }
  });
  out.value = global.load();
  out.exact = all_fit;
  out.cosets_enumerated = classes;
  return out;
}

}  // namespace stratacode
