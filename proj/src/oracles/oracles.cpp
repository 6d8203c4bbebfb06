#include "oracles.hpp"

#include <algorithm>
#include <cstdint>
#include <tuple>

#include "errors.hpp"

namespace stratacode::oracles {

namespace {

using Row = std::vector<std::uint64_t>;

long mod(long x, long n) { return ((x % n) + n) % n; }

SparseMatrix zero_boundary(Ring ring, std::size_t n) { return SparseMatrix(ring, 0, n); }

DirectComplex make_complex(Ring ring, std::vector<std::size_t> dims,
                           std::vector<std::vector<Entry>> entries) {
  DirectComplex c;
  c.ring = ring;
  c.dims = dims;
  c.boundaries.push_back(zero_boundary(ring, dims[0]));
  for (std::size_t k = 1; k < dims.size(); ++k) {
    c.boundaries.push_back(
        SparseMatrix::from_triples(ring, dims[k - 1], dims[k], std::move(entries[k])));
  }
  return c;
}

std::vector<Row> bit_rows(const SparseMatrix& m) {
  const std::size_t words = (m.cols() + 63) / 64;
  std::vector<Row> rows(m.rows(), Row(words, 0));
  for (const auto& e : m.entries()) {
    if (mpz_odd_p(e.value.get_mpz_t())) rows[e.row][e.col / 64] ^= std::uint64_t{1} << (e.col % 64);
  }
  return rows;
}

bool bit(const Row& r, std::size_t c) { return (r[c / 64] >> (c % 64)) & 1u; }

std::uint64_t apply_bits(const SparseMatrix& m, std::size_t row, std::uint64_t x) {
  std::uint64_t acc = 0;
  for (const auto& e : m.entries()) {
    if (e.row == row && ((x >> e.col) & 1u) && mpz_odd_p(e.value.get_mpz_t())) acc ^= 1;
  }
  return acc;
}

std::uint64_t image_of(const SparseMatrix& m, std::uint64_t x) {
  std::uint64_t y = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) y |= apply_bits(m, r, x) << r;
  return y;
}

std::size_t log2_exact(std::size_t v) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < v) ++k;
  return k;
}

using Dense = std::vector<std::vector<Integer>>;

Dense dense_of(const SparseMatrix& m) {
  Dense a(m.rows(), std::vector<Integer>(m.cols(), 0));
  for (const auto& e : m.entries()) a[e.row][e.col] = e.value;
  return a;
}

}  // namespace

SparseMatrix direct_twisted_boundary(long n, long a, long b) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be positive");
  const long faces = n * n;
  auto eh = [&](long i, long j) { return static_cast<std::size_t>(mod(i, n) * n + mod(j, n)); };
  auto ev = [&](long i, long j) {
    return static_cast<std::size_t>(faces + mod(i, n) * n + mod(j, n));
  };
  std::vector<Entry> entries;
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const auto col = static_cast<std::size_t>(i * n + j);
      entries.push_back({eh(i, j), col, 1});
      entries.push_back({eh(i + a, j + b), col, 1});
      entries.push_back({ev(i, j), col, 1});
      entries.push_back({ev(i + b, j - a), col, 1});
    }
  }
  return SparseMatrix::from_triples(Ring::GF2, static_cast<std::size_t>(2 * faces),
                                    static_cast<std::size_t>(faces), std::move(entries));
}

DirectComplex direct_twisted_torus(long n, long a, long b) {
  const std::size_t faces = static_cast<std::size_t>(n * n);
  SparseMatrix d2 = direct_twisted_boundary(n, a, b);
  std::vector<Entry> d1;
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const auto h = static_cast<std::size_t>(i * n + j);
      auto v = [&](long x, long y) { return static_cast<std::size_t>(mod(x, n) * n + mod(y, n)); };
      d1.push_back({v(i, j), h, 1});
      d1.push_back({v(i + 1, j), h, 1});
      d1.push_back({v(i, j), faces + h, 1});
      d1.push_back({v(i, j + 1), faces + h, 1});
    }
  }
  SparseMatrix m1 = SparseMatrix::from_triples(Ring::GF2, faces, 2 * faces, std::move(d1));
  DirectComplex c;
  c.ring = Ring::GF2;
  if (composes_to_zero_gf2(m1, d2)) {
    c.dims = {faces, 2 * faces, faces};
    c.boundaries = {zero_boundary(Ring::GF2, faces), m1, d2};
  } else {
    // Only the face and edge modules survive; edges become degree 0 here.
    c.dims = {0, 2 * faces, faces};
    c.boundaries = {zero_boundary(Ring::GF2, 0), SparseMatrix(Ring::GF2, 0, 2 * faces), d2};
  }
  return c;
}

DirectComplex direct_fracton(long L, bool delete_top_faces) {
  if (L < 1) fail(ErrorCode::InvalidArgument, "L must be positive");
  const long P = L + 1;
  auto vtx = [&](long i, long j, long k) { return static_cast<std::size_t>((i * P + j) * P + k); };
  // Edge, face and cube numbering: direction block, then lexicographic (i, j, k).
  std::map<std::tuple<char, long, long, long>, std::size_t> edge, face, cube;
  for (char dir : {'x', 'y', 'z'}) {
    for (long i = 0; i <= L; ++i)
      for (long j = 0; j <= L; ++j)
        for (long k = 0; k <= L; ++k) {
          bool ok = (dir == 'x' && i < L) || (dir == 'y' && j < L) || (dir == 'z' && k < L);
          if (ok) edge.emplace(std::make_tuple(dir, i, j, k), edge.size());
        }
  }
  for (char dir : {'x', 'y', 'z'}) {
    for (long i = 0; i <= L; ++i)
      for (long j = 0; j <= L; ++j)
        for (long k = 0; k <= L; ++k) {
          bool ok = (dir == 'x' && j < L && k < L) || (dir == 'y' && i < L && k < L) ||
                    (dir == 'z' && i < L && j < L);
          if (ok) face.emplace(std::make_tuple(dir, i, j, k), face.size());
        }
  }
  // Private copies ('p') of a cube's bottom face once that face is cut loose.
  if (delete_top_faces) {
    for (long i = 0; i < L; ++i)
      for (long j = 0; j < L; ++j)
        for (long k = 1; k < L; ++k) face.emplace(std::make_tuple('p', i, j, k), face.size());
  }
  for (long i = 0; i < L; ++i)
    for (long j = 0; j < L; ++j)
      for (long k = 0; k < L; ++k) cube.emplace(std::make_tuple('c', i, j, k), cube.size());

  std::vector<std::vector<Entry>> e(4);
  for (const auto& [key, idx] : edge) {
    auto [dir, i, j, k] = key;
    e[1].push_back({vtx(i, j, k), idx, 1});
    e[1].push_back({vtx(i + (dir == 'x'), j + (dir == 'y'), k + (dir == 'z')), idx, 1});
  }
  auto E = [&](char d, long i, long j, long k) { return edge.at({d, i, j, k}); };
  for (const auto& [key, idx] : face) {
    auto [dir, i, j, k] = key;
    std::vector<std::size_t> sides;
    if (dir == 'x') sides = {E('y', i, j, k), E('y', i, j, k + 1), E('z', i, j, k), E('z', i, j + 1, k)};
    if (dir == 'y') sides = {E('x', i, j, k), E('x', i, j, k + 1), E('z', i, j, k), E('z', i + 1, j, k)};
    if (dir == 'z' || dir == 'p')
      sides = {E('x', i, j, k), E('x', i, j + 1, k), E('y', i, j, k), E('y', i + 1, j, k)};
    for (auto s : sides) e[2].push_back({s, idx, 1});
  }
  for (const auto& [key, idx] : cube) {
    auto [tag, i, j, k] = key;
    (void)tag;
    const bool cut = delete_top_faces && k >= 1;
    std::vector<std::size_t> sides = {face.at({'x', i, j, k}), face.at({'x', i + 1, j, k}),
                                      face.at({'y', i, j, k}), face.at({'y', i, j + 1, k}),
                                      face.at({cut ? 'p' : 'z', i, j, k}), face.at({'z', i, j, k + 1})};
    for (auto s : sides) e[3].push_back({s, idx, 1});
  }
  return make_complex(Ring::GF2,
                      {static_cast<std::size_t>(P * P * P), edge.size(), face.size(), cube.size()},
                      std::move(e));
}

DirectComplex direct_rp2(Ring ring) {
  // One vertex, one edge whose ends coincide, one face wrapped twice.
  return make_complex(ring, {1, 1, 1}, {{}, {}, {{0, 0, 2}}});
}

DirectComplex direct_rp2_split() {
  return make_complex(Ring::INT, {1, 1, 2}, {{}, {}, {{0, 0, 1}, {0, 1, 1}}});
}

DirectComplex direct_dangling_square() {
  // e1, e2 meet v; e3 floats; the face is bounded by e1 + e2.
  return make_complex(Ring::GF2, {1, 3, 1},
                      {{}, {{0, 0, 1}, {0, 1, 1}}, {{0, 0, 1}, {1, 0, 1}}});
}

DirectComplex direct_segment(Ring ring) {
  return make_complex(ring, {2, 1}, {{}, {{0, 0, -1}, {1, 0, 1}}});
}

DirectComplex direct_grid(long m, Ring ring) {
  const long P = m + 1;
  auto v = [&](long i, long j) { return static_cast<std::size_t>(i * P + j); };
  auto h = [&](long i, long j) { return static_cast<std::size_t>(i * P + j); };
  const auto nh = static_cast<std::size_t>(m * P);
  auto w = [&](long i, long j) { return nh + static_cast<std::size_t>(i * m + j); };
  std::vector<std::vector<Entry>> e(3);
  for (long i = 0; i <= m; ++i) {
    for (long j = 0; j <= m; ++j) {
      if (i < m) {
        e[1].push_back({v(i, j), h(i, j), -1});
        e[1].push_back({v(i + 1, j), h(i, j), 1});
      }
      if (j < m) {
        e[1].push_back({v(i, j), w(i, j), -1});
        e[1].push_back({v(i, j + 1), w(i, j), 1});
      }
      if (i < m && j < m) {
        const auto f = static_cast<std::size_t>(i * m + j);
        e[2].push_back({h(i, j), f, 1});
        e[2].push_back({w(i + 1, j), f, 1});
        e[2].push_back({h(i, j + 1), f, -1});
        e[2].push_back({w(i, j), f, -1});
      }
    }
  }
  return make_complex(ring, {static_cast<std::size_t>(P * P), 2 * nh, static_cast<std::size_t>(m * m)},
                      std::move(e));
}

DirectComplex direct_repaired_triangle() {
  // All three point strata collapse onto the single endpoint of the loop edge.
  return make_complex(Ring::INT, {1, 1}, {{}, {}});
}

std::size_t dense_rank_gf2(const SparseMatrix& m) {
  std::vector<Row> rows = bit_rows(m);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && !bit(rows[p], c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && bit(rows[r], c)) {
        for (std::size_t w = 0; w < rows[r].size(); ++w) rows[r][w] ^= rows[rank][w];
      }
    }
    ++rank;
  }
  return rank;
}

bool composes_to_zero_gf2(const SparseMatrix& outer, const SparseMatrix& inner) {
  if (outer.cols() != inner.rows()) fail(ErrorCode::DimensionMismatch, "shapes do not compose");
  std::vector<Row> a = bit_rows(outer);
  std::vector<Row> bt = bit_rows(inner.transpose());
  for (const auto& r : a) {
    for (const auto& c : bt) {
      std::uint64_t acc = 0;
      for (std::size_t w = 0; w < r.size(); ++w) acc ^= r[w] & c[w];
      if (std::popcount(acc) % 2) return false;
    }
  }
  return true;
}

std::vector<std::size_t> exhaustive_homology_gf2(const DirectComplex& c) {
  std::size_t total = 0;
  for (auto d : c.dims) total += d;
  if (total > kExhaustiveLimit) {
    fail(ErrorCode::SizeExceeded, "exhaustive enumeration is capped at total dimension 20");
  }
  const std::size_t top = c.dims.size();
  std::vector<std::size_t> out(top, 0);
  for (std::size_t k = 0; k < top; ++k) {
    const std::size_t n = c.dims[k];
    std::size_t cycles = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      if (k == 0 || image_of(c.boundaries[k], x) == 0) ++cycles;
    }
    std::size_t boundaries = 1;
    if (k + 1 < top) {
      std::vector<std::uint64_t> seen;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << c.dims[k + 1]); ++x) {
        seen.push_back(image_of(c.boundaries[k + 1], x));
      }
      std::sort(seen.begin(), seen.end());
      boundaries = static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
    }
    out[k] = log2_exact(cycles) - log2_exact(boundaries);
  }
  return out;
}

std::vector<std::size_t> elimination_homology_gf2(const DirectComplex& c) {
  const std::size_t top = c.dims.size();
  std::vector<std::size_t> r(top + 1, 0);
  for (std::size_t k = 1; k < top; ++k) r[k] = dense_rank_gf2(c.boundaries[k]);
  std::vector<std::size_t> out(top);
  for (std::size_t k = 0; k < top; ++k) out[k] = c.dims[k] - r[k] - r[k + 1];
  return out;
}

std::vector<HomologyDims> naive_homology_int(const DirectComplex& c) {
  const std::size_t top = c.dims.size();
  std::vector<std::vector<Integer>> diag(top + 1);
  for (std::size_t k = 1; k < top; ++k) diag[k] = naive_snf(c.boundaries[k]);
  std::vector<HomologyDims> out;
  for (std::size_t k = 0; k < top; ++k) {
    HomologyDims h;
    h.degree = static_cast<int>(k);
    h.free_rank = c.dims[k] - diag[k].size() - diag[k + 1].size();
    for (const auto& d : diag[k + 1]) {
      if (d > 1) h.factors.push_back(d);
    }
    out.push_back(h);
  }
  return out;
}

int pauli_commutation_oracle(std::span<const Integer> alpha, std::span<const Integer> beta) {
  if (alpha.size() != beta.size()) fail(ErrorCode::DimensionMismatch, "Pauli strings differ in length");
  std::string x(alpha.size(), 'I'), z(beta.size(), 'I');
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (mpz_odd_p(alpha[i].get_mpz_t())) x[i] = 'X';
    if (mpz_odd_p(beta[i].get_mpz_t())) z[i] = 'Z';
  }
  std::size_t anti = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 'I' && z[i] != 'I' && x[i] != z[i]) ++anti;
  }
  return anti % 2 ? -1 : 1;
}

std::vector<Integer> naive_snf(const SparseMatrix& m) {
  if (m.rows() > kNaiveSnfLimit || m.cols() > kNaiveSnfLimit) {
    fail(ErrorCode::SizeExceeded, "naive_snf is capped at 6 x 6");
  }
  Dense a = dense_of(m);
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Integer> out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // First nonzero entry in reading order, no size preference.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows && pr == rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    for (;;) {
      // Clear column t, one row at a time.
      for (bool again = true; again;) {
        again = false;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (a[i][t] == 0) continue;
          Integer q = a[i][t] / a[t][t];
          for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
          if (a[i][t] != 0) {
            std::swap(a[t], a[i]);
            again = true;
          }
        }
      }
      bool dirty = false;
      for (std::size_t j = t + 1; j < cols && !dirty; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Row and column are clear; push any non-multiple into row t and redo.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t c2 = t; c2 < cols; ++c2) a[t][c2] += a[i][c2];
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(abs(a[t][t]));
  }
  return out;
}

namespace {

long param(const std::map<std::string, long>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) fail(ErrorCode::InvalidArgument, "oracle needs parameter '" + key + "'");
  return it->second;
}

nlohmann::json homology_json(const DirectComplex& c, std::string& method) {
  nlohmann::json rows = nlohmann::json::array();
  std::size_t total = 0;
  for (auto d : c.dims) total += d;
  if (c.ring == Ring::INT) {
    method = "naive_snf";
    for (const auto& h : naive_homology_int(c)) {
      nlohmann::json f = nlohmann::json::array();
      for (const auto& x : h.factors) f.push_back(x.get_si());
      rows.push_back({{"degree", h.degree}, {"free", h.free_rank}, {"factors", f}});
    }
    return rows;
  }
  std::vector<std::size_t> dims;
  if (total <= kExhaustiveLimit) {
    method = "exhaustive";
    dims = exhaustive_homology_gf2(c);
  } else {
    method = "elimination";
    dims = elimination_homology_gf2(c);
  }
  for (std::size_t k = 0; k < dims.size(); ++k) {
    rows.push_back({{"degree", k}, {"free", dims[k]}, {"factors", nlohmann::json::array()}});
  }
  return rows;
}

}  // namespace

std::optional<OracleResult> catalog_oracle(const std::string& name,
                                           const std::map<std::string, long>& params) {
  OracleResult r;
  r.name = name;
  r.inputs = params;
  std::optional<DirectComplex> c;
  nlohmann::json extra = nlohmann::json::object();
  if (name == "rp2") {
    c = direct_rp2(param(params, "gf2") ? Ring::GF2 : Ring::INT);
  } else if (name == "rp2-split") {
    c = direct_rp2_split();
  } else if (name == "torus" || name == "toric") {
    const long n = param(params, "n");
    const long a = name == "toric" ? 0 : param(params, "a");
    const long b = name == "toric" ? 1 : param(params, "b");
    c = direct_twisted_torus(n, a, b);
    extra["is_complex"] = c->dims[0] != 0;
  } else if (name == "fracton") {
    c = direct_fracton(param(params, "L"), param(params, "delete") != 0);
  } else if (name == "dangling") {
    c = direct_dangling_square();
  } else if (name == "segment") {
    c = direct_segment(param(params, "gf2") ? Ring::GF2 : Ring::INT);
  } else if (name == "grid") {
    const Ring ring = param(params, "gf2") ? Ring::GF2 : Ring::INT;
    if (ring == Ring::INT && param(params, "m") > 1) return std::nullopt;
    c = direct_grid(param(params, "m"), ring);
  } else if (name == "nontransitive") {
    if (!param(params, "repaired")) return std::nullopt;
    c = direct_repaired_triangle();
  } else {
    return std::nullopt;
  }
  std::string method;
  nlohmann::json value = extra;
  value["homology"] = homology_json(*c, method);
  value["method"] = method;
  nlohmann::json dims = nlohmann::json::array();
  for (auto d : c->dims) dims.push_back(d);
  value["chain_ranks"] = dims;
  nlohmann::json ranks = nlohmann::json::array({0});
  for (std::size_t k = 1; k < c->dims.size(); ++k) {
    ranks.push_back(c->ring == Ring::GF2 ? dense_rank_gf2(c->boundaries[k])
                                         : naive_snf(c->boundaries[k]).size());
  }
  value["boundary_ranks"] = ranks;
  r.value = std::move(value);
  return r;
}

}  // namespace stratacode::oracles
