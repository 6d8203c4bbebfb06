#include "colimit.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "parallel.hpp"

namespace stratacode {

// ---------------------------------------------------------------------------
// ChainComplex

std::size_t ChainComplex::rank(int k) const {
  if (k < 0 || k > top_degree()) return 0;
  return ranks[static_cast<std::size_t>(k)];
}

SparseMatrix ChainComplex::boundary(int k) const {
  if (k >= 1 && k <= top_degree() && static_cast<std::size_t>(k) < boundaries.size()) {
    return boundaries[static_cast<std::size_t>(k)];
  }
  return SparseMatrix(ring, rank(k - 1), rank(k));
}

void ChainComplex::check() const {
  for (int k = 1; k <= top_degree(); ++k) {
    SparseMatrix d = boundary(k);
    if (d.ring() != ring || d.rows() != rank(k - 1) || d.cols() != rank(k)) {
      fail(ErrorCode::DimensionMismatch, "boundary d_" + std::to_string(k) + " has shape " +
                                             std::to_string(d.rows()) + "x" +
                                             std::to_string(d.cols()));
    }
  }
  for (int k = 2; k <= top_degree(); ++k) {
    if (!(boundary(k - 1) * boundary(k)).is_zero()) {
      fail(ErrorCode::NotAComplex, "d_" + std::to_string(k - 1) + " d_" + std::to_string(k) +
                                       " is not zero");
    }
  }
}

// ---------------------------------------------------------------------------
// Scaffold and relations

ScaffoldLayout scaffold_layout(const StratifiedDiagram& d, int k) {
  ScaffoldLayout layout;
  layout.degree = k;
  layout.offsets.resize(d.strata().size());
  for (std::size_t s = 0; s < d.strata().size(); ++s) {
    layout.offsets[s] = layout.total_rank;
    layout.total_rank += d.rank(s, k);
  }
  return layout;
}

namespace {

struct Relations {
  SparseMatrix matrix;
  std::vector<std::pair<std::size_t, std::size_t>> pair_of_column;
};

Relations relations_with_pairs(const StratifiedDiagram& d, const ScaffoldLayout& layout, int k) {
  const Ring ring = d.ring();
  std::vector<Entry> entries;
  Relations out;
  std::size_t col = 0;
  for (auto [s, t] : d.poset().strict_pairs()) {
    const std::size_t n = d.rank(s, k);
    if (n == 0) continue;
    SparseMatrix phi = d.map(s, t, k);
    for (std::size_t x = 0; x < n; ++x) {
      entries.push_back({layout.offsets[s] + x, col + x, Integer(1)});
      out.pair_of_column.emplace_back(s, t);
    }
    for (const auto& e : phi.entries()) {
      entries.push_back({layout.offsets[t] + e.row, col + e.col, -e.value});
    }
    col += n;
  }
  out.matrix = SparseMatrix::from_triples(ring, layout.total_rank, col, std::move(entries));
  return out;
}

SparseMatrix scaffold_boundary(const StratifiedDiagram& d, const ScaffoldLayout& lower,
                               const ScaffoldLayout& upper, int k) {
  std::vector<Entry> entries;
  for (std::size_t s = 0; s < d.strata().size(); ++s) {
    const SparseMatrix local = d.boundary(s, k);
    for (const auto& e : local.entries()) {
      entries.push_back({lower.offsets[s] + e.row, upper.offsets[s] + e.col, e.value});
    }
  }
  return SparseMatrix::from_triples(d.ring(), lower.total_rank, upper.total_rank,
                                    std::move(entries));
}

// Elimination order: coordinates of higher strata first, later coordinates
// first within equal height. Survivors end up on the lowest strata.
std::vector<std::size_t> elimination_order(const StratifiedDiagram& d, const ScaffoldLayout& layout) {
  std::vector<std::size_t> owner(layout.total_rank);
  for (std::size_t s = 0; s < d.strata().size(); ++s) {
    for (std::size_t x = 0; x < d.rank(s, layout.degree); ++x) owner[layout.offsets[s] + x] = s;
  }
  std::vector<std::size_t> order(layout.total_rank);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    std::size_t ha = d.poset().height(owner[a]);
    std::size_t hb = d.poset().height(owner[b]);
    if (ha != hb) return ha > hb;
    return a > b;
  });
  return order;
}

void quotient_gf2(ColimitDegree& out, const std::vector<std::size_t>& order) {
  const std::size_t n = out.layout.total_rank;
  BitMatrix rows = BitMatrix::from_sparse(out.relations.transpose());
  std::vector<std::size_t> pivots = gf2_rref(rows, order);
  std::vector<std::size_t> pivot_row(n, SIZE_MAX);
  for (std::size_t i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = i;
  std::vector<std::size_t> pos(n, SIZE_MAX);
  for (std::size_t j = 0; j < n; ++j) {
    if (pivot_row[j] == SIZE_MAX) {
      pos[j] = out.section.size();
      out.section.push_back(j);
    }
  }
  const std::size_t q = out.section.size();
  std::vector<Entry> reduce, lift;
  for (std::size_t f : out.section) {
    reduce.push_back({pos[f], f, Integer(1)});
    lift.push_back({f, pos[f], Integer(1)});
  }
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const std::uint64_t* row = rows.row_data(i);
    for (std::size_t w = 0; w < rows.words_per_row(); ++w) {
      std::uint64_t word = row[w];
      while (word) {
        std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
        word &= word - 1;
        if (pos[c] != SIZE_MAX) reduce.push_back({pos[c], pivots[i], Integer(1)});
      }
    }
  }
  out.quotient_rank = q;
  out.reduce = SparseMatrix::from_triples(Ring::GF2, q, n, std::move(reduce));
  out.lift = SparseMatrix::from_triples(Ring::GF2, n, q, std::move(lift));
}

void quotient_int(ColimitDegree& out, const std::vector<std::size_t>& order) {
  const std::size_t n = out.layout.total_rank;
  IntMatrix a = IntMatrix::from_sparse(out.relations.transpose());
  const std::size_t m = a.rows();
  std::vector<std::size_t> pivot_row(n, SIZE_MAX);
  std::vector<char> row_used(m, 0);
  // Unit pivots only; repeat until a pass makes no progress.
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t c : order) {
      if (pivot_row[c] != SIZE_MAX) continue;
      std::size_t r = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (!row_used[i] && abs(a.at(i, c)) == 1) {
          r = i;
          break;
        }
      }
      if (r == m) continue;
      if (a.at(r, c) < 0) a.negate_row(r);
      for (std::size_t i = 0; i < m; ++i) {
        if (i != r && a.at(i, c) != 0) a.add_row_multiple(i, r, -Integer(a.at(i, c)));
      }
      row_used[r] = 1;
      pivot_row[c] = r;
      progress = true;
    }
  }
  std::vector<std::size_t> free_cols;
  std::vector<std::size_t> pos(n, SIZE_MAX);
  for (std::size_t j = 0; j < n; ++j) {
    if (pivot_row[j] == SIZE_MAX) {
      pos[j] = free_cols.size();
      free_cols.push_back(j);
    }
  }
  const std::size_t f = free_cols.size();
  // First stage: scaffold -> Z^f, substituting each pivot coordinate.
  std::vector<Entry> r1;
  for (std::size_t j : free_cols) r1.push_back({pos[j], j, Integer(1)});
  for (std::size_t p = 0; p < n; ++p) {
    if (pivot_row[p] == SIZE_MAX) continue;
    for (std::size_t j : free_cols) {
      const Integer& v = a.at(pivot_row[p], j);
      if (v != 0) r1.push_back({pos[j], p, -v});
    }
  }
  SparseMatrix reduce1 = SparseMatrix::from_triples(Ring::INT, f, n, std::move(r1));
  std::vector<Entry> e1;
  for (std::size_t j : free_cols) e1.push_back({j, pos[j], Integer(1)});
  SparseMatrix lift1 = SparseMatrix::from_triples(Ring::INT, n, f, std::move(e1));

  // Residual relations live on the free coordinates only.
  std::vector<Entry> residual;
  std::size_t res_rows = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (row_used[i]) continue;
    bool any = false;
    for (std::size_t j : free_cols) {
      if (a.at(i, j) != 0) {
        residual.push_back({res_rows, pos[j], a.at(i, j)});
        any = true;
      }
    }
    if (any) ++res_rows;
  }
  if (residual.empty()) {
    out.quotient_rank = f;
    out.reduce = std::move(reduce1);
    out.lift = std::move(lift1);
    out.section = std::move(free_cols);
    return;
  }
  SparseMatrix res = SparseMatrix::from_triples(Ring::INT, res_rows, f, std::move(residual));
  DenseSmith snf = smith_dense(IntMatrix::from_sparse(res), true);
  for (const auto& d : snf.diagonal) {
    if (d != 1) {
      fail(ErrorCode::TorsionChainModule,
           "degree " + std::to_string(out.layout.degree) +
               ": quotient chain module has torsion (invariant factor " + d.get_str() + ")");
    }
  }
  const std::size_t r = snf.diagonal.size();
  std::vector<Entry> proj, sec;
  for (std::size_t i = r; i < f; ++i) {
    for (std::size_t j = 0; j < f; ++j) {
      if (snf.v.at(j, i) != 0) proj.push_back({i - r, j, snf.v.at(j, i)});
      if (snf.v_inv.at(i, j) != 0) sec.push_back({j, i - r, snf.v_inv.at(i, j)});
    }
  }
  SparseMatrix p = SparseMatrix::from_triples(Ring::INT, f - r, f, std::move(proj));
  SparseMatrix s = SparseMatrix::from_triples(Ring::INT, f, f - r, std::move(sec));
  out.quotient_rank = f - r;
  out.reduce = p * reduce1;
  out.lift = lift1 * s;
}

}  // namespace

SparseMatrix relation_generators(const StratifiedDiagram& d, int k) {
  return relations_with_pairs(d, scaffold_layout(d, k), k).matrix;
}

CompatibilityReport boundary_compatibility_check(const StratifiedDiagram& d) {
  CompatibilityReport report;
  const int top = d.top_degree();
  for (int k = 1; k <= top; ++k) {
    ScaffoldLayout upper = scaffold_layout(d, k);
    ScaffoldLayout lower = scaffold_layout(d, k - 1);
    Relations rel = relations_with_pairs(d, upper, k);
    if (rel.matrix.cols() == 0) continue;
    SparseMatrix images = scaffold_boundary(d, lower, upper, k) * rel.matrix;
    SpanTester below(relations_with_pairs(d, lower, k - 1).matrix);
    for (std::size_t g = 0; g < rel.matrix.cols(); ++g) {
      ++report.generators_checked;
      Vector v = images.column(g);
      if (!below.contains(v)) {
        auto [s, t] = rel.pair_of_column[g];
        report.failures.push_back(
            {k, g, d.stratum(s).id, d.stratum(t).id,
             "boundary of relation generator " + std::to_string(g) + " from (" +
                 d.stratum(s).id + "," + d.stratum(t).id + ") does not lie in the degree " +
                 std::to_string(k - 1) + " relations"});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Build

std::size_t ColimitComplex::quotient_rank(int k) const {
  if (k < 0 || k > top_degree()) return 0;
  return degrees_[static_cast<std::size_t>(k)].quotient_rank;
}

SparseMatrix ColimitComplex::boundary(int k) const {
  if (k >= 1 && k <= top_degree()) return degrees_[static_cast<std::size_t>(k)].boundary;
  return SparseMatrix(ring(), quotient_rank(k - 1), quotient_rank(k));
}

SparseMatrix ColimitComplex::structure_map(std::string_view stratum, int k) const {
  return structure_map(diagram_.index(stratum), k);
}

SparseMatrix ColimitComplex::structure_map(std::size_t s, int k) const {
  if (s >= diagram_.strata().size()) fail(ErrorCode::UnknownStratum, "stratum index out of range");
  if (k < 0 || k > top_degree()) return SparseMatrix(ring(), 0, diagram_.rank(s, k));
  const ColimitDegree& deg = degrees_[static_cast<std::size_t>(k)];
  std::vector<std::size_t> cols(diagram_.rank(s, k));
  std::iota(cols.begin(), cols.end(), deg.layout.offsets[s]);
  return deg.reduce.select_columns(cols);
}

ChainComplex ColimitComplex::chain_complex() const {
  ChainComplex c;
  c.ring = ring();
  for (int k = 0; k <= top_degree(); ++k) {
    c.ranks.push_back(quotient_rank(k));
    c.boundaries.push_back(boundary(k));
  }
  return c;
}

ColimitComplex build(const StratifiedDiagram& d) {
  ColimitComplex c;
  c.diagram_ = d;
  const int top = d.top_degree();
  const Ring ring = d.ring();
  c.degrees_.resize(static_cast<std::size_t>(top + 1));
  parallel_for(c.degrees_.size(), [&](std::size_t i) {
    const int k = static_cast<int>(i);
    ColimitDegree& deg = c.degrees_[i];
    deg.layout = scaffold_layout(d, k);
    deg.relations = relations_with_pairs(d, deg.layout, k).matrix;
    auto order = elimination_order(d, deg.layout);
    if (ring == Ring::GF2) {
      quotient_gf2(deg, order);
    } else {
      quotient_int(deg, order);
    }
    if (!(deg.reduce * deg.relations).is_zero() ||
        !(deg.reduce * deg.lift == SparseMatrix::identity(ring, deg.quotient_rank))) {
      fail(ErrorCode::Internal, "quotient map check failed in degree " + std::to_string(k));
    }
  });
  for (int k = 0; k <= top; ++k) {
    ColimitDegree& deg = c.degrees_[static_cast<std::size_t>(k)];
    if (k == 0) {
      deg.scaffold_boundary = SparseMatrix(ring, 0, deg.layout.total_rank);
      deg.boundary = SparseMatrix(ring, 0, deg.quotient_rank);
      continue;
    }
    const ColimitDegree& low = c.degrees_[static_cast<std::size_t>(k - 1)];
    deg.scaffold_boundary = scaffold_boundary(d, low.layout, deg.layout, k);
    SparseMatrix pushed = low.reduce * deg.scaffold_boundary;
    if (!(pushed * deg.relations).is_zero()) {
      fail(ErrorCode::PreconditionFailed,
           "the scaffold boundary does not descend to the quotient in degree " +
               std::to_string(k));
    }
    deg.boundary = pushed * deg.lift;
    if (!(deg.boundary * deg.reduce == pushed)) {
      fail(ErrorCode::Internal, "induced boundary check failed in degree " + std::to_string(k));
    }
  }
  for (int k = 2; k <= top; ++k) {
    if (!(c.boundary(k - 1) * c.boundary(k)).is_zero()) {
      fail(ErrorCode::Internal, "induced boundary squares to a nonzero map in degree " +
                                    std::to_string(k));
    }
  }
  auto pairs = d.poset().strict_pairs();
  parallel_for(pairs.size(), [&](std::size_t i) {
    auto [s, t] = pairs[i];
    for (int k = 0; k <= top; ++k) {
      if (d.rank(s, k) == 0) continue;
      if (!(c.structure_map(t, k) * d.map(s, t, k) == c.structure_map(s, k))) {
        fail(ErrorCode::Internal, "cocone identity fails for (" + d.stratum(s).id + "," +
                                      d.stratum(t).id + ") in degree " + std::to_string(k));
      }
    }
  });
  return c;
}

// ---------------------------------------------------------------------------
// Universal property

Cocone canonical_cocone(const ColimitComplex& c) {
  Cocone cocone;
  cocone.target = c.chain_complex();
  const auto& d = c.diagram();
  for (std::size_t s = 0; s < d.strata().size(); ++s) {
    auto& maps = cocone.maps[d.stratum(s).id];
    for (int k = 0; k <= c.top_degree(); ++k) maps.push_back(c.structure_map(s, k));
  }
  return cocone;
}

std::vector<SparseMatrix> mediating_map(const ColimitComplex& c, const Cocone& cocone) {
  const StratifiedDiagram& d = c.diagram();
  const ChainComplex& target = cocone.target;
  const Ring ring = c.ring();
  if (target.ring != ring) fail(ErrorCode::RingMismatch, "cocone target over another ring");
  target.check();
  const int top = c.top_degree();
  const std::size_t n = d.strata().size();

  std::vector<std::vector<SparseMatrix>> psi(n);
  for (std::size_t s = 0; s < n; ++s) {
    auto it = cocone.maps.find(d.stratum(s).id);
    if (it == cocone.maps.end()) {
      fail(ErrorCode::UnknownStratum, "cocone has no map for stratum " + d.stratum(s).id);
    }
    for (int k = 0; k <= top; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      SparseMatrix m = kk < it->second.size()
                           ? it->second[kk]
                           : SparseMatrix(ring, target.rank(k), d.rank(s, k));
      if (m.rows() != target.rank(k) || m.cols() != d.rank(s, k) || m.ring() != ring) {
        fail(ErrorCode::DimensionMismatch, "cocone map for " + d.stratum(s).id + " in degree " +
                                               std::to_string(k) + " has the wrong shape");
      }
      psi[s].push_back(std::move(m));
    }
  }
  for (const auto& [id, maps] : cocone.maps) {
    if (!d.poset().find(id)) fail(ErrorCode::UnknownStratum, "cocone names unknown stratum " + id);
  }
  for (std::size_t s = 0; s < n; ++s) {
    for (int k = 1; k <= top; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      if (!(target.boundary(k) * psi[s][kk] == psi[s][kk - 1] * d.boundary(s, k))) {
        fail(ErrorCode::NotAChainMap, "cocone map for " + d.stratum(s).id +
                                          " does not commute with the boundary in degree " +
                                          std::to_string(k));
      }
    }
  }
  for (auto [s, t] : d.poset().strict_pairs()) {
    for (int k = 0; k <= top; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      if (!(psi[t][kk] * d.map(s, t, k) == psi[s][kk])) {
        fail(ErrorCode::IncompatibleCocone, "cocone fails on (" + d.stratum(s).id + "," +
                                                d.stratum(t).id + ") in degree " +
                                                std::to_string(k));
      }
    }
  }
  std::vector<SparseMatrix> out;
  for (int k = 0; k <= top; ++k) {
    const ColimitDegree& deg = c.degree(k);
    std::vector<Entry> entries;
    for (std::size_t s = 0; s < n; ++s) {
      for (const auto& e : psi[s][static_cast<std::size_t>(k)].entries()) {
        entries.push_back({e.row, deg.layout.offsets[s] + e.col, e.value});
      }
    }
    SparseMatrix on_scaffold = SparseMatrix::from_triples(ring, target.rank(k),
                                                          deg.layout.total_rank, std::move(entries));
    out.push_back(on_scaffold * deg.lift);
  }
  for (int k = 0; k <= top; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    for (std::size_t s = 0; s < n; ++s) {
      if (!(out[kk] * c.structure_map(s, k) == psi[s][kk])) {
        fail(ErrorCode::Internal, "mediating map does not factor the cocone");
      }
    }
    if (k >= 1 && !(target.boundary(k) * out[kk] == out[kk - 1] * c.boundary(k))) {
      fail(ErrorCode::Internal, "mediating map is not a chain map");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Push-out

Diagram pushout(const Diagram& left, const Diagram& right, const std::vector<SharedStratum>& shared,
                const std::string& left_prefix, const std::string& right_prefix) {
  if (left.ring != right.ring) fail(ErrorCode::RingMismatch, "diagrams over different rings");
  StratifiedDiagram l = resolve_gluings(left);
  StratifiedDiagram r = resolve_gluings(right);

  std::map<std::string, std::string> right_to_left;
  std::set<std::string> left_used;
  for (const auto& sh : shared) {
    l.index(sh.left);
    r.index(sh.right);
    if (!left_used.insert(sh.left).second || right_to_left.count(sh.right)) {
      fail(ErrorCode::InvalidArgument, "shared stratum listed twice");
    }
    right_to_left[sh.right] = sh.left;
    const Stratum& a = l.stratum(l.index(sh.left));
    const Stratum& b = r.stratum(r.index(sh.right));
    for (int k = 0; k <= std::max(l.top_degree(), r.top_degree()); ++k) {
      if (a.rank(k) != b.rank(k) || !(l.boundary(l.index(sh.left), k) ==
                                      r.boundary(r.index(sh.right), k))) {
        fail(ErrorCode::EmbeddingNotFull, "shared strata " + sh.left + " and " + sh.right +
                                              " carry different complexes");
      }
    }
  }
  for (const auto& a : shared) {
    for (const auto& b : shared) {
      if (a.left == b.left) continue;
      std::size_t la = l.index(a.left), lb = l.index(b.left);
      std::size_t ra = r.index(a.right), rb = r.index(b.right);
      bool in_left = l.poset().leq(la, lb);
      bool in_right = r.poset().leq(ra, rb);
      if (in_left != in_right) {
        fail(ErrorCode::EmbeddingNotFull, "relation " + a.left + " <= " + b.left +
                                              " is not matched on the other side");
      }
      if (!in_left) continue;
      for (int k = 0; k <= std::max(l.top_degree(), r.top_degree()); ++k) {
        if (!(l.map(la, lb, k) == r.map(ra, rb, k))) {
          fail(ErrorCode::EmbeddingNotFull, "gluing " + a.left + " <= " + b.left +
                                                " differs between the two sides in degree " +
                                                std::to_string(k));
        }
      }
    }
  }

  auto left_name = [&](const std::string& id) { return left_prefix + id; };
  auto right_name = [&](const std::string& id) {
    auto it = right_to_left.find(id);
    return it == right_to_left.end() ? right_prefix + id : left_prefix + it->second;
  };
  Diagram out;
  out.ring = left.ring;
  std::set<std::string> names;
  for (const auto& s : left.strata) {
    Stratum copy = s;
    copy.id = left_name(s.id);
    names.insert(copy.id);
    out.strata.push_back(std::move(copy));
  }
  for (const auto& s : right.strata) {
    if (right_to_left.count(s.id)) continue;
    Stratum copy = s;
    copy.id = right_name(s.id);
    if (!names.insert(copy.id).second) {
      fail(ErrorCode::InvalidArgument, "renamed stratum " + copy.id + " collides; choose prefixes");
    }
    out.strata.push_back(std::move(copy));
  }
  std::set<std::pair<std::string, std::string>> glued;
  for (const auto& g : left.gluings) {
    Gluing copy = g;
    copy.from = left_name(g.from);
    copy.to = left_name(g.to);
    glued.insert({copy.from, copy.to});
    out.gluings.push_back(std::move(copy));
  }
  for (const auto& g : right.gluings) {
    Gluing copy = g;
    copy.from = right_name(g.from);
    copy.to = right_name(g.to);
    if (glued.count({copy.from, copy.to})) continue;
    // Both ends shared: the relation already holds on the left side.
    if (right_to_left.count(g.from) && right_to_left.count(g.to)) continue;
    out.gluings.push_back(std::move(copy));
  }
  for (const auto& [a, b] : left.relations) out.relations.emplace_back(left_name(a), left_name(b));
  for (const auto& [a, b] : right.relations) {
    if (right_to_left.count(a) && right_to_left.count(b)) continue;
    out.relations.emplace_back(right_name(a), right_name(b));
  }
  out.canonicalize();
  ValidationReport report = validate(out);
  if (!report.ok()) {
    fail(ErrorCode::ValidationFailed, "glued diagram is invalid: " + report.findings[0].describe());
  }
  return out;
}

}  // namespace stratacode
