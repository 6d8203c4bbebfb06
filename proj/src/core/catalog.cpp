#include "catalog.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace stratacode {

std::string_view claim_kind_name(ClaimKind kind) {
  switch (kind) {
    case ClaimKind::Homology: return "homology";
    case ClaimKind::BoundaryRank: return "boundary_rank";
    case ClaimKind::KernelDim: return "kernel_dim";
  }
  return "homology";
}

std::optional<ClaimKind> parse_claim_kind(std::string_view name) {
  if (name == "homology") return ClaimKind::Homology;
  if (name == "boundary_rank") return ClaimKind::BoundaryRank;
  if (name == "kernel_dim") return ClaimKind::KernelDim;
  return std::nullopt;
}

namespace {

std::string cell_name(const char* prefix, std::initializer_list<long> idx) {
  std::string s = prefix;
  s += '(';
  bool first = true;
  for (long i : idx) {
    if (!first) s += ',';
    s += std::to_string(i);
    first = false;
  }
  s += ')';
  return s;
}

long wrap(long x, long n) { return ((x % n) + n) % n; }

Claim homology_claim(int degree, std::size_t free_rank, std::vector<Integer> factors = {},
                     std::string note = {}) {
  return {ClaimKind::Homology, degree, free_rank, std::move(factors), std::move(note)};
}

void require(bool ok, const std::string& message) {
  if (!ok) fail(ErrorCode::InvalidArgument, message);
}

}  // namespace

Diagram cells_to_diagram(Ring ring, const std::vector<Cell>& cells,
                         const std::set<std::pair<std::string, std::string>>& dropped) {
  std::unordered_map<std::string, const Cell*> by_id;
  for (const auto& c : cells) {
    if (!by_id.emplace(c.id, &c).second) fail(ErrorCode::InvalidArgument, "duplicate cell " + c.id);
  }
  for (const auto& c : cells) {
    for (const auto& [face, coeff] : c.boundary) {
      auto it = by_id.find(face);
      if (it == by_id.end()) fail(ErrorCode::InvalidArgument, c.id + " lists unknown face " + face);
      if (it->second->dim != c.dim - 1) {
        fail(ErrorCode::InvalidArgument, c.id + " lists a face of the wrong dimension");
      }
    }
  }
  // Closure basis per degree, each sorted by id.
  struct Local {
    std::map<int, std::vector<std::string>> basis;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::unordered_map<std::string, Local> locals;
  auto local_of = [&](const Cell& top) -> const Local& {
    auto found = locals.find(top.id);
    if (found != locals.end()) return found->second;
    std::set<std::string> seen{top.id};
    std::vector<const Cell*> stack{&top};
    while (!stack.empty()) {
      const Cell* c = stack.back();
      stack.pop_back();
      for (const auto& [face, coeff] : c->boundary) {
        if (seen.insert(face).second) stack.push_back(by_id.at(face));
      }
    }
    Local local;
    for (const auto& id : seen) local.basis[by_id.at(id)->dim].push_back(id);
    for (const auto& [k, ids] : local.basis) {
      for (std::size_t i = 0; i < ids.size(); ++i) local.index[ids[i]] = i;
    }
    return locals.emplace(top.id, std::move(local)).first->second;
  };

  Diagram d;
  d.ring = ring;
  for (const auto& c : cells) {
    const Local& local = local_of(c);
    Stratum s;
    s.id = c.id;
    s.dim = c.dim;
    for (const auto& [k, ids] : local.basis) s.modules[k] = ids.size();
    for (const auto& [k, ids] : local.basis) {
      if (k == 0 || !local.basis.count(k - 1)) continue;
      std::vector<Entry> entries;
      for (std::size_t col = 0; col < ids.size(); ++col) {
        for (const auto& [face, coeff] : by_id.at(ids[col])->boundary) {
          entries.push_back({local.index.at(face), col, Integer(coeff)});
        }
      }
      s.boundaries[k] = SparseMatrix::from_triples(ring, local.basis.at(k - 1).size(), ids.size(),
                                                   std::move(entries));
    }
    d.strata.push_back(std::move(s));
  }
  for (const auto& c : cells) {
    const Local& upper = local_of(c);
    std::set<std::string> faces;
    for (const auto& [face, coeff] : c.boundary) faces.insert(face);
    for (const auto& face : faces) {
      if (dropped.count({face, c.id})) continue;
      const Local& lower = local_of(*by_id.at(face));
      Gluing g;
      g.from = face;
      g.to = c.id;
      for (const auto& [k, ids] : lower.basis) {
        std::vector<Entry> entries;
        for (std::size_t col = 0; col < ids.size(); ++col) {
          entries.push_back({upper.index.at(ids[col]), col, Integer(1)});
        }
        g.maps[k] = SparseMatrix::from_triples(ring, upper.basis.at(k).size(), ids.size(),
                                               std::move(entries));
      }
      d.gluings.push_back(std::move(g));
    }
  }
  d.canonicalize();
  return d;
}

CatalogEntry rp2(Ring ring) {
  CatalogEntry e;
  std::vector<Cell> cells = {
      {"sigma0", 0, {}},
      {"sigma1", 1, {{"sigma0", 1}, {"sigma0", -1}}},
      {"sigma2", 2, {{"sigma1", 2}}},
  };
  e.diagram = cells_to_diagram(ring, cells);
  e.annotations.name = "rp2";
  e.annotations.default_qubit_degree = 1;
  e.annotations.params["gf2"] = ring == Ring::GF2 ? 1 : 0;
  if (ring == Ring::INT) {
    e.annotations.claims = {homology_claim(2, 0), homology_claim(1, 0, {Integer(2)}),
                            homology_claim(0, 1)};
  } else {
    e.annotations.claims = {homology_claim(1, 1, {}, "the face boundary 2 vanishes mod 2")};
  }
  return e;
}

CatalogEntry rp2_split() {
  CatalogEntry e;
  std::vector<Cell> cells = {
      {"sigma0", 0, {}},
      {"sigma1", 1, {{"sigma0", 1}, {"sigma0", -1}}},
      {"sigma2a", 2, {{"sigma1", 1}}},
      {"sigma2b", 2, {{"sigma1", 1}}},
  };
  e.diagram = cells_to_diagram(Ring::INT, cells);
  e.annotations.name = "rp2-split";
  e.annotations.default_qubit_degree = 1;
  e.annotations.claims = {homology_claim(1, 0, {}, "d_2 = [1 1] has Smith form diag(1)")};
  e.annotations.notes = {
      "the doubled cell is a face, so d_2 is 1x2; doubling the edge would give a 2x1 "
      "matrix and H1 = Z"};
  return e;
}

bool twisted_torus_is_complex(long n, long a, long b) {
  // d_1 d_2 of one face; translation invariance makes face (0,0) enough.
  std::map<std::pair<long, long>, int> count;
  auto add_h = [&](long i, long j) {
    count[{wrap(i, n), wrap(j, n)}] ^= 1;
    count[{wrap(i + 1, n), wrap(j, n)}] ^= 1;
  };
  auto add_v = [&](long i, long j) {
    count[{wrap(i, n), wrap(j, n)}] ^= 1;
    count[{wrap(i, n), wrap(j + 1, n)}] ^= 1;
  };
  add_h(0, 0);
  add_h(a, b);
  add_v(0, 0);
  add_v(b, -a);
  return std::all_of(count.begin(), count.end(), [](const auto& kv) { return kv.second == 0; });
}

CatalogEntry twisted_torus(long n, long a, long b) {
  require(n >= 2, "torus size n must be at least 2");
  require(a >= 0 && a < n && b >= 0 && b < n, "twists must satisfy 0 <= a, b < n");
  const bool full = twisted_torus_is_complex(n, a, b);
  std::vector<Cell> cells;
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      cells.push_back({cell_name("f", {i, j}),
                       2,
                       {{cell_name("eh", {i, j}), 1},
                        {cell_name("eh", {wrap(i + a, n), wrap(j + b, n)}), 1},
                        {cell_name("ev", {i, j}), 1},
                        {cell_name("ev", {wrap(i + b, n), wrap(j - a, n)}), 1}}});
      Cell eh{cell_name("eh", {i, j}), 1, {}};
      Cell ev{cell_name("ev", {i, j}), 1, {}};
      if (full) {
        eh.boundary = {{cell_name("v", {i, j}), 1}, {cell_name("v", {wrap(i + 1, n), j}), 1}};
        ev.boundary = {{cell_name("v", {i, j}), 1}, {cell_name("v", {i, wrap(j + 1, n)}), 1}};
        cells.push_back({cell_name("v", {i, j}), 0, {}});
      }
      cells.push_back(std::move(eh));
      cells.push_back(std::move(ev));
    }
  }
  CatalogEntry e;
  e.diagram = cells_to_diagram(Ring::GF2, cells);
  auto& an = e.annotations;
  an.name = "torus";
  an.params = {{"n", n}, {"a", a}, {"b", b}};
  an.default_qubit_degree = 1;
  const long d = std::gcd(std::gcd(a, b), n);
  an.notes.push_back("gcd(a,b,n) = " + std::to_string(d));
  an.claims.push_back({ClaimKind::KernelDim, 2, static_cast<std::size_t>(2 * d), {},
                       "claimed dim H1 = 2 gcd(a,b,n), read as dim ker d_2"});
  if (n == 6 && a == 2 && b == 1) {
    an.claims.push_back({ClaimKind::KernelDim, 2, 8, {},
                         "second claimed value for this twist; it also asserts gcd(6,2,1) = 4, "
                         "which is false, so the two claims disagree"});
  }
  if (!full) {
    an.notes.push_back("d_1 d_2 != 0 for this twist: demoted to the two-term complex "
                       "in degrees 2 and 1 (no vertex strata)");
  }
  return e;
}

CatalogEntry toric(long n) {
  require(n >= 2, "toric size n must be at least 2");
  CatalogEntry e = twisted_torus(n, 0, 1);
  e.annotations.name = "toric";
  e.annotations.params = {{"n", n}};
  e.annotations.claims = {homology_claim(1, 2, {}, "two logical qubits")};
  return e;
}

CatalogEntry fracton_cube(long L, bool delete_top_faces) {
  require(L >= 2, "fracton size L must be at least 2");
  std::vector<Cell> cells;
  std::set<std::pair<std::string, std::string>> dropped;
  auto v = [](long i, long j, long k) { return cell_name("v", {i, j, k}); };
  for (long i = 0; i <= L; ++i) {
    for (long j = 0; j <= L; ++j) {
      for (long k = 0; k <= L; ++k) {
        cells.push_back({v(i, j, k), 0, {}});
        if (i < L) cells.push_back({cell_name("ex", {i, j, k}), 1, {{v(i, j, k), 1}, {v(i + 1, j, k), 1}}});
        if (j < L) cells.push_back({cell_name("ey", {i, j, k}), 1, {{v(i, j, k), 1}, {v(i, j + 1, k), 1}}});
        if (k < L) cells.push_back({cell_name("ez", {i, j, k}), 1, {{v(i, j, k), 1}, {v(i, j, k + 1), 1}}});
        if (j < L && k < L) {
          cells.push_back({cell_name("fx", {i, j, k}),
                           2,
                           {{cell_name("ey", {i, j, k}), 1},
                            {cell_name("ey", {i, j, k + 1}), 1},
                            {cell_name("ez", {i, j, k}), 1},
                            {cell_name("ez", {i, j + 1, k}), 1}}});
        }
        if (i < L && k < L) {
          cells.push_back({cell_name("fy", {i, j, k}),
                           2,
                           {{cell_name("ex", {i, j, k}), 1},
                            {cell_name("ex", {i, j, k + 1}), 1},
                            {cell_name("ez", {i, j, k}), 1},
                            {cell_name("ez", {i + 1, j, k}), 1}}});
        }
        if (i < L && j < L) {
          cells.push_back({cell_name("fz", {i, j, k}),
                           2,
                           {{cell_name("ex", {i, j, k}), 1},
                            {cell_name("ex", {i, j + 1, k}), 1},
                            {cell_name("ey", {i, j, k}), 1},
                            {cell_name("ey", {i + 1, j, k}), 1}}});
        }
        if (i < L && j < L && k < L) {
          std::string c = cell_name("c", {i, j, k});
          cells.push_back({c,
                           3,
                           {{cell_name("fx", {i, j, k}), 1},
                            {cell_name("fx", {i + 1, j, k}), 1},
                            {cell_name("fy", {i, j, k}), 1},
                            {cell_name("fy", {i, j + 1, k}), 1},
                            {cell_name("fz", {i, j, k}), 1},
                            {cell_name("fz", {i, j, k + 1}), 1}}});
          // The cube above no longer shares the top face of the cube below.
          if (delete_top_faces && k >= 1) dropped.insert({cell_name("fz", {i, j, k}), c});
        }
      }
    }
  }
  CatalogEntry e;
  e.diagram = cells_to_diagram(Ring::GF2, cells, dropped);
  auto& an = e.annotations;
  an.name = "fracton";
  an.params = {{"L", L}, {"delete", delete_top_faces ? 1 : 0}};
  an.default_qubit_degree = 2;
  if (delete_top_faces) {
    const auto l = static_cast<std::size_t>(L);
    an.claims = {homology_claim(1, 0), homology_claim(2, l * l), homology_claim(3, 0),
                 {ClaimKind::BoundaryRank, 3, l * l * l - l * l, {}, "claimed rank L^3 - L^2"}};
    an.notes.push_back("open boundaries; each cube above the bottom layer keeps a private "
                       "bottom face that is not glued to the shared face below");
  } else {
    an.notes.push_back("control: every face attachment kept");
  }
  return e;
}

CatalogEntry dangling_square() {
  std::vector<Cell> cells = {
      {"v", 0, {}},
      {"e1", 1, {{"v", 1}}},
      {"e2", 1, {{"v", 1}}},
      {"e3", 1, {}},
      {"f", 2, {{"e1", 1}, {"e2", 1}}},
  };
  CatalogEntry e;
  e.diagram = cells_to_diagram(Ring::GF2, cells);
  auto& an = e.annotations;
  an.name = "dangling";
  an.default_qubit_degree = 1;
  an.claims = {homology_claim(2, 0), homology_claim(1, 1, {}, "generated by the dangling edge"),
               homology_claim(0, 1, {}, "claimed F2, but d_1 = (1 1 0) is onto, forcing H0 = 0")};
  return e;
}

CatalogEntry nontransitive_counterexample(bool repaired) {
  const Ring ring = Ring::INT;
  auto one = [&](long v) { return SparseMatrix::from_rows(ring, {{v}}); };
  Diagram d;
  d.ring = ring;
  d.strata.push_back({"rho0", 0, {{0, 1}}, {}});
  d.strata.push_back({"sigma0", 0, {{0, 1}}, {}});
  d.strata.push_back({"tau1", 1, {{0, 1}, {1, 1}}, {{1, one(0)}}});
  d.gluings.push_back({"rho0", "tau1", {{0, one(1)}}});
  d.gluings.push_back({"sigma0", "rho0", {{0, one(1)}}});
  d.gluings.push_back({"sigma0", "tau1", {{0, one(repaired ? 1 : -1)}}});
  d.canonicalize();
  CatalogEntry e;
  e.diagram = std::move(d);
  auto& an = e.annotations;
  an.name = "nontransitive";
  an.params = {{"repaired", repaired ? 1 : 0}};
  an.default_qubit_degree = 0;
  an.expect_invalid = !repaired;
  if (!repaired) {
    an.notes.push_back("the supplied map sigma0 -> tau1 is -1 while the composite through rho0 "
                       "is +1");
  }
  return e;
}

CatalogEntry segment(Ring ring) {
  Diagram d;
  d.ring = ring;
  d.strata.push_back({"e", 1, {{0, 2}, {1, 1}}, {{1, SparseMatrix::from_rows(ring, {{-1}, {1}})}}});
  d.strata.push_back({"v", 0, {{0, 1}}, {}});
  d.gluings.push_back({"v", "e", {{0, SparseMatrix::from_rows(ring, {{1}, {0}})}}});
  CatalogEntry e;
  e.diagram = std::move(d);
  e.annotations.name = "segment";
  e.annotations.default_qubit_degree = 0;
  e.annotations.params["gf2"] = ring == Ring::GF2 ? 1 : 0;
  return e;
}

CatalogEntry grid_patch(long m, Ring ring) {
  require(m >= 1, "grid size must be at least 1");
  std::vector<Cell> cells;
  for (long i = 0; i <= m; ++i) {
    for (long j = 0; j <= m; ++j) {
      cells.push_back({cell_name("v", {i, j}), 0, {}});
      if (i < m) {
        cells.push_back({cell_name("eh", {i, j}), 1,
                         {{cell_name("v", {i, j}), -1}, {cell_name("v", {i + 1, j}), 1}}});
      }
      if (j < m) {
        cells.push_back({cell_name("ev", {i, j}), 1,
                         {{cell_name("v", {i, j}), -1}, {cell_name("v", {i, j + 1}), 1}}});
      }
      if (i < m && j < m) {
        cells.push_back({cell_name("f", {i, j}),
                         2,
                         {{cell_name("eh", {i, j}), 1},
                          {cell_name("ev", {i + 1, j}), 1},
                          {cell_name("eh", {i, j + 1}), -1},
                          {cell_name("ev", {i, j}), -1}}});
      }
    }
  }
  CatalogEntry e;
  e.diagram = cells_to_diagram(ring, cells);
  e.annotations.name = "grid";
  e.annotations.params = {{"m", m}, {"gf2", ring == Ring::GF2 ? 1 : 0}};
  e.annotations.default_qubit_degree = 1;
  return e;
}

std::vector<std::string> example_names() {
  return {"dangling", "fracton", "grid", "nontransitive", "rp2", "rp2-split", "segment",
          "toric",    "torus"};
}

CatalogEntry make_example(const std::string& name, const std::map<std::string, long>& params) {
  auto get = [&](const std::string& key, long fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : params) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; })) {
        fail(ErrorCode::InvalidArgument, "example " + name + " takes no parameter '" + k + "'");
      }
    }
  };
  auto ring = [&] { return get("gf2", 0) ? Ring::GF2 : Ring::INT; };
  if (name == "rp2") {
    allow({"gf2"});
    return rp2(ring());
  }
  if (name == "rp2-split") {
    allow({});
    return rp2_split();
  }
  if (name == "torus") {
    allow({"n", "a", "b"});
    return twisted_torus(get("n", 4), get("a", 1), get("b", 1));
  }
  if (name == "toric") {
    allow({"n"});
    return toric(get("n", 4));
  }
  if (name == "fracton") {
    allow({"L", "delete"});
    return fracton_cube(get("L", 2), get("delete", 1) != 0);
  }
  if (name == "dangling") {
    allow({});
    return dangling_square();
  }
  if (name == "nontransitive") {
    allow({"repaired"});
    return nontransitive_counterexample(get("repaired", 0) != 0);
  }
  if (name == "segment") {
    allow({"gf2"});
    return segment(get("gf2", 1) ? Ring::GF2 : Ring::INT);
  }
  if (name == "grid") {
    allow({"m", "gf2"});
    return grid_patch(get("m", 2), get("gf2", 1) ? Ring::GF2 : Ring::INT);
  }
  fail(ErrorCode::UnknownExample, "unknown example '" + name + "'");
}

std::vector<CatalogEntry> standard_entries() {
  return {rp2(Ring::INT),
          rp2(Ring::GF2),
          rp2_split(),
          toric(3),
          toric(4),
          twisted_torus(4, 1, 1),
          twisted_torus(6, 2, 1),
          twisted_torus(12, 3, 3),
          twisted_torus(4, 0, 0),
          fracton_cube(2),
          fracton_cube(2, false),
          fracton_cube(3),
          dangling_square(),
          nontransitive_counterexample(false),
          nontransitive_counterexample(true),
          segment(Ring::GF2),
          segment(Ring::INT),
          grid_patch(2, Ring::GF2)};
}

}  // namespace stratacode
