// Acceptance suite: one PASS/FAIL line per criterion, with supporting detail
// lines underneath. Criteria listed in kUnattainable still print their real
// verdict but do not change the exit status; see README.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "../support/generators.hpp"
#include "catalog.hpp"
#include "homology.hpp"
#include "logical.hpp"
#include "oracles.hpp"
#include "pipeline.hpp"

#ifndef STRATACODE_CLI
#error "STRATACODE_CLI must name the CLI executable"
#endif

using namespace stratacode;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    pass = pass && ok;
  }
  void info(const std::string& what) { lines.push_back("     " + what); }
};

const std::set<int> kUnattainable = {8};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << std::fixed << s << " s";
  return os.str();
}

ColimitComplex built(const Diagram& d) { return build(resolve_gluings(d)); }

std::string show(const ModuleInvariants& m) {
  std::string s = "free " + std::to_string(m.free_rank) + ", torsion [";
  for (std::size_t i = 0; i < m.factors.size(); ++i) s += (i ? "," : "") + m.factors[i].get_str();
  return s + "]";
}

std::string show(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::vector<CatalogEntry> valid_entries() {
  std::vector<CatalogEntry> out;
  for (auto& e : standard_entries())
    if (!e.annotations.expect_invalid) out.push_back(std::move(e));
  return out;
}

const Json* find_claim(const Json& report, const std::string& kind, int degree) {
  for (const auto& c : report.at("claims"))
    if (c.at("kind") == kind && c.at("degree") == degree) return &c;
  return nullptr;
}

bool flagged(const Json& report, const Json& claim) {
  const std::string text = claim.at("text").get<std::string>();
  for (const auto& d : report.at("discrepancies"))
    if (d.get<std::string>().find(text) != std::string::npos) return true;
  return false;
}

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "'" STRATACODE_CLI "' " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// ---------------------------------------------------------------------------

Outcome criterion_1() {
  Outcome o;
  auto t0 = Clock::now();
  auto r = run_homology(to_document(rp2(Ring::INT)), {});
  const double dt = seconds_since(t0);
  const Json& t = r.report.at("table");
  auto row = [&](int k) { return t.at(static_cast<std::size_t>(k)).at("homology"); };
  o.check(row(2) == Json({{"free", 0}, {"factors", Json::array()}}), "H2 = 0 (" + row(2).dump() + ")");
  o.check(row(1) == Json({{"free", 0}, {"factors", {2}}}), "H1 = Z/2 (" + row(1).dump() + ")");
  o.check(row(0) == Json({{"free", 1}, {"factors", Json::array()}}), "H0 = Z (" + row(0).dump() + ")");
  o.check(dt < 1.0, "time " + fmt_seconds(dt) + " < 1 s");
  return o;
}

Outcome criterion_2() {
  Outcome o;
  auto h = homology_at(built(rp2(Ring::GF2).diagram), 1);
  o.check(h.free_rank == 1 && h.invariant_factors.empty(), "dim H1 over F2 = " + std::to_string(h.free_rank));
  return o;
}

Outcome criterion_3() {
  Outcome o;
  auto c = built(rp2(Ring::INT).diagram);
  auto u = uct_check(c);
  auto h1 = homology_at(c, 1).invariants();
  auto h2co = cohomology_at(c, 2).invariants();
  o.check(h2co.factors == std::vector<Integer>{2}, "H^2 torsion = [2] (" + show(h2co) + ")");
  o.check(h2co.factors == h1.factors, "H^2 torsion equals H_1 torsion (" + show(h1) + ")");
  for (const auto& r : u.rows) {
    o.check(r.consistent, "UCT consistent in degree " + std::to_string(r.degree) + ": observed " +
                              show(r.observed));
  }
  o.check(u.consistent(), "uct_check.consistent");
  return o;
}

Outcome criterion_4() {
  Outcome o;
  auto a = smith_normal_form(SparseMatrix::from_rows(Ring::INT, {{2}})).invariant_factors;
  auto b = smith_normal_form(SparseMatrix::from_rows(Ring::INT, {{1, 1}})).invariant_factors;
  o.check(a == std::vector<Integer>{2}, "SNF [2] -> [2]");
  o.check(b == std::vector<Integer>{1}, "SNF [1 1] -> [1]");
  auto h = homology_at(built(rp2_split().diagram), 1).invariants();
  o.check(h == ModuleInvariants{0, {}}, "split face gives H1 = 0 (" + show(h) + ")");
  return o;
}

Outcome criterion_5() {
  Outcome o;
  for (long L : {2L, 3L}) {
    auto t0 = Clock::now();
    auto entry = fracton_cube(L);
    auto rep = run_example_report(to_document(entry), true).report;
    const double dt = seconds_since(t0);
    const std::string tag = "L=" + std::to_string(L) + ": ";
    const Json& oracle = rep.at("oracle").at("value");
    const Json* h2 = find_claim(rep, "homology", 2);
    const Json* r3 = find_claim(rep, "boundary_rank", 3);
    if (!h2 || !r3) {
      o.check(false, tag + "claims missing from report");
      continue;
    }
    o.check(h2->at("measured").at("free") == oracle.at("homology")[2].at("free"),
            tag + "pipeline dim H2 " + show(h2->at("measured").at("free")) + " = oracle " +
                show(oracle.at("homology")[2].at("free")));
    o.check(r3->at("measured") == oracle.at("boundary_ranks")[3],
            tag + "pipeline rank d3 " + show(r3->at("measured")) + " = oracle " +
                show(oracle.at("boundary_ranks")[3]));
    o.info(tag + "dim H2 claimed " + show(h2->at("claimed").at("free")) + ", measured " +
           show(h2->at("measured").at("free")) + (h2->at("match").get<bool>() ? "" : "  [discrepancy]"));
    o.info(tag + "rank d3 claimed " + show(r3->at("claimed")) + ", measured " + show(r3->at("measured")) +
           (r3->at("match").get<bool>() ? "" : "  [discrepancy]"));
    for (const Json* c : {h2, r3}) {
      if (!c->at("match").get<bool>()) o.check(flagged(rep, *c), tag + "report flags " + show(c->at("text")));
    }
    if (L == 3) o.check(dt < 30.0, tag + "time " + fmt_seconds(dt) + " < 30 s");
  }
  return o;
}

Outcome criterion_6() {
  Outcome o;
  const std::array<std::array<long, 3>, 3> cases = {{{12, 3, 3}, {6, 2, 1}, {4, 1, 1}}};
  for (const auto& [n, a, b] : cases) {
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(a) + "," + std::to_string(b) + "): ";
    auto entry = twisted_torus(n, a, b);
    auto c = built(entry.diagram);
    SparseMatrix d2 = c.boundary(2);
    const std::size_t pipeline = d2.cols() - rank(d2);
    SparseMatrix direct = oracles::direct_twisted_boundary(n, a, b);
    const std::size_t oracle = direct.cols() - oracles::dense_rank_gf2(direct);
    o.check(pipeline == oracle, tag + "pipeline dim ker d2 " + std::to_string(pipeline) + " = oracle " +
                                    std::to_string(oracle));
    for (const auto& cl : entry.annotations.claims) {
      o.info(tag + "claimed " + std::to_string(cl.free_rank) + " / measured " + std::to_string(pipeline) +
             (cl.free_rank == pipeline ? "" : "  [discrepancy]") + " - " + cl.note);
    }
    for (const auto& note : entry.annotations.notes) o.info(tag + note);
  }
  return o;
}

Outcome criterion_7() {
  Outcome o;
  auto entry = dangling_square();
  auto c = built(entry.diagram);
  auto oracle = oracles::exhaustive_homology_gf2(oracles::direct_dangling_square());
  o.check(homology_at(c, 2).free_rank == 0, "H2 = 0, matches claim");
  o.check(homology_at(c, 1).free_rank == 1, "dim H1 = 1, matches claim");
  const std::size_t h0 = homology_at(c, 0).free_rank;
  o.check(h0 == oracle[0], "H0 pipeline " + std::to_string(h0) + " = oracle " + std::to_string(oracle[0]));
  auto rep = run_example_report(to_document(entry), false).report;
  const Json* claim = find_claim(rep, "homology", 0);
  o.check(claim && !claim->at("match").get<bool>() && flagged(rep, *claim),
          "claimed H0 = F2 is flagged: " + (claim ? show(claim->at("text")) : std::string("missing")));
  auto code = css_extract(c, 1);
  auto dz = min_distance(code, LogicalKind::Z);
  o.check(code.n == 3 && code.k_logical == 1, "[[3, 1]]");
  o.check(dz.exact && dz.value == 1, "Z-distance " + std::to_string(dz.value));
  return o;
}

Outcome criterion_8() {
  Outcome o;
  auto t0 = Clock::now();
  auto entry = nontransitive_counterexample();
  bool violation = false;
  try {
    resolve_gluings(entry.diagram);
  } catch (const Error& e) {
    violation = e.code() == ErrorCode::TransitivityViolation;
    o.info(std::string("resolve_gluings: ") + e.what());
  }
  o.check(violation, "resolve_gluings raises TransitivityViolation");
  auto sd = resolve_unchecked(entry.diagram);
  auto comp = boundary_compatibility_check(sd);
  bool degree_one = false;
  for (const auto& f : comp.failures) degree_one = degree_one || f.degree == 1;
  o.check(degree_one, "forced boundary_compatibility_check reports a degree-1 failure (" +
                          std::to_string(comp.failures.size()) + " failures, " +
                          std::to_string(comp.generators_checked) + " generators checked)");
  for (int k = 0; k <= sd.top_degree(); ++k) {
    o.info("N_" + std::to_string(k) + " has " + std::to_string(relation_generators(sd, k).cols()) +
           " generators");
  }
  try {
    build(sd);
    o.info("forced build succeeded");
  } catch (const Error& e) {
    o.info(std::string("forced build: ") + std::string(error_code_name(e.code())) + ": " + e.what());
  }
  const double dt = seconds_since(t0);
  o.check(dt < 1.0, "time " + fmt_seconds(dt) + " < 1 s");
  return o;
}

Outcome criterion_9() {
  Outcome o;
  testing::Rng rng(2024);
  const std::size_t total = 240;
  std::size_t complexes = 0, square_mutations = 0, squares_rejected = 0;
  std::size_t transit_mutations = 0, transits_rejected = 0;
  auto has = [](const ValidationReport& r, ErrorCode code) {
    for (const auto& f : r.findings)
      if (f.code == code) return true;
    return false;
  };
  for (std::size_t t = 0; t < total; ++t) {
    const Ring ring = t % 2 ? Ring::INT : Ring::GF2;
    Diagram d = testing::random_simplicial_diagram(rng, ring, t % 3 == 0 ? 0.2 : 0.0);
    try {
      auto c = built(d);
      bool squares = true;
      for (int k = 1; k <= c.top_degree(); ++k) {
        squares = squares && (c.boundary(k - 1) * c.boundary(k)).is_zero();
      }
      if (squares) ++complexes;
    } catch (const Error&) {
    }
    Diagram a = d;
    if (testing::break_local_square(rng, a)) {
      ++square_mutations;
      auto r = validate(a);
      if (!r.ok() && has(r, ErrorCode::NotAComplex)) ++squares_rejected;
    }
    Diagram b = d;
    if (testing::break_transitivity(rng, b)) {
      ++transit_mutations;
      auto r = validate(b);
      if (!r.ok() && has(r, ErrorCode::TransitivityViolation)) ++transits_rejected;
    }
  }
  o.check(complexes == total, std::to_string(complexes) + "/" + std::to_string(total) +
                                  " random diagrams build with d^2 = 0 in every degree");
  o.check(square_mutations > 0 && squares_rejected == square_mutations,
          std::to_string(squares_rejected) + "/" + std::to_string(square_mutations) +
              " local d^2 mutations rejected");
  o.check(transit_mutations > 0 && transits_rejected == transit_mutations,
          std::to_string(transits_rejected) + "/" + std::to_string(transit_mutations) +
              " transitivity mutations rejected");
  return o;
}

Outcome criterion_10() {
  Outcome o;
  testing::Rng rng(77);
  const std::size_t total = 60;
  std::size_t factors = 0, commutes = 0;
  for (std::size_t t = 0; t < total; ++t) {
    const Ring ring = t % 2 ? Ring::INT : Ring::GF2;
    auto c = built(testing::random_simplicial_diagram(rng, ring, t % 4 == 0 ? 0.2 : 0.0));
    auto f = testing::random_homotopic_identity(rng, c.chain_complex());
    Cocone cocone = testing::cocone_through(c, f);
    auto psi = mediating_map(c, cocone);
    bool through = true, chain = true;
    for (std::size_t s = 0; s < c.diagram().strata().size(); ++s) {
      const auto& maps = cocone.maps.at(c.diagram().stratum(s).id);
      for (int k = 0; k <= c.top_degree(); ++k) {
        const auto ku = static_cast<std::size_t>(k);
        through = through && psi[ku] * c.structure_map(s, k) == maps[ku];
      }
    }
    for (int k = 1; k <= c.top_degree(); ++k) {
      const auto ku = static_cast<std::size_t>(k);
      chain = chain && cocone.target.boundary(k) * psi[ku] == psi[ku - 1] * c.boundary(k);
    }
    factors += through;
    commutes += chain;
  }
  o.check(factors == total, std::to_string(factors) + "/" + std::to_string(total) +
                                " cocones satisfy Psi q_sigma = psi_sigma for every stratum and degree");
  o.check(commutes == total, std::to_string(commutes) + "/" + std::to_string(total) +
                                 " mediating maps commute with the differentials");
  return o;
}

Outcome criterion_11() {
  Outcome o;
  testing::Rng rng(99);
  // Shift invariance on codes with logical qubits.
  std::vector<ChainComplex> pool;
  for (const auto& e : {toric(3), toric(4), dangling_square(), twisted_torus(4, 0, 0), fracton_cube(2)}) {
    pool.push_back(built(e.diagram).chain_complex());
  }
  const std::vector<int> degrees = {1, 1, 1, 1, 2};
  std::size_t shifts = 0, stable = 0;
  for (std::size_t t = 0; t < 100; ++t) {
    const std::size_t i = t % pool.size();
    const auto& c = pool[i];
    const int k = degrees[i];
    auto z = homology_at(c, k).representatives;
    auto x = cohomology_at(c, k).representatives;
    auto base = pairing_matrix(x, z, k).matrix;
    auto eta = testing::random_matrix(rng, Ring::GF2, c.rank(k + 1), z.cols(), 1, 0.3);
    auto gamma = testing::random_matrix(rng, Ring::GF2, c.rank(k - 1), x.cols(), 1, 0.3);
    auto z2 = z + c.boundary(k + 1) * eta;
    auto x2 = x + c.boundary(k).transpose() * gamma;
    ++shifts;
    stable += pairing_matrix(x2, z2, k).matrix == base;
  }
  o.check(stable == shifts, std::to_string(stable) + "/" + std::to_string(shifts) +
                                " boundary/coboundary perturbations leave the pairing unchanged");

  std::size_t checked = 0, invertible = 0;
  for (const auto& e : valid_entries()) {
    auto c = built(e.diagram.with_ring(Ring::GF2));
    for (int k = 0; k <= c.top_degree(); ++k) {
      auto p = pairing_matrix(c, k);
      ++checked;
      invertible += inverse_gf2(p.matrix).has_value();
    }
  }
  o.check(invertible == checked, std::to_string(invertible) + "/" + std::to_string(checked) +
                                     " pairing matrices (every valid entry, every degree) invertible over F2");

  for (long n : {3L, 4L}) {
    auto dual = dualize_bases(pairing_matrix(css_extract(built(toric(n).diagram), 1)));
    o.check(dual.matrix == SparseMatrix::identity(Ring::GF2, 2),
            "dualized toric(" + std::to_string(n) + ") bases pair to the identity");
  }

  std::size_t pairs = 0, agree = 0;
  std::vector<CatalogEntry> small = valid_entries();
  small.push_back(toric(2));
  small.push_back(grid_patch(1));
  for (const auto& e : small) {
    auto c = built(e.diagram.with_ring(Ring::GF2));
    for (int k = 0; k <= c.top_degree(); ++k) {
      auto code = css_extract(c, k);
      if (code.n > 12) continue;
      auto d = code.k_logical ? dualize_bases(pairing_matrix(code)) : pairing_matrix(code);
      for (std::size_t i = 0; i < d.cocycles.cols(); ++i) {
        for (std::size_t j = 0; j < d.cycles.cols(); ++j) {
          Vector a = d.cocycles.column(i), b = d.cycles.column(j);
          ++pairs;
          agree += commutation_sign(a, b) == oracles::pauli_commutation_oracle(a, b);
        }
      }
      for (int r = 0; r < 20 && code.n > 0; ++r) {
        Vector a(code.n), b(code.n);
        for (auto& v : a) v = testing::uniform(rng, 0, 1);
        for (auto& v : b) v = testing::uniform(rng, 0, 1);
        ++pairs;
        agree += commutation_sign(a, b) == oracles::pauli_commutation_oracle(a, b);
      }
    }
  }
  o.check(pairs > 0 && agree == pairs, std::to_string(agree) + "/" + std::to_string(pairs) +
                                           " commutation signs on codes with n <= 12 match the Pauli oracle");
  return o;
}

Outcome criterion_12() {
  Outcome o;
  testing::Rng rng(123);
  std::size_t identity = 0, unimodular = 0, divisibility = 0;
  const std::size_t total = 500;
  for (std::size_t t = 0; t < total; ++t) {
    const auto r = static_cast<std::size_t>(testing::uniform(rng, 1, 8));
    const auto c = static_cast<std::size_t>(testing::uniform(rng, 1, 8));
    auto a = testing::random_matrix(rng, Ring::INT, r, c, 9, 0.6);
    auto snf = smith_normal_form(a);
    identity += snf.u * a * snf.v == snf.s;
    unimodular += abs(testing::determinant(snf.u)) == 1 && abs(testing::determinant(snf.v)) == 1;
    bool div = true;
    const auto& f = snf.invariant_factors;
    for (std::size_t i = 0; i < f.size(); ++i) {
      div = div && f[i] > 0 && snf.s.at(i, i) == f[i];
      if (i + 1 < f.size()) div = div && f[i + 1] % f[i] == 0;
    }
    div = div && snf.s.nnz() == f.size();
    divisibility += div;
  }
  o.check(identity == total, std::to_string(identity) + "/500 satisfy u a v = s");
  o.check(unimodular == total, std::to_string(unimodular) + "/500 have unimodular u and v");
  o.check(divisibility == total, std::to_string(divisibility) + "/500 have a diagonal divisibility chain");

  std::size_t naive_total = 0, naive_agree = 0;
  for (std::size_t r = 1; r <= oracles::kNaiveSnfLimit; ++r) {
    for (std::size_t c = 1; c <= oracles::kNaiveSnfLimit; ++c) {
      for (int t = 0; t < 40; ++t) {
        auto a = testing::random_matrix(rng, Ring::INT, r, c, 12, 0.5 + 0.1 * (t % 5));
        ++naive_total;
        naive_agree += oracles::naive_snf(a) == smith_normal_form(a).invariant_factors;
      }
    }
  }
  o.check(naive_agree == naive_total, std::to_string(naive_agree) + "/" + std::to_string(naive_total) +
                                          " matrices up to 6x6 agree with naive_snf");

  std::size_t ident_total = 0, ident_ok = 0;
  for (Ring ring : {Ring::GF2, Ring::INT}) {
    for (int t = 0; t < 150; ++t) {
      const auto r = static_cast<std::size_t>(testing::uniform(rng, 1, 10));
      const auto c = static_cast<std::size_t>(testing::uniform(rng, 1, 10));
      auto m = testing::random_matrix(rng, ring, r, c, 4, 0.4);
      const std::size_t rk = rank(m);
      auto k = kernel_basis(m);
      auto im = image_basis(m);
      bool ok = k.cols() + rk == c && (m * k).is_zero() && rank(k) == k.cols() && im.cols() == rk &&
                rank(im) == rk && rank(m.transpose()) == rk;
      for (std::size_t j = 0; ok && j < im.cols(); ++j) ok = in_span(m, im.column(j)).has_value();
      ++ident_total;
      ident_ok += ok;
    }
  }
  o.check(ident_ok == ident_total, std::to_string(ident_ok) + "/" + std::to_string(ident_total) +
                                       " rank-nullity, kernel and image identities hold");
  return o;
}

Outcome criterion_13() {
  Outcome o;
  std::size_t codes = 0, commuting = 0, params = 0;
  for (const auto& e : valid_entries()) {
    auto c = built(e.diagram.with_ring(Ring::GF2));
    for (int k = 0; k <= c.top_degree(); ++k) {
      auto code = css_extract(c, k);
      ++codes;
      commuting += (code.hx * code.hz.transpose()).is_zero();
      params += code.n == c.quotient_rank(k) && code.k_logical == homology_at(c, k).free_rank;
    }
  }
  o.check(commuting == codes, std::to_string(commuting) + "/" + std::to_string(codes) +
                                  " codes (every valid entry, every degree) have hx hz^T = 0");
  o.check(params == codes, std::to_string(params) + "/" + std::to_string(codes) +
                               " codes have [[n, k]] = (quotient rank, homology dim)");
  return o;
}

Outcome criterion_14() {
  Outcome o;
  std::size_t docs = 0, round = 0;
  for (const auto& e : standard_entries()) {
    DiagramDocument doc = to_document(e);
    const std::string text = serialize(doc);
    DiagramDocument back = parse_document(text);
    ++docs;
    round += back == doc && serialize(back) == text;
  }
  o.check(round == docs, std::to_string(round) + "/" + std::to_string(docs) + " catalog documents round-trip");

  const fs::path dir = fs::temp_directory_path() / ("stratacode_acceptance_" + std::to_string(getpid()));
  fs::create_directories(dir);
  auto at = [&](const std::string& name) { return "'" + (dir / name).string() + "'"; };

  std::size_t cli_docs = 0, cli_round = 0;
  for (const auto& name : example_names()) {
    CliRun r = run_cli("example " + name);
    ++cli_docs;
    try {
      cli_round += r.exit_code == 0 && serialize(parse_document(r.out)) == r.out;
    } catch (const Error&) {
    }
    std::ofstream(dir / (name + ".json")) << r.out;
  }
  o.check(cli_round == cli_docs, std::to_string(cli_round) + "/" + std::to_string(cli_docs) +
                                     " CLI example documents are byte-identical after parse and serialize");

  const std::vector<std::string> commands = {
      "validate " + at("rp2.json") + " --json",
      "validate " + at("nontransitive.json") + " --json --force",
      "homology " + at("rp2.json") + " --json",
      "homology " + at("torus.json") + " --json",
      "code " + at("toric.json") + " --json",
      "code " + at("dangling.json") + " --json",
      "example fracton --L 2 --oracle --json",
      "surgery " + at("segment.json") + " " + at("segment.json") + " --share v=v --json"};
  std::size_t stable = 0;
  for (const auto& cmd : commands) {
    CliRun a = run_cli(cmd);
    CliRun b = run_cli(cmd, "STRATACODE_THREADS=1");
    CliRun c = run_cli(cmd, "STRATACODE_THREADS=4");
    const bool same = !a.out.empty() && a.out == b.out && a.out == c.out && a.exit_code == b.exit_code &&
                      a.exit_code == c.exit_code;
    stable += same;
    if (!same) o.info("unstable: " + cmd);
  }
  o.check(stable == commands.size(), std::to_string(stable) + "/" + std::to_string(commands.size()) +
                                         " --json reports byte-identical across runs and thread counts");

  {
    std::ifstream in(dir / "rp2.json");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::ofstream(dir / "truncated.json") << text.substr(0, text.size() / 2);
  }
  struct Expect {
    std::string args;
    int code;
  };
  const std::vector<Expect> exits = {{"validate " + at("rp2.json"), 0},
                                     {"validate " + at("nontransitive.json"), 1},
                                     {"validate " + at("truncated.json"), 2},
                                     {"validate " + at("missing.json"), 2},
                                     {"homology " + at("rp2.json"), 0},
                                     {"code " + at("rp2.json"), 1},
                                     {"example klein", 1},
                                     {"homology", 2}};
  for (const auto& e : exits) {
    CliRun r = run_cli(e.args);
    o.check(r.exit_code == e.code, "exit " + std::to_string(r.exit_code) + " (expected " +
                                       std::to_string(e.code) + "): stratacode " + e.args);
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"RP2 over Z: H2 = 0, H1 = Z/2, H0 = Z", criterion_1},
      {"RP2 over F2: dim H1 = 1", criterion_2},
      {"UCT on RP2 over Z", criterion_3},
      {"SNF contrast [2] vs [1 1]", criterion_4},
      {"fracton family L = 2, 3 against oracle", criterion_5},
      {"twisted torus kernels against oracle", criterion_6},
      {"dangling square", criterion_7},
      {"counterexample gate", criterion_8},
      {"chain-complex property suite", criterion_9},
      {"universal property of the colimit", criterion_10},
      {"pairing suite", criterion_11},
      {"exact-algebra suite", criterion_12},
      {"CSS validity", criterion_13},
      {"CLI contract", criterion_14},
  };
  int blocking = 0, failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double dt = seconds_since(t0);
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << fmt_seconds(dt) << ")\n";
    for (const auto& line : o.lines) std::cout << "    " << line << "\n";
    if (!o.pass) {
      ++failed;
      if (kUnattainable.count(id)) {
        std::cout << "    (known unattainable; does not affect the exit status)\n";
      } else {
        ++blocking;
      }
    }
  }
  std::cout << "summary: " << criteria.size() - static_cast<std::size_t>(failed) << " of " << criteria.size()
            << " criteria pass\n";
  return blocking == 0 ? 0 : 1;
}
