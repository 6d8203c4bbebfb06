#include "pipeline.hpp"

#include <algorithm>

#include "homology.hpp"
#include "logical.hpp"
#include "oracles.hpp"

namespace stratacode {

namespace {

Json factors_json(const std::vector<Integer>& factors) {
  Json out = Json::array();
  for (const auto& f : factors) out.push_back(integer_to_json(f));
  return out;
}

Json invariants_json(const ModuleInvariants& m) {
  return {{"free", m.free_rank}, {"factors", factors_json(m.factors)}};
}

Json finding_json(const Finding& f) {
  Json j = {{"code", std::string(error_code_name(f.code))},
            {"message", f.message},
            {"text", f.describe()}};
  if (!f.stratum.empty()) j["stratum"] = f.stratum;
  if (!f.from.empty()) j["from"] = f.from;
  if (!f.to.empty()) j["to"] = f.to;
  if (f.degree) j["degree"] = *f.degree;
  return j;
}

Json compatibility_json(const CompatibilityReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"degree", f.degree},
                        {"generator", f.generator},
                        {"from", f.from},
                        {"to", f.to},
                        {"message", f.message}});
  }
  return {{"ok", r.ok()}, {"generators_checked", r.generators_checked}, {"failures", failures}};
}

Json build_attempt(const StratifiedDiagram& sd) {
  try {
    ColimitComplex c = build(sd);
    Json ranks = Json::array();
    for (int k = 0; k <= c.top_degree(); ++k) ranks.push_back(c.quotient_rank(k));
    return {{"ok", true}, {"quotient_ranks", ranks}};
  } catch (const Error& e) {
    return {{"ok", false}, {"error", std::string(error_code_name(e.code()))}, {"message", e.what()}};
  }
}

Json supports(const SparseMatrix& m) {
  std::vector<std::vector<std::size_t>> cols(m.cols());
  for (const auto& e : m.entries()) cols[e.col].push_back(e.row);
  Json out = Json::array();
  for (auto& c : cols) {
    std::sort(c.begin(), c.end());
    out.push_back(c);
  }
  return out;
}

Json dense_json(const SparseMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_to_json(m.at(r, c)));
    out.push_back(row);
  }
  return out;
}

Json distance_json(const DistanceResult& d) {
  if (!d.has_logicals) return nullptr;
  return {{"value", d.value}, {"exact", d.exact}, {"classes_enumerated", d.cosets_enumerated}};
}

Json zero_row(int degree) {
  Json zero = {{"free", 0}, {"factors", Json::array()}};
  return {{"degree", degree}, {"chain_rank", 0}, {"homology", zero}, {"cohomology", zero}};
}

Json uct_json(const UctReport& u, std::optional<int> only) {
  Json rows = Json::array();
  for (const auto& r : u.rows) {
    if (only && r.degree != *only) continue;
    rows.push_back({{"degree", r.degree},
                    {"hom_free", r.hom_free_rank},
                    {"ext_factors", factors_json(r.ext_factors)},
                    {"observed", invariants_json(r.observed)},
                    {"consistent", r.consistent}});
  }
  return {{"consistent", u.consistent()}, {"rows", rows}};
}

Json claim_value(const Claim& c) {
  if (c.kind == ClaimKind::Homology) {
    return {{"free", c.free_rank}, {"factors", factors_json(c.factors)}};
  }
  return c.free_rank;
}

Json measured_value(const Claim& c, const ColimitComplex& x) {
  if (c.kind == ClaimKind::Homology) {
    if (c.degree < 0 || c.degree > x.top_degree()) return invariants_json({});
    return invariants_json(homology_at(x, c.degree).invariants());
  }
  if (c.degree < 1 || c.degree > x.top_degree()) return 0;
  SparseMatrix d = x.boundary(c.degree);
  std::size_t r = rank(d);
  return c.kind == ClaimKind::BoundaryRank ? r : d.cols() - r;
}

Json oracle_value(const Claim& c, const Json& oracle) {
  const Json& ranks = oracle.at("boundary_ranks");
  const Json& dims = oracle.at("chain_ranks");
  const auto k = static_cast<std::size_t>(c.degree);
  if (c.kind == ClaimKind::Homology) {
    for (const auto& row : oracle.at("homology")) {
      if (row.at("degree") == c.degree) return {{"free", row.at("free")}, {"factors", row.at("factors")}};
    }
    return {{"free", 0}, {"factors", Json::array()}};
  }
  if (c.degree < 1 || k >= ranks.size()) return 0;
  if (c.kind == ClaimKind::BoundaryRank) return ranks[k];
  return dims[k].get<std::size_t>() - ranks[k].get<std::size_t>();
}

std::string render_value(const Json& v) {
  if (v.is_object()) {
    std::string s = std::to_string(v.at("free").get<std::size_t>());
    for (const auto& f : v.at("factors")) s += " + Z/" + (f.is_string() ? f.get<std::string>() : f.dump());
    return s;
  }
  return v.dump();
}

bool oracle_matches_table(const Json& table, const Json& oracle) {
  const Json& rows = oracle.at("homology");
  if (rows.size() != table.size()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].at("free") != table[i].at("homology").at("free")) return false;
    if (rows[i].at("factors") != table[i].at("homology").at("factors")) return false;
    if (oracle.at("chain_ranks")[i] != table[i].at("chain_rank")) return false;
  }
  return true;
}

ColimitComplex build_valid(const Diagram& d) { return build(resolve_gluings(d)); }

}  // namespace

Json diagram_summary(const Diagram& d) {
  Json out = {{"ring", std::string(ring_name(d.ring))},
              {"strata", d.strata.size()},
              {"gluings", d.gluings.size()}};
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> pairs = d.relations;
  for (const auto& s : d.strata) ids.push_back(s.id);
  for (const auto& g : d.gluings) pairs.emplace_back(g.from, g.to);
  try {
    Poset p = close_poset(ids, pairs);
    std::vector<std::vector<std::string>> below(p.size());
    for (auto [a, b] : p.covers()) below[b].push_back(p.elements()[a]);
    std::vector<std::size_t> order(p.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p.height(a) > p.height(b); });
    Json hasse = Json::array();
    for (auto i : order) {
      hasse.push_back({{"id", p.elements()[i]}, {"height", p.height(i)}, {"covers", below[i]}});
    }
    out["hasse"] = hasse;
    out["strict_relations"] = p.relation_count() - p.size();
  } catch (const Error&) {
    out["hasse"] = nullptr;
  }
  return out;
}

Json homology_table(const ColimitComplex& c) {
  Json rows = Json::array();
  for (const auto& r : betti_table(c)) {
    rows.push_back({{"degree", r.degree},
                    {"chain_rank", r.chain_rank},
                    {"homology", invariants_json(r.homology)},
                    {"cohomology", invariants_json(r.cohomology)}});
  }
  return rows;
}

CommandResult run_validate(const DiagramDocument& doc, bool force) {
  const Diagram& d = doc.diagram;
  ValidationReport v = validate(d);
  Json findings = Json::array();
  for (const auto& f : v.findings) findings.push_back(finding_json(f));
  Json report = {{"command", "validate"},
                 {"summary", diagram_summary(d)},
                 {"findings", findings},
                 {"valid", v.ok()},
                 {"forced", force},
                 {"compatibility", nullptr}};
  bool ok = v.ok();
  if (v.ok() || force) {
    StratifiedDiagram sd = v.ok() ? resolve_gluings(d) : resolve_unchecked(d);
    CompatibilityReport comp = boundary_compatibility_check(sd);
    report["compatibility"] = compatibility_json(comp);
    ok = ok && comp.ok();
    if (force) report["build"] = build_attempt(sd);
  }
  report["ok"] = ok;
  return {report, ok};
}

CommandResult run_homology(const DiagramDocument& doc, const HomologyOptions& opts) {
  Diagram d = opts.ring_override ? doc.diagram.with_ring(*opts.ring_override) : doc.diagram;
  StratifiedDiagram sd = opts.force ? resolve_unchecked(d) : resolve_gluings(d);
  ColimitComplex c = build(sd);
  Json table = homology_table(c);
  Json rows = table;
  if (opts.degree) {
    rows = Json::array();
    const int k = *opts.degree;
    rows.push_back(k >= 0 && k <= c.top_degree() ? table[static_cast<std::size_t>(k)] : zero_row(k));
  }
  Json report = {{"command", "homology"},
                 {"ring", std::string(ring_name(d.ring))},
                 {"summary", diagram_summary(d)},
                 {"top_degree", c.top_degree()},
                 {"table", rows},
                 {"uct", uct_json(uct_check(c), opts.degree)},
                 {"forced", opts.force}};
  return {report, true};
}

CommandResult run_code(const DiagramDocument& doc, const CodeOptions& opts) {
  if (doc.diagram.ring != Ring::GF2) {
    fail(ErrorCode::RingMismatch, "code extraction needs F2 coefficients");
  }
  const int k = opts.degree.value_or(doc.annotations ? doc.annotations->default_qubit_degree : 1);
  ColimitComplex c = build_valid(doc.diagram);
  CSSCode code = css_extract(c, k);
  Json report = {{"command", "code"},
                 {"degree", k},
                 {"n", code.n},
                 {"k", code.k_logical},
                 {"x_checks", {{"rows", code.hx.rows()}, {"independent", rank(code.hx)}}},
                 {"z_checks", {{"rows", code.hz.rows()}, {"independent", rank(code.hz)}}},
                 {"logical_z", supports(code.logical_z)},
                 {"logical_x", supports(code.logical_x)}};
  PairingMatrix p = pairing_matrix(code);
  report["pairing"] = dense_json(p.matrix);
  PairingMatrix dual = dualize_bases(p);
  report["dual_pairing"] = dense_json(dual.matrix);
  report["logical_x_dual"] = supports(dual.cocycles);
  Json signs = Json::array();
  for (std::size_t i = 0; i < dual.cocycles.cols(); ++i) {
    Json row = Json::array();
    Vector a = dual.cocycles.column(i);
    for (std::size_t j = 0; j < dual.cycles.cols(); ++j) {
      Vector b = dual.cycles.column(j);
      row.push_back(commutation_sign(a, b));
    }
    signs.push_back(row);
  }
  report["commutation"] = signs;
  std::string params = "[[" + std::to_string(code.n) + ", " + std::to_string(code.k_logical);
  if (opts.distance_budget > 0) {
    DistanceResult dz = min_distance(code, LogicalKind::Z, opts.distance_budget);
    DistanceResult dx = min_distance(code, LogicalKind::X, opts.distance_budget);
    report["distance"] = {{"z", distance_json(dz)}, {"x", distance_json(dx)}};
    if (dz.has_logicals) {
      const bool exact = dz.exact && dx.exact;
      params += std::string(", ") + (exact ? "" : "<=") + std::to_string(std::min(dz.value, dx.value));
    }
  } else {
    report["distance"] = nullptr;
  }
  report["parameters"] = params + "]]";
  return {report, true};
}

CommandResult run_example_report(const DiagramDocument& doc, bool with_oracle) {
  if (!doc.annotations) fail(ErrorCode::InvalidArgument, "example reports need an annotated document");
  const Annotations& an = *doc.annotations;
  Json params = Json::object();
  for (const auto& [k, v] : an.params) params[k] = v;
  Json report = {{"command", "example"},
                 {"name", an.name},
                 {"params", params},
                 {"notes", an.notes},
                 {"expect_invalid", an.expect_invalid},
                 {"summary", diagram_summary(doc.diagram)}};
  ValidationReport v = validate(doc.diagram);
  if (!v.ok()) {
    Json findings = Json::array();
    for (const auto& f : v.findings) findings.push_back(finding_json(f));
    report["findings"] = findings;
    report["status"] = an.expect_invalid ? "invalid as expected" : "invalid";
    try {
      StratifiedDiagram sd = resolve_unchecked(doc.diagram);
      report["forced"] = {{"compatibility", compatibility_json(boundary_compatibility_check(sd))},
                          {"build", build_attempt(sd)}};
    } catch (const Error& e) {
      report["forced"] = {{"error", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    }
    report["ok"] = an.expect_invalid;
    return {report, an.expect_invalid};
  }
  if (an.expect_invalid) {
    report["status"] = "unexpectedly valid";
    report["ok"] = false;
    return {report, false};
  }
  ColimitComplex c = build_valid(doc.diagram);
  Json table = homology_table(c);
  report["table"] = table;

  std::optional<oracles::OracleResult> oracle;
  if (with_oracle) oracle = oracles::catalog_oracle(an.name, an.params);
  bool ok = true;
  if (with_oracle) {
    if (oracle) {
      const bool agrees = oracle_matches_table(table, oracle->value);
      report["oracle"] = {{"name", oracle->name},
                          {"inputs", oracle->inputs},
                          {"value", oracle->value},
                          {"agrees_with_pipeline", agrees}};
      ok = agrees;
    } else {
      report["oracle"] = nullptr;
    }
  }

  Json claims = Json::array();
  Json discrepancies = Json::array();
  for (const auto& cl : an.claims) {
    Json claimed = claim_value(cl);
    Json measured = measured_value(cl, c);
    const bool match = claimed == measured;
    Json row = {{"kind", std::string(claim_kind_name(cl.kind))},
                {"degree", cl.degree},
                {"claimed", claimed},
                {"measured", measured},
                {"match", match},
                {"note", cl.note},
                {"text", "claimed " + render_value(claimed) + " / measured " + render_value(measured)}};
    if (oracle) {
      Json o = oracle_value(cl, oracle->value);
      row["oracle"] = o;
      row["oracle_agrees"] = o == measured;
      row["text"] = row["text"].get<std::string>() + " / oracle " + render_value(o);
      ok = ok && o == measured;
    }
    if (!match) {
      discrepancies.push_back(std::string(claim_kind_name(cl.kind)) + " degree " +
                              std::to_string(cl.degree) + ": " + row["text"].get<std::string>());
    }
    claims.push_back(row);
  }
  report["claims"] = claims;
  report["discrepancies"] = discrepancies;
  report["status"] = discrepancies.empty() ? "all claims match" : "claims disagree with measurement";
  report["ok"] = ok;
  return {report, ok};
}

SurgeryOutcome run_surgery(const DiagramDocument& left, const DiagramDocument& right,
                           const std::vector<SharedStratum>& shared) {
  SurgeryOutcome out;
  out.merged.diagram = pushout(left.diagram, right.diagram, shared);
  ColimitComplex l = build_valid(left.diagram);
  ColimitComplex r = build_valid(right.diagram);
  ColimitComplex m = build_valid(out.merged.diagram);
  Json pairs = Json::array();
  for (const auto& s : shared) pairs.push_back({{"left", s.left}, {"right", s.right}});
  Json report = {
      {"command", "surgery"},
      {"shared", pairs},
      {"before",
       {{"left", {{"summary", diagram_summary(left.diagram)}, {"table", homology_table(l)}}},
        {"right", {{"summary", diagram_summary(right.diagram)}, {"table", homology_table(r)}}}}},
      {"after", {{"summary", diagram_summary(out.merged.diagram)}, {"table", homology_table(m)}}},
      {"document", document_to_json(out.merged)}};
  out.result = {report, true};
  return out;
}

}  // namespace stratacode
