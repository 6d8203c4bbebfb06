#include "document.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace stratacode {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorCode::ParseError, where + ": " + what);
}

void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed,
               std::initializer_list<const char*> required) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) bad(where, "unknown field '" + key + "'");
  }
  for (const char* r : required) {
    if (!j.contains(r)) bad(where, "missing field '" + std::string(r) + "'");
  }
}

const Json& field(const Json& j, const char* key) { return j.at(key); }

std::string get_string(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

long get_long(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<long>();
}

std::size_t get_count(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

int parse_degree(const std::string& key, const std::string& where) {
  if (key.empty() || key.size() > 6) bad(where, "bad degree key '" + key + "'");
  std::size_t start = key[0] == '-' ? 1 : 0;
  if (start == key.size()) bad(where, "bad degree key '" + key + "'");
  for (std::size_t i = start; i < key.size(); ++i) {
    if (key[i] < '0' || key[i] > '9') bad(where, "bad degree key '" + key + "'");
  }
  if (key.size() > 1 && key[start] == '0') bad(where, "bad degree key '" + key + "'");
  return std::stoi(key);
}

Json degree_map(const std::map<int, SparseMatrix>& maps) {
  Json out = Json::object();
  for (const auto& [k, m] : maps) out[std::to_string(k)] = matrix_to_json(m);
  return out;
}

std::map<int, SparseMatrix> degree_map_from(const Json& j, Ring ring, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object keyed by degree");
  std::map<int, SparseMatrix> out;
  for (const auto& [key, value] : j.items()) {
    out[parse_degree(key, where)] = matrix_from_json(value, ring);
  }
  return out;
}

Json claim_to_json(const Claim& c) {
  Json j = {{"kind", std::string(claim_kind_name(c.kind))},
            {"degree", c.degree},
            {"value", c.free_rank}};
  if (!c.factors.empty()) {
    Json f = Json::array();
    for (const auto& x : c.factors) f.push_back(integer_to_json(x));
    j["factors"] = f;
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Claim claim_from_json(const Json& j) {
  const std::string where = "claim";
  only_keys(j, where, {"kind", "degree", "value", "factors", "note"}, {"kind", "degree", "value"});
  Claim c;
  auto kind = parse_claim_kind(get_string(field(j, "kind"), where));
  if (!kind) bad(where, "unknown claim kind");
  c.kind = *kind;
  c.degree = static_cast<int>(get_long(field(j, "degree"), where));
  c.free_rank = get_count(field(j, "value"), where);
  if (j.contains("factors")) {
    if (!j["factors"].is_array()) bad(where, "factors must be an array");
    for (const auto& f : j["factors"]) c.factors.push_back(integer_from_json(f));
  }
  if (j.contains("note")) c.note = get_string(j["note"], where);
  return c;
}

Json annotations_to_json(const Annotations& a) {
  Json params = Json::object();
  for (const auto& [k, v] : a.params) params[k] = v;
  Json claims = Json::array();
  for (const auto& c : a.claims) claims.push_back(claim_to_json(c));
  return {{"name", a.name},
          {"params", params},
          {"default_qubit_degree", a.default_qubit_degree},
          {"claims", claims},
          {"notes", a.notes},
          {"expect_invalid", a.expect_invalid}};
}

Annotations annotations_from_json(const Json& j) {
  const std::string where = "annotations";
  only_keys(j, where,
            {"name", "params", "default_qubit_degree", "claims", "notes", "expect_invalid"},
            {"name"});
  Annotations a;
  a.name = get_string(field(j, "name"), where);
  if (j.contains("params")) {
    if (!j["params"].is_object()) bad(where, "params must be an object");
    for (const auto& [k, v] : j["params"].items()) a.params[k] = get_long(v, where + ".params");
  }
  if (j.contains("default_qubit_degree")) {
    a.default_qubit_degree = static_cast<int>(get_long(j["default_qubit_degree"], where));
  }
  if (j.contains("claims")) {
    if (!j["claims"].is_array()) bad(where, "claims must be an array");
    for (const auto& c : j["claims"]) a.claims.push_back(claim_from_json(c));
  }
  if (j.contains("notes")) {
    if (!j["notes"].is_array()) bad(where, "notes must be an array");
    for (const auto& n : j["notes"]) a.notes.push_back(get_string(n, where + ".notes"));
  }
  if (j.contains("expect_invalid")) {
    if (!j["expect_invalid"].is_boolean()) bad(where, "expect_invalid must be a boolean");
    a.expect_invalid = j["expect_invalid"].get<bool>();
  }
  return a;
}

}  // namespace

Json integer_to_json(const Integer& v) {
  static const Integer limit = Integer(1) << 53;
  if (abs(v) <= limit) return v.get_si();
  return v.get_str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Integer v;
    if (s.empty() || v.set_str(s, 10) != 0) bad("coefficient", "'" + s + "' is not an integer");
    return v;
  }
  bad("coefficient", "expected an integer or a decimal string");
}

Json matrix_to_json(const SparseMatrix& m) {
  Json entries = Json::array();
  for (const auto& e : m.entries()) {
    entries.push_back(Json::array({e.row, e.col, integer_to_json(e.value)}));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

SparseMatrix matrix_from_json(const Json& j, Ring ring) {
  const std::string where = "matrix";
  only_keys(j, where, {"rows", "cols", "entries"}, {"rows", "cols", "entries"});
  const std::size_t rows = get_count(j["rows"], where);
  const std::size_t cols = get_count(j["cols"], where);
  if (!j["entries"].is_array()) bad(where, "entries must be an array");
  std::vector<Entry> entries;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : j["entries"]) {
    if (!e.is_array() || e.size() != 3) bad(where, "each entry is [row, col, coeff]");
    std::size_t r = get_count(e[0], where);
    std::size_t c = get_count(e[1], where);
    Integer v = integer_from_json(e[2]);
    if (r >= rows || c >= cols) bad(where, "entry outside the matrix shape");
    if (!seen.insert({r, c}).second) bad(where, "duplicate entry");
    if (v == 0) bad(where, "zero coefficients are not stored");
    if (ring == Ring::GF2 && v != 1) bad(where, "F2 coefficients must be 1");
    entries.push_back({r, c, v});
  }
  return SparseMatrix::from_triples(ring, rows, cols, std::move(entries));
}

Json document_to_json(const DiagramDocument& doc) {
  const Diagram& d = doc.diagram;
  Json strata = Json::array();
  for (const auto& s : d.strata) {
    Json modules = Json::object();
    for (const auto& [k, r] : s.modules) modules[std::to_string(k)] = r;
    Json js = {{"id", s.id}, {"modules", modules}, {"boundaries", degree_map(s.boundaries)}};
    if (s.dim) js["dim"] = *s.dim;
    strata.push_back(js);
  }
  Json gluings = Json::array();
  for (const auto& g : d.gluings) {
    gluings.push_back({{"from", g.from}, {"to", g.to}, {"maps", degree_map(g.maps)}});
  }
  Json out = {{"schema_version", kSchemaVersion},
              {"ring", std::string(ring_name(d.ring))},
              {"strata", strata},
              {"gluings", gluings}};
  if (!d.relations.empty()) {
    Json rel = Json::array();
    for (const auto& [a, b] : d.relations) rel.push_back(Json::array({a, b}));
    out["relations"] = rel;
  }
  if (doc.annotations) out["annotations"] = annotations_to_json(*doc.annotations);
  return out;
}

DiagramDocument document_from_json(const Json& j) {
  const std::string where = "document";
  only_keys(j, where, {"schema_version", "ring", "strata", "gluings", "relations", "annotations"},
            {"schema_version", "ring", "strata", "gluings"});
  if (get_string(j["schema_version"], where) != kSchemaVersion) {
    bad(where, "unsupported schema_version (expected " + std::string(kSchemaVersion) + ")");
  }
  DiagramDocument doc;
  Diagram& d = doc.diagram;
  auto ring = parse_ring(get_string(j["ring"], where));
  if (!ring) bad(where, "ring must be \"F2\" or \"Z\"");
  d.ring = *ring;
  if (!j["strata"].is_array()) bad(where, "strata must be an array");
  for (const auto& js : j["strata"]) {
    only_keys(js, "stratum", {"id", "dim", "modules", "boundaries"}, {"id", "modules"});
    Stratum s;
    s.id = get_string(js["id"], "stratum");
    const std::string at = "stratum " + s.id;
    if (js.contains("dim")) s.dim = get_long(js["dim"], at);
    if (!js["modules"].is_object()) bad(at, "modules must be an object keyed by degree");
    for (const auto& [key, value] : js["modules"].items()) {
      s.modules[parse_degree(key, at)] = get_count(value, at);
    }
    if (js.contains("boundaries")) s.boundaries = degree_map_from(js["boundaries"], d.ring, at);
    d.strata.push_back(std::move(s));
  }
  if (!j["gluings"].is_array()) bad(where, "gluings must be an array");
  for (const auto& jg : j["gluings"]) {
    only_keys(jg, "gluing", {"from", "to", "maps"}, {"from", "to"});
    Gluing g;
    g.from = get_string(jg["from"], "gluing");
    g.to = get_string(jg["to"], "gluing");
    if (jg.contains("maps")) g.maps = degree_map_from(jg["maps"], d.ring, "gluing " + g.from);
    d.gluings.push_back(std::move(g));
  }
  if (j.contains("relations")) {
    if (!j["relations"].is_array()) bad(where, "relations must be an array");
    for (const auto& r : j["relations"]) {
      if (!r.is_array() || r.size() != 2) bad("relation", "expected [lower, upper]");
      d.relations.emplace_back(get_string(r[0], "relation"), get_string(r[1], "relation"));
    }
  }
  if (j.contains("annotations")) doc.annotations = annotations_from_json(j["annotations"]);
  d.canonicalize();
  return doc;
}

std::string serialize(const DiagramDocument& doc) {
  DiagramDocument copy = doc;
  copy.diagram.canonicalize();
  return document_to_json(copy).dump(2) + "\n";
}

DiagramDocument parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  try {
    return document_from_json(j);
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed document: ") + e.what());
  }
}

DiagramDocument read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorCode::IoError, "cannot read " + path);
  return parse_document(buf.str());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
}

DiagramDocument to_document(const CatalogEntry& entry) {
  DiagramDocument doc{entry.diagram, entry.annotations};
  doc.diagram.canonicalize();
  return doc;
}

}  // namespace stratacode
