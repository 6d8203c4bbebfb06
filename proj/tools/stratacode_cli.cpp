// stratacode command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stratacode/stratacode.h"

using Json = nlohmann::json;

namespace {

struct Owned {
  char* s = nullptr;
  ~Owned() { sc_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

struct DiagramHandle {
  sc_diagram* d = nullptr;
  ~DiagramHandle() { sc_diagram_free(d); }
};

int report_error(sc_status st) {
  std::cerr << "stratacode: " << sc_status_name(st) << ": " << sc_last_error() << "\n";
  return sc_exit_code(st);
}

std::string join(const Json& arr, const char* sep = ", ") {
  std::string out;
  for (const auto& x : arr) {
    if (!out.empty()) out += sep;
    out += x.is_string() ? x.get<std::string>() : x.dump();
  }
  return out;
}

std::string module_text(const Json& m) {
  return "free " + m.at("free").dump() + ", torsion [" + join(m.at("factors")) + "]";
}

void print_hasse(const Json& summary, std::ostream& os) {
  os << "ring " << summary.at("ring").get<std::string>() << ", " << summary.at("strata") << " strata, "
     << summary.at("gluings") << " gluings\n";
  if (summary.at("hasse").is_null()) return;
  std::size_t top = 0;
  for (const auto& e : summary.at("hasse")) top = std::max(top, e.at("height").get<std::size_t>());
  for (const auto& e : summary.at("hasse")) {
    os << std::string(2 * (top - e.at("height").get<std::size_t>()) + 2, ' ')
       << e.at("id").get<std::string>();
    if (!e.at("covers").empty()) os << " > " << join(e.at("covers"));
    os << "\n";
  }
}

void print_table(const Json& table, std::ostream& os) {
  for (const auto& r : table) {
    os << "  degree " << r.at("degree") << ": chain rank " << r.at("chain_rank") << " | "
       << module_text(r.at("homology")) << " | cohomology " << module_text(r.at("cohomology")) << "\n";
  }
}

void print_forced(const Json& compatibility, const Json* build, std::ostream& os) {
  if (!compatibility.is_null()) {
    os << "compatibility: " << compatibility.at("generators_checked") << " generators checked, "
       << compatibility.at("failures").size() << " failures\n";
    for (const auto& f : compatibility.at("failures")) {
      os << "  degree " << f.at("degree") << " generator " << f.at("generator") << " ("
         << f.at("from").get<std::string>() << " -> " << f.at("to").get<std::string>()
         << "): " << f.at("message").get<std::string>() << "\n";
    }
  }
  if (build) {
    if (build->at("ok").get<bool>()) {
      os << "forced build: ok, quotient ranks [" << join(build->at("quotient_ranks")) << "]\n";
    } else {
      os << "forced build: " << build->at("error").get<std::string>() << ": "
         << build->at("message").get<std::string>() << "\n";
    }
  }
}

void print_validate(const Json& r, std::ostream& os) {
  print_hasse(r.at("summary"), os);
  if (r.at("findings").empty()) os << "validation: ok\n";
  for (const auto& f : r.at("findings")) os << "finding: " << f.at("text").get<std::string>() << "\n";
  print_forced(r.at("compatibility"), r.contains("build") ? &r.at("build") : nullptr, os);
  os << (r.at("ok").get<bool>() ? "result: pass\n" : "result: fail\n");
}

void print_homology(const Json& r, std::ostream& os) {
  print_hasse(r.at("summary"), os);
  os << "homology over " << r.at("ring").get<std::string>() << "\n";
  print_table(r.at("table"), os);
  os << "universal coefficients: " << (r.at("uct").at("consistent").get<bool>() ? "consistent" : "INCONSISTENT")
     << "\n";
}

void print_matrix(const char* label, const Json& m, std::ostream& os) {
  os << label << ":\n";
  if (m.empty()) os << "  (empty)\n";
  for (const auto& row : m) os << "  " << join(row, " ") << "\n";
}

void print_code(const Json& r, std::ostream& os) {
  os << "code " << r.at("parameters").get<std::string>() << " on degree " << r.at("degree") << "\n";
  os << "X checks " << r.at("x_checks").at("rows") << " (" << r.at("x_checks").at("independent")
     << " independent), Z checks " << r.at("z_checks").at("rows") << " ("
     << r.at("z_checks").at("independent") << " independent)\n";
  std::size_t i = 0;
  for (const auto& s : r.at("logical_z")) os << "Z logical " << i++ << ": {" << join(s) << "}\n";
  i = 0;
  for (const auto& s : r.at("logical_x_dual")) os << "X logical " << i++ << ": {" << join(s) << "}\n";
  print_matrix("pairing", r.at("pairing"), os);
  print_matrix("pairing after dualization", r.at("dual_pairing"), os);
  print_matrix("commutation signs", r.at("commutation"), os);
  if (!r.at("distance").is_null()) {
    for (const char* kind : {"z", "x"}) {
      const Json& d = r.at("distance").at(kind);
      if (d.is_null()) continue;
      os << kind << "-distance " << (d.at("exact").get<bool>() ? "" : "<= ") << d.at("value") << "\n";
    }
  }
}

void print_example(const Json& r, std::ostream& os) {
  os << "example " << r.at("name").get<std::string>();
  if (!r.at("params").empty()) {
    for (const auto& [k, v] : r.at("params").items()) os << " " << k << "=" << v;
  }
  os << ": " << r.at("status").get<std::string>() << "\n";
  for (const auto& n : r.at("notes")) os << "note: " << n.get<std::string>() << "\n";
  if (r.contains("findings")) {
    for (const auto& f : r.at("findings")) os << "finding: " << f.at("text").get<std::string>() << "\n";
  }
  if (r.contains("forced")) {
    const Json& f = r.at("forced");
    if (f.contains("error")) {
      os << "forced: " << f.at("error").get<std::string>() << ": " << f.at("message").get<std::string>() << "\n";
    } else {
      print_forced(f.at("compatibility"), &f.at("build"), os);
    }
  }
  if (r.contains("table")) print_table(r.at("table"), os);
  if (r.contains("claims")) {
    for (const auto& c : r.at("claims")) {
      os << "  " << c.at("kind").get<std::string>() << " " << c.at("degree") << ": "
         << c.at("text").get<std::string>() << (c.at("match").get<bool>() ? "" : "  [DISAGREES]") << "\n";
      if (!c.at("note").get<std::string>().empty()) os << "    " << c.at("note").get<std::string>() << "\n";
    }
  }
  if (r.contains("oracle")) {
    if (r.at("oracle").is_null()) {
      os << "oracle: none for this entry\n";
    } else {
      os << "oracle (" << r.at("oracle").at("value").at("method").get<std::string>() << "): "
         << (r.at("oracle").at("agrees_with_pipeline").get<bool>() ? "agrees" : "DISAGREES")
         << " with pipeline\n";
    }
  }
}

void print_surgery(const Json& r, std::ostream& os) {
  os << "left before:\n";
  print_table(r.at("before").at("left").at("table"), os);
  os << "right before:\n";
  print_table(r.at("before").at("right").at("table"), os);
  os << "merged:\n";
  print_table(r.at("after").at("table"), os);
}

template <class Printer>
int finish(sc_status st, const Owned& report, bool json, Printer&& print) {
  if (st != SC_OK && st != SC_REPORTED_FAILURE) return report_error(st);
  Json r = Json::parse(report.str());
  if (json) {
    std::cout << report.str() << "\n";
  } else {
    print(r, std::cout);
  }
  return st == SC_OK ? 0 : 1;
}

int load(const std::string& path, DiagramHandle& h) {
  sc_status st = sc_diagram_load(path.c_str(), &h.d);
  return st == SC_OK ? 0 : report_error(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stratacode: colimit chain complexes of stratified diagrams"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sc_version()));

  bool json = false;
  bool force = false;
  std::string path;
  std::string ring_override;
  std::optional<int> degree;
  unsigned long long budget = 1ull << 24;

  auto* validate = app.add_subcommand("validate", "check axioms and boundary compatibility");
  validate->add_option("file", path, "diagram document")->required();
  validate->add_flag("--json", json, "machine-readable output");
  validate->add_flag("--force", force, "also resolve and build despite findings");

  auto* homology = app.add_subcommand("homology", "homology and cohomology of the colimit");
  homology->add_option("file", path, "diagram document")->required();
  homology->add_flag("--json", json, "machine-readable output");
  homology->add_option("--ring-override", ring_override, "reinterpret coefficients in F2 or Z")
      ->check(CLI::IsMember({"F2", "Z", "GF2", "INT"}));
  homology->add_option("--degree", degree, "report a single degree");
  homology->add_flag("--force", force, "skip gluing validation");

  auto* code = app.add_subcommand("code", "CSS code read off a degree");
  code->add_option("file", path, "diagram document (F2)")->required();
  code->add_flag("--json", json, "machine-readable output");
  code->add_option("--degree", degree, "qubit degree (default from annotations, else 1)");
  code->add_option("--distance-budget", budget, "max vectors enumerated per distance, 0 to skip");

  std::string name;
  std::string output;
  bool report = false, oracle = false, list = false;
  std::map<std::string, long> params;
  std::map<std::string, long> param_values;
  auto* example = app.add_subcommand("example", "write a catalog diagram");
  example->add_option("name", name, "example name");
  example->add_flag("--list", list, "list example names");
  example->add_option("-o,--output", output, "write the document here instead of stdout");
  example->add_flag("--report", report, "run the pipeline and compare against recorded claims");
  example->add_flag("--oracle", oracle, "include the independent oracle column (implies --report)");
  example->add_flag("--json", json, "machine-readable report");
  for (const char* p : {"n", "a", "b", "L", "m", "delete", "gf2", "repaired"}) {
    example->add_option(std::string("--") + p, param_values[p], std::string("parameter ") + p);
  }

  std::string right_path;
  std::vector<std::string> shares;
  auto* surgery = app.add_subcommand("surgery", "push-out of two diagrams along shared strata");
  surgery->add_option("left", path, "left document")->required();
  surgery->add_option("right", right_path, "right document")->required();
  surgery->add_option("--share", shares, "shared stratum pair left=right (repeatable)");
  surgery->add_option("-o,--output", output, "write the merged document here");
  surgery->add_flag("--json", json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*validate) {
    DiagramHandle h;
    if (int rc = load(path, h)) return rc;
    Owned r;
    return finish(sc_report_validate(h.d, force, &r.s), r, json, print_validate);
  }

  if (*homology) {
    DiagramHandle h;
    if (int rc = load(path, h)) return rc;
    Owned r;
    sc_status st = sc_report_homology(h.d, ring_override.empty() ? nullptr : ring_override.c_str(),
                                      degree.has_value(), degree.value_or(0), force, &r.s);
    return finish(st, r, json, print_homology);
  }

  if (*code) {
    DiagramHandle h;
    if (int rc = load(path, h)) return rc;
    Owned r;
    return finish(sc_report_code(h.d, degree.has_value(), degree.value_or(0), budget, &r.s), r, json,
                  print_code);
  }

  if (*example) {
    if (list) {
      Owned names;
      sc_status st = sc_example_names(&names.s);
      if (st != SC_OK) return report_error(st);
      std::cout << names.str();
      return 0;
    }
    if (name.empty()) {
      std::cerr << "stratacode: example needs a name (see --list)\n";
      return 2;
    }
    Json p = Json::object();
    for (const auto& [k, v] : param_values) {
      if (example->count(std::string("--") + k) > 0) p[k] = v;
    }
    DiagramHandle h;
    sc_status st = sc_diagram_example(name.c_str(), p.dump().c_str(), &h.d);
    if (st != SC_OK) return report_error(st);
    if (!output.empty()) {
      st = sc_diagram_save(h.d, output.c_str());
      if (st != SC_OK) return report_error(st);
    }
    if (report || oracle) {
      Owned r;
      return finish(sc_report_example(h.d, oracle, &r.s), r, json, print_example);
    }
    if (output.empty()) {
      Owned doc;
      st = sc_diagram_serialize(h.d, &doc.s);
      if (st != SC_OK) return report_error(st);
      std::cout << doc.str();
    }
    return 0;
  }

  if (*surgery) {
    DiagramHandle left, right, merged;
    if (int rc = load(path, left)) return rc;
    if (int rc = load(right_path, right)) return rc;
    Json shared = Json::array();
    for (const auto& s : shares) {
      auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
        std::cerr << "stratacode: --share expects left=right, got '" << s << "'\n";
        return 2;
      }
      shared.push_back({{"left", s.substr(0, eq)}, {"right", s.substr(eq + 1)}});
    }
    Owned r;
    sc_status st = sc_surgery(left.d, right.d, shared.dump().c_str(), &merged.d, &r.s);
    if (st != SC_OK && st != SC_REPORTED_FAILURE) return report_error(st);
    if (!output.empty()) {
      sc_status sv = sc_diagram_save(merged.d, output.c_str());
      if (sv != SC_OK) return report_error(sv);
    }
    return finish(st, r, json, print_surgery);
  }
  return 2;
}
