#include "stratacode/stratacode.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "homology.hpp"
#include "pipeline.hpp"

struct sc_diagram {
  stratacode::DiagramDocument doc;
};

struct sc_complex {
  stratacode::ColimitComplex complex;
};

namespace {

using namespace stratacode;

thread_local std::string last_error;

sc_status to_status(ErrorCode code) { return static_cast<sc_status>(static_cast<int>(code) + 1); }

sc_status record(sc_status s, const std::string& message) {
  last_error = message;
  return s;
}

template <class Fn>
sc_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const Error& e) {
    return record(to_status(e.code()), e.what());
  } catch (const Json::exception& e) {
    return record(SC_PARSE_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return record(SC_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(SC_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

sc_status emit(const CommandResult& r, char** report) {
  *report = dup(r.report.dump(2));
  if (r.ok) return SC_OK;
  return record(SC_REPORTED_FAILURE, "the report records a failure");
}

sc_status invariants_out(const HomologyResult& h, size_t* free_rank, char** factors_json) {
  if (free_rank) *free_rank = h.free_rank;
  if (factors_json) {
    Json f = Json::array();
    for (const auto& x : h.invariant_factors) f.push_back(integer_to_json(x));
    *factors_json = dup(f.dump());
  }
  return SC_OK;
}

}  // namespace

extern "C" {

const char* sc_last_error(void) { return last_error.c_str(); }

const char* sc_status_name(sc_status status) {
  switch (status) {
    case SC_OK:
      return "Ok";
    case SC_REPORTED_FAILURE:
      return "ReportedFailure";
    default:
      break;
  }
  const int code = static_cast<int>(status) - 1;
  if (code < 0 || code > static_cast<int>(ErrorCode::Internal)) return "Unknown";
  return error_code_name(static_cast<ErrorCode>(code)).data();
}

int sc_exit_code(sc_status status) {
  if (status == SC_OK) return 0;
  if (status == SC_PARSE_ERROR || status == SC_IO_ERROR) return 2;
  return 1;
}

const char* sc_version(void) { return "1.0.0"; }

void sc_string_free(char* s) { std::free(s); }

sc_status sc_diagram_parse(const char* json, sc_diagram** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new sc_diagram{parse_document(json)};
    return SC_OK;
  });
}

sc_status sc_diagram_load(const char* path, sc_diagram** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new sc_diagram{read_document(path)};
    return SC_OK;
  });
}

sc_status sc_diagram_example(const char* name, const char* params_json, sc_diagram** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    std::map<std::string, long> params;
    if (params_json) {
      Json p = Json::parse(params_json);
      if (!p.is_object()) fail(ErrorCode::InvalidArgument, "parameters must be a JSON object");
      for (const auto& [k, v] : p.items()) {
        if (!v.is_number_integer()) fail(ErrorCode::InvalidArgument, "parameter '" + k + "' must be an integer");
        params[k] = v.get<long>();
      }
    }
    *out = new sc_diagram{to_document(make_example(name, params))};
    return SC_OK;
  });
}

sc_status sc_diagram_serialize(const sc_diagram* d, char** json_out) {
  return guarded([&] {
    need(d, "diagram");
    need(json_out, "json_out");
    *json_out = dup(serialize(d->doc));
    return SC_OK;
  });
}

sc_status sc_diagram_save(const sc_diagram* d, const char* path) {
  return guarded([&] {
    need(d, "diagram");
    need(path, "path");
    write_text(path, serialize(d->doc));
    return SC_OK;
  });
}

void sc_diagram_free(sc_diagram* d) { delete d; }

sc_status sc_example_names(char** out) {
  return guarded([&] {
    need(out, "out");
    std::string s;
    for (const auto& n : example_names()) s += n + "\n";
    *out = dup(s);
    return SC_OK;
  });
}

sc_status sc_complex_build(const sc_diagram* d, int force, sc_complex** out) {
  return guarded([&] {
    need(d, "diagram");
    need(out, "out");
    StratifiedDiagram sd = force ? resolve_unchecked(d->doc.diagram) : resolve_gluings(d->doc.diagram);
    *out = new sc_complex{build(sd)};
    return SC_OK;
  });
}

int sc_complex_top_degree(const sc_complex* c) { return c ? c->complex.top_degree() : -1; }

size_t sc_complex_rank(const sc_complex* c, int degree) {
  if (!c || degree < 0 || degree > c->complex.top_degree()) return 0;
  return c->complex.quotient_rank(degree);
}

sc_status sc_complex_homology(const sc_complex* c, int degree, size_t* free_rank,
                              char** factors_json) {
  return guarded([&] {
    need(c, "complex");
    return invariants_out(homology_at(c->complex, degree), free_rank, factors_json);
  });
}

sc_status sc_complex_cohomology(const sc_complex* c, int degree, size_t* free_rank,
                                char** factors_json) {
  return guarded([&] {
    need(c, "complex");
    return invariants_out(cohomology_at(c->complex, degree), free_rank, factors_json);
  });
}

void sc_complex_free(sc_complex* c) { delete c; }

sc_status sc_report_validate(const sc_diagram* d, int force, char** report) {
  return guarded([&] {
    need(d, "diagram");
    need(report, "report");
    return emit(run_validate(d->doc, force != 0), report);
  });
}

sc_status sc_report_homology(const sc_diagram* d, const char* ring_override, int has_degree,
                             int degree, int force, char** report) {
  return guarded([&] {
    need(d, "diagram");
    need(report, "report");
    HomologyOptions opts;
    if (ring_override) {
      opts.ring_override = parse_ring(ring_override);
      if (!opts.ring_override) fail(ErrorCode::InvalidArgument, "ring must be F2 or Z");
    }
    if (has_degree) opts.degree = degree;
    opts.force = force != 0;
    return emit(run_homology(d->doc, opts), report);
  });
}

sc_status sc_report_code(const sc_diagram* d, int has_degree, int degree,
                         unsigned long long distance_budget, char** report) {
  return guarded([&] {
    need(d, "diagram");
    need(report, "report");
    CodeOptions opts;
    if (has_degree) opts.degree = degree;
    opts.distance_budget = static_cast<std::size_t>(distance_budget);
    return emit(run_code(d->doc, opts), report);
  });
}

sc_status sc_report_example(const sc_diagram* d, int with_oracle, char** report) {
  return guarded([&] {
    need(d, "diagram");
    need(report, "report");
    return emit(run_example_report(d->doc, with_oracle != 0), report);
  });
}

sc_status sc_surgery(const sc_diagram* left, const sc_diagram* right, const char* shared_json,
                     sc_diagram** merged, char** report) {
  return guarded([&] {
    need(left, "left");
    need(right, "right");
    std::vector<SharedStratum> shared;
    if (shared_json) {
      Json s = Json::parse(shared_json);
      if (!s.is_array()) fail(ErrorCode::InvalidArgument, "shared strata must be a JSON array");
      for (const auto& p : s) {
        if (!p.is_object() || !p.contains("left") || !p.contains("right")) {
          fail(ErrorCode::InvalidArgument, "each shared stratum needs left and right ids");
        }
        shared.push_back({p["left"].get<std::string>(), p["right"].get<std::string>()});
      }
    }
    SurgeryOutcome out = run_surgery(left->doc, right->doc, shared);
    if (merged) *merged = new sc_diagram{std::move(out.merged)};
    if (report) return emit(out.result, report);
    return SC_OK;
  });
}

}  // extern "C"
