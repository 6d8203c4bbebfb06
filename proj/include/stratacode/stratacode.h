#ifndef STRATACODE_H
#define STRATACODE_H

#include <stddef.h>

#if defined(__GNUC__)
#define SC_API __attribute__((visibility("default")))
#else
#define SC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_INVALID_ARGUMENT,
  SC_RING_MISMATCH,
  SC_DIMENSION_MISMATCH,
  SC_CYCLE_DETECTED,
  SC_UNKNOWN_STRATUM,
  SC_TRANSITIVITY_VIOLATION,
  SC_MISSING_COVER,
  SC_VALIDATION_FAILED,
  SC_NOT_A_COMPLEX,
  SC_PRECONDITION_FAILED,
  SC_TORSION_CHAIN_MODULE,
  SC_INCOMPATIBLE_COCONE,
  SC_NOT_A_CHAIN_MAP,
  SC_EMBEDDING_NOT_FULL,
  SC_DEGENERATE_PAIRING,
  SC_SIZE_EXCEEDED,
  SC_PARSE_ERROR,
  SC_IO_ERROR,
  SC_UNKNOWN_EXAMPLE,
  SC_INTERNAL,
  /* Not an error: the command ran and its report records a domain failure. */
  SC_REPORTED_FAILURE
} sc_status;

typedef struct sc_diagram sc_diagram;
typedef struct sc_complex sc_complex;

/* Message for the last non-OK status on this thread; empty string if none. */
SC_API const char* sc_last_error(void);
SC_API const char* sc_status_name(sc_status status);
/* 0 success, 2 parse or I/O failure, 1 any other failure. */
SC_API int sc_exit_code(sc_status status);
SC_API const char* sc_version(void);

/* Strings returned through char** are owned by the caller. */
SC_API void sc_string_free(char* s);

SC_API sc_status sc_diagram_parse(const char* json, sc_diagram** out);
SC_API sc_status sc_diagram_load(const char* path, sc_diagram** out);
/* params_json is an object of integer parameters, or NULL. */
SC_API sc_status sc_diagram_example(const char* name, const char* params_json, sc_diagram** out);
SC_API sc_status sc_diagram_serialize(const sc_diagram* d, char** json_out);
SC_API sc_status sc_diagram_save(const sc_diagram* d, const char* path);
SC_API void sc_diagram_free(sc_diagram* d);
/* Newline-separated example names. */
SC_API sc_status sc_example_names(char** out);

SC_API sc_status sc_complex_build(const sc_diagram* d, int force, sc_complex** out);
SC_API int sc_complex_top_degree(const sc_complex* c);
SC_API size_t sc_complex_rank(const sc_complex* c, int degree);
/* Free rank and invariant factors (JSON array) of H_k; factors_json may be NULL. */
SC_API sc_status sc_complex_homology(const sc_complex* c, int degree, size_t* free_rank,
                              char** factors_json);
SC_API sc_status sc_complex_cohomology(const sc_complex* c, int degree, size_t* free_rank,
                                char** factors_json);
SC_API void sc_complex_free(sc_complex* c);

/* Reports are JSON documents with sorted keys. SC_REPORTED_FAILURE still fills report. */
SC_API sc_status sc_report_validate(const sc_diagram* d, int force, char** report);
/* ring_override: "F2", "Z" or NULL. degree is ignored unless has_degree. */
SC_API sc_status sc_report_homology(const sc_diagram* d, const char* ring_override, int has_degree,
                             int degree, int force, char** report);
/* distance_budget 0 skips distances. */
SC_API sc_status sc_report_code(const sc_diagram* d, int has_degree, int degree,
                         unsigned long long distance_budget, char** report);
SC_API sc_status sc_report_example(const sc_diagram* d, int with_oracle, char** report);
/* shared_json: array of {"left": id, "right": id}. */
SC_API sc_status sc_surgery(const sc_diagram* left, const sc_diagram* right, const char* shared_json,
                     sc_diagram** merged, char** report);

#ifdef __cplusplus
}
#endif

#endif
