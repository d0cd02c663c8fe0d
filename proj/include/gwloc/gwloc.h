#ifndef GWLOC_GWLOC_H
#define GWLOC_GWLOC_H

/* C interface to the gwloc library. Objects are opaque handles; every call
 * returns GWLOC_OK or an error code, and gwloc_last_error() gives the message
 * for the most recent failure on the calling thread. Strings returned through
 * out-parameters are owned by the caller and released with gwloc_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define GWLOC_API_VERSION 1

typedef enum gwloc_status {
  GWLOC_OK = 0,
  GWLOC_E_DIVISION_BY_ZERO,
  GWLOC_E_INVERSION_UNSUPPORTED,
  GWLOC_E_POLE_AT_POINT,
  GWLOC_E_PARSE,
  GWLOC_E_ZERO_INPUT,
  GWLOC_E_UNSTABLE_RANGE,
  GWLOC_E_VERSION_MISMATCH,
  GWLOC_E_CORRUPT_ENTRY,
  GWLOC_E_AMBIGUOUS,
  GWLOC_E_NO_INTEGER_DEGREE,
  GWLOC_E_DEGENERATE_SUBTORUS,
  GWLOC_E_INCONSISTENT_CHERN_DATA,
  GWLOC_E_VALIDATION,
  GWLOC_E_SPECIALIZATION_DISAGREEMENT,
  GWLOC_E_INVALID_ARGUMENT,
  GWLOC_E_UNKNOWN_BUILDER,
  GWLOC_E_IO,
  GWLOC_E_INTERNAL
} gwloc_status;

typedef struct gwloc_graph gwloc_graph;
typedef struct gwloc_engine gwloc_engine;

int gwloc_api_version(void);
const char* gwloc_status_name(gwloc_status status);
const char* gwloc_last_error(void);
void gwloc_string_free(char* s);

/* Graphs */
gwloc_status gwloc_graph_from_json(const char* text, gwloc_graph** out);
gwloc_status gwloc_graph_from_builder(const char* spec, gwloc_graph** out);
void gwloc_graph_free(gwloc_graph* graph);
gwloc_status gwloc_graph_to_json(const gwloc_graph* graph, char** out);
/* GWLOC_OK when clean; GWLOC_E_VALIDATION with the report in *report otherwise. */
gwloc_status gwloc_graph_validate(const gwloc_graph* graph, char** report);
/* Lines "aut=.. A=.. g=.. | canonical form", one per decorated graph. */
gwloc_status gwloc_graph_listing(const gwloc_graph* graph, int genus, int n, const int64_t* beta, size_t beta_len,
                                 char** out);

/* Hodge integral engine with its memo cache */
gwloc_status gwloc_engine_new(gwloc_engine** out);
void gwloc_engine_free(gwloc_engine* engine);
gwloc_status gwloc_engine_load(gwloc_engine* engine, const char* path);
gwloc_status gwloc_engine_save(const gwloc_engine* engine, const char* path);
size_t gwloc_engine_size(const gwloc_engine* engine);

/* Invariants. The request is a JSON object with fields source, genus, beta,
 * insertions, mode, seed, genus_cutoff, workers, verbose; the result is a
 * JSON document. */
gwloc_status gwloc_compute(const gwloc_graph* graph, gwloc_engine* engine, const char* request, char** result);

#ifdef __cplusplus
}
#endif

#endif
