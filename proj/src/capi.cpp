#include "gwloc/gwloc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "gwloc/compute.hpp"

struct gwloc_graph {
  gwloc::GkmGraph graph;
};

struct gwloc_engine {
  gwloc::HodgeEngine engine;
};

namespace {

thread_local std::string last_error;

gwloc_status code_of(gwloc::ErrorCode code) {
  return static_cast<gwloc_status>(static_cast<int>(code) + 1);
}

template <class Fn>
gwloc_status guarded(Fn fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const gwloc::Error& e) {
    last_error = e.what();
    return code_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GWLOC_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GWLOC_E_INTERNAL;
  }
}

char* copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gwloc_status require(const void* p, const char* what) {
  if (p) return GWLOC_OK;
  last_error = std::string("null ") + what;
  return GWLOC_E_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

int gwloc_api_version(void) { return GWLOC_API_VERSION; }

const char* gwloc_status_name(gwloc_status status) {
  if (status == GWLOC_OK) return "ok";
  if (status == GWLOC_E_INTERNAL) return "internal";
  const int i = static_cast<int>(status) - 1;
  if (i < 0 || i > static_cast<int>(gwloc::ErrorCode::Io)) return "unknown";
  return gwloc::to_string(static_cast<gwloc::ErrorCode>(i));
}

const char* gwloc_last_error(void) { return last_error.c_str(); }

void gwloc_string_free(char* s) { std::free(s); }

gwloc_status gwloc_graph_from_json(const char* text, gwloc_graph** out) {
  if (auto s = require(text, "text"); s != GWLOC_OK) return s;
  if (auto s = require(out, "output"); s != GWLOC_OK) return s;
  return guarded([&] {
    *out = new gwloc_graph{gwloc::graph_from_json(text)};
    return GWLOC_OK;
  });
}

gwloc_status gwloc_graph_from_builder(const char* spec, gwloc_graph** out) {
  if (auto s = require(spec, "spec"); s != GWLOC_OK) return s;
  if (auto s = require(out, "output"); s != GWLOC_OK) return s;
  return guarded([&] {
    *out = new gwloc_graph{gwloc::build_from_spec(spec)};
    return GWLOC_OK;
  });
}

void gwloc_graph_free(gwloc_graph* graph) { delete graph; }

gwloc_status gwloc_graph_to_json(const gwloc_graph* graph, char** out) {
  if (auto s = require(graph, "graph"); s != GWLOC_OK) return s;
  if (auto s = require(out, "output"); s != GWLOC_OK) return s;
  return guarded([&] {
    *out = copy(gwloc::graph_to_json(graph->graph));
    return GWLOC_OK;
  });
}

gwloc_status gwloc_graph_validate(const gwloc_graph* graph, char** report) {
  if (auto s = require(graph, "graph"); s != GWLOC_OK) return s;
  return guarded([&] {
    const gwloc::ValidationReport r = gwloc::validate_gkm(graph->graph);
    if (report) *report = copy(r.to_string());
    if (r.ok()) return GWLOC_OK;
    last_error = "graph fails validation";
    return GWLOC_E_VALIDATION;
  });
}

gwloc_status gwloc_graph_listing(const gwloc_graph* graph, int genus, int n, const int64_t* beta, size_t beta_len,
                                 char** out) {
  if (auto s = require(graph, "graph"); s != GWLOC_OK) return s;
  if (auto s = require(out, "output"); s != GWLOC_OK) return s;
  if (beta_len > 0) {
    if (auto s = require(beta, "beta"); s != GWLOC_OK) return s;
  }
  return guarded([&] {
    std::vector<long long> b(beta, beta + beta_len);
    *out = copy(gwloc::graph_listing(graph->graph, genus, n, b));
    return GWLOC_OK;
  });
}

gwloc_status gwloc_engine_new(gwloc_engine** out) {
  if (auto s = require(out, "output"); s != GWLOC_OK) return s;
  return guarded([&] {
    *out = new gwloc_engine;
    return GWLOC_OK;
  });
}

void gwloc_engine_free(gwloc_engine* engine) { delete engine; }

gwloc_status gwloc_engine_load(gwloc_engine* engine, const char* path) {
  if (auto s = require(engine, "engine"); s != GWLOC_OK) return s;
  if (auto s = require(path, "path"); s != GWLOC_OK) return s;
  return guarded([&] {
    engine->engine.load(path);
    return GWLOC_OK;
  });
}

gwloc_status gwloc_engine_save(const gwloc_engine* engine, const char* path) {
  if (auto s = require(engine, "engine"); s != GWLOC_OK) return s;
  if (auto s = require(path, "path"); s != GWLOC_OK) return s;
  return guarded([&] {
    engine->engine.save(path);
    return GWLOC_OK;
  });
}

size_t gwloc_engine_size(const gwloc_engine* engine) { return engine ? engine->engine.size() : 0; }

gwloc_status gwloc_compute(const gwloc_graph* graph, gwloc_engine* engine, const char* request, char** result) {
  if (auto s = require(graph, "graph"); s != GWLOC_OK) return s;
  if (auto s = require(engine, "engine"); s != GWLOC_OK) return s;
  if (auto s = require(request, "request"); s != GWLOC_OK) return s;
  if (auto s = require(result, "output"); s != GWLOC_OK) return s;
  return guarded([&] {
    const gwloc::ComputeRequest req = gwloc::parse_request(graph->graph, request);
    *result = copy(gwloc::run_compute(graph->graph, req, engine->engine));
    return GWLOC_OK;
  });
}

}  // extern "C"
