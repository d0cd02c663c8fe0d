#include "gwloc/compute.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

namespace gwloc {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Parse, what); }

json parse_document(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string(what) + ": " + e.what());
  }
}

long long integer_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) bad(where + ": missing '" + key + "'");
  if (!j.at(key).is_number_integer()) bad(where + ": '" + std::string(key) + "' must be an integer");
  return j.at(key).get<long long>();
}

std::vector<Insertion> insertions_from_json(const GkmGraph& graph, const json& doc) {
  if (!doc.is_array()) bad("insertions: expected an array");
  std::vector<Insertion> out;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const json& e = doc[k];
    const std::string where = "insertion " + std::to_string(k + 1);
    if (!e.is_object()) bad(where + ": expected an object");
    Insertion ins;
    const long long a = integer_field(e, "a", where);
    if (a < 0) throw Error(ErrorCode::Validation, where + ": negative descendant exponent");
    ins.psi = static_cast<int>(a);
    if (e.contains("class")) {
      if (!e.at("class").is_string()) bad(where + ": 'class' must be a string");
      const std::string name = e.at("class").get<std::string>();
      if (name == "unit") {
        ins.cls = unit_class(graph);
      } else if (name.rfind("point:", 0) == 0) {
        const auto v = graph.vertex_index(name.substr(6));
        if (!v) throw Error(ErrorCode::Validation, where + ": unknown vertex in " + name);
        ins.cls = point_class(graph, *v);
      } else {
        bad(where + ": unknown class name '" + name + "'");
      }
      if (e.contains("degree") && integer_field(e, "degree", where) != ins.cls.degree) {
        throw Error(ErrorCode::Validation, where + ": declared degree does not match " + name);
      }
    } else {
      ins.cls.degree = static_cast<int>(integer_field(e, "degree", where));
      ins.cls.restrictions.assign(graph.vertices.size(), SparsePoly(graph.m));
      if (!e.contains("restrictions") || !e.at("restrictions").is_object()) {
        bad(where + ": 'restrictions' must be an object keyed by vertex id");
      }
      for (const auto& [id, poly] : e.at("restrictions").items()) {
        const auto v = graph.vertex_index(id);
        if (!v) throw Error(ErrorCode::Validation, where + ": unknown vertex " + id);
        if (!poly.is_string()) bad(where + ": restriction at " + id + " must be a string");
        const auto p = LinFrac::parse(poly.get<std::string>(), graph.m).as_polynomial();
        if (!p) throw Error(ErrorCode::Validation, where + ": restriction at " + id + " is not a polynomial");
        ins.cls.restrictions[*v] = *p;
      }
    }
    const ValidationReport report = validate_equiv_class(graph, ins.cls);
    if (!report.ok()) throw Error(ErrorCode::Validation, where + ": " + report.to_string());
    out.push_back(std::move(ins));
  }
  return out;
}

json insertions_json(const GkmGraph& graph, const std::vector<Insertion>& insertions) {
  json out = json::array();
  for (const auto& ins : insertions) {
    json r = json::object();
    for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
      if (!ins.cls.restrictions[v].is_zero()) r[graph.vertices[v].id] = ins.cls.restrictions[v].to_string();
    }
    out.push_back({{"a", ins.psi}, {"degree", ins.cls.degree}, {"restrictions", std::move(r)}});
  }
  return out;
}

std::string limit_string(const LinFrac& value) {
  const auto limit = nonequivariant_limit(value);
  return limit ? limit->get_str() : "non-polynomial";
}

}  // namespace

std::vector<Insertion> parse_insertions(const GkmGraph& graph, const std::string& text) {
  return insertions_from_json(graph, parse_document(text, "insertion file"));
}

std::string insertions_to_json(const GkmGraph& graph, const std::vector<Insertion>& insertions) {
  return insertions_json(graph, insertions).dump(2);
}

ComputeRequest parse_request(const GkmGraph& graph, const std::string& text) {
  const json doc = parse_document(text, "request");
  if (!doc.is_object()) bad("request: expected an object");
  ComputeRequest req;
  if (doc.contains("source")) req.source = doc.at("source").get<std::string>();
  if (doc.contains("genus")) req.genus = static_cast<int>(integer_field(doc, "genus", "request"));
  if (req.genus < 0) throw Error(ErrorCode::Validation, "request: negative genus");
  if (!doc.contains("beta") || !doc.at("beta").is_array()) bad("request: 'beta' must be an integer array");
  for (const auto& b : doc.at("beta")) {
    if (!b.is_number_integer()) bad("request: 'beta' must be an integer array");
    req.beta.push_back(b.get<long long>());
  }
  if (req.beta.size() != graph.class_rank) {
    throw Error(ErrorCode::Validation, "request: beta has " + std::to_string(req.beta.size()) +
                                           " entries, the class lattice has rank " +
                                           std::to_string(graph.class_rank));
  }
  if (doc.contains("insertions")) req.insertions = insertions_from_json(graph, doc.at("insertions"));
  const std::string mode = doc.value("mode", std::string("symbolic"));
  if (mode == "symbolic") {
    req.mode = Mode::Symbolic;
  } else if (mode == "specialize") {
    req.mode = Mode::Specialize;
  } else {
    throw Error(ErrorCode::Validation, "request: mode must be symbolic or specialize");
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) bad("request: 'seed' must be a nonnegative integer");
    req.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("genus_cutoff") && !doc.at("genus_cutoff").is_null()) {
    const long long k = integer_field(doc, "genus_cutoff", "request");
    if (k < 0) throw Error(ErrorCode::Validation, "request: negative genus cutoff");
    req.genus_cutoff = static_cast<int>(k);
  }
  if (doc.contains("workers")) {
    const long long w = integer_field(doc, "workers", "request");
    if (w < 1) throw Error(ErrorCode::Validation, "request: workers must be positive");
    req.workers = static_cast<unsigned>(w);
  }
  req.verbose = doc.value("verbose", false);
  return req;
}

std::string run_compute(const GkmGraph& graph, const ComputeRequest& req, HodgeEngine& engine) {
  const auto start = std::chrono::steady_clock::now();
  const ValidationReport report = validate_gkm(graph);
  if (!report.ok()) throw Error(ErrorCode::Validation, "graph fails validation:\n" + report.to_string());
  for (const auto& ins : req.insertions) {
    const ValidationReport r = validate_equiv_class(graph, ins.cls);
    if (!r.ok()) throw Error(ErrorCode::Validation, "insertion fails validation:\n" + r.to_string());
  }
  const long long expected = expected_degree(graph, req.genus, req.beta, req.insertions);

  ComputeOptions opt;
  opt.mode = req.mode;
  opt.seed = req.seed;
  opt.workers = req.workers;
  opt.keep_contributions = req.verbose;
  opt.expect_constant = graph.is_compact_target() && expected == 0;
  const InvariantResult res = equivariant_invariant(graph, req.genus, req.beta, req.insertions, engine, opt);

  json out;
  json echo;
  echo["source"] = req.source;
  echo["genus"] = req.genus;
  echo["n"] = req.insertions.size();
  echo["beta"] = req.beta;
  echo["insertions"] = insertions_json(graph, req.insertions);
  echo["mode"] = req.mode == Mode::Symbolic ? "symbolic" : "specialize";
  if (req.mode == Mode::Specialize) echo["seed"] = req.seed;
  if (req.genus_cutoff) echo["genus_cutoff"] = *req.genus_cutoff;
  out["request"] = std::move(echo);
  out["graphs"] = {{"unmarked", res.unmarked_graphs}, {"marked", res.marked_graphs.get_str()}};
  out["expected_degree"] = expected;

  if (res.symbolic) {
    out["total"] = res.symbolic->to_string();
    out["nonequivariant_limit"] = limit_string(*res.symbolic);
    std::optional<int> deg;
    if (!res.symbolic->is_zero()) deg = res.symbolic->homogeneous_degree();
    out["homogeneous_degree"] = deg ? json(*deg) : json(nullptr);
  } else {
    out["total"] = res.value->get_str();
    out["nonequivariant_limit"] = opt.expect_constant ? json(res.value->get_str()) : json(nullptr);
    json pts = json::array();
    for (const auto& p : res.points) {
      json coords = json::array();
      for (const auto& x : p) coords.push_back(x.get_str());
      pts.push_back(std::move(coords));
    }
    out["points"] = std::move(pts);
  }

  if (req.genus_cutoff) {
    json series = json::array();
    for (const auto& [g, v] : genus_series(graph, req.beta, req.insertions, *req.genus_cutoff, engine, req.workers)) {
      series.push_back({{"genus", g}, {"total", v.to_string()}, {"nonequivariant_limit", limit_string(v)}});
    }
    out["series"] = std::move(series);
  }

  if (req.verbose) {
    json parts = json::array();
    for (std::size_t i = 0; i < res.graph_ids.size(); ++i) {
      parts.push_back({{"graph", res.graph_ids[i]}, {"value", res.contributions[i]}});
    }
    out["contributions"] = std::move(parts);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    out["timing_ms"] = ms.count();
  }
  return out.dump(2) + "\n";
}

std::string graph_listing(const GkmGraph& graph, int genus, int n, const std::vector<long long>& beta) {
  const ValidationReport report = validate_gkm(graph);
  if (!report.ok()) throw Error(ErrorCode::Validation, "graph fails validation:\n" + report.to_string());
  if (std::all_of(beta.begin(), beta.end(), [](long long b) { return b == 0; })) {
    throw Error(ErrorCode::Validation, "curve class 0 is not supported");
  }
  std::ostringstream out;
  for (const auto& dg : enumerate_decorated_graphs(graph, genus, n, beta)) {
    out << "aut=" << dg.automorphisms << " A=" << dg.a_order().get_str() << " g=" << dg.genus() << " | "
        << dg.canonical << '\n';
  }
  return out.str();
}

}  // namespace gwloc
