#include <charconv>
#include <regex>

#include <json.hpp>

#include "gwloc/gkm.hpp"

namespace gwloc {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::Parse, "graph file: " + msg); }

json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(Integer(static_cast<long>(j.get<long long>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad("expected an integer or a rational string");
}

json weight_json(const LinearForm& w) {
  json out = json::array();
  for (const auto& c : w.coeffs()) out.push_back(c.get_num().get_si());
  return out;
}

LinearForm weight_from_json(const json& j, std::size_t m, const std::string& where) {
  if (!j.is_array() || j.size() != m) bad(where + ": weight must be an array of m integers");
  std::vector<long long> c;
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad(where + ": weights must be integers");
    c.push_back(x.get<long long>());
  }
  return LinearForm::from_ints(c);
}

std::string id_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  bad(where + ": ids must be strings or integers");
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) bad(where + ": missing field '" + key + "'");
  return obj.at(key);
}

}  // namespace

std::string graph_to_json(const GkmGraph& g) {
  json doc;
  doc["m"] = g.m;
  doc["r"] = g.r;
  doc["class_rank"] = g.class_rank;
  doc["ample_functional"] = json::array();
  for (const auto& q : g.ample_functional) doc["ample_functional"].push_back(rational_json(q));
  doc["vertices"] = json::array();
  for (const auto& v : g.vertices) doc["vertices"].push_back({{"id", v.id}});
  doc["compact_edges"] = json::array();
  for (const auto& e : g.compact_edges) {
    json je;
    je["id"] = e.id;
    je["endpoints"] = {g.vertices[e.endpoints[0]].id, g.vertices[e.endpoints[1]].id};
    je["weights"] = json::object();
    for (int s = 0; s < 2; ++s) je["weights"][g.vertices[e.endpoints[s]].id] = weight_json(e.weights[s]);
    je["connection"] = json::array();
    for (const auto& [a, b] : e.connection) je["connection"].push_back({g.flag_id(a), g.flag_id(b)});
    je["normal_degrees"] = e.normal_degrees;
    je["class"] = e.curve_class;
    doc["compact_edges"].push_back(std::move(je));
  }
  doc["noncompact_edges"] = json::array();
  for (const auto& e : g.noncompact_edges) {
    doc["noncompact_edges"].push_back(
        {{"id", e.id}, {"endpoint", g.vertices[e.endpoint].id}, {"weight", weight_json(e.weight)}});
  }
  return doc.dump(2) + "\n";
}

GkmGraph graph_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  GkmGraph g;
  auto count = [&](const char* key) {
    const json& j = field(doc, key, "graph");
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
      bad(std::string("'") + key + "' must be a nonnegative integer");
    }
    return j.get<std::size_t>();
  };
  g.m = count("m");
  g.r = count("r");
  g.class_rank = count("class_rank");
  for (const auto& q : field(doc, "ample_functional", "graph")) g.ample_functional.push_back(rational_from_json(q));

  for (const auto& v : field(doc, "vertices", "graph")) {
    const std::string id = id_from_json(field(v, "id", "vertex"), "vertex");
    if (g.vertex_index(id)) bad("duplicate vertex id " + id);
    g.vertices.push_back({id, {}});
  }
  auto vertex = [&](const json& j, const std::string& where) {
    const std::string id = id_from_json(j, where);
    auto idx = g.vertex_index(id);
    if (!idx) bad(where + ": unknown vertex " + id);
    return *idx;
  };

  bool any_missing_connection = false;
  std::vector<json> pending_connections;
  const json empty_edges = json::array();
  for (const auto& je : field(doc, "compact_edges", "graph")) {
    CompactEdgeData e;
    e.id = id_from_json(field(je, "id", "compact edge"), "compact edge");
    const std::string where = "edge " + e.id;
    const json& ends = field(je, "endpoints", where);
    if (!ends.is_array() || ends.size() != 2) bad(where + ": endpoints must list two vertices");
    const json& weights = field(je, "weights", where);
    for (int s = 0; s < 2; ++s) {
      e.endpoints[s] = vertex(ends[s], where);
      const std::string& vid = g.vertices[e.endpoints[s]].id;
      if (!weights.is_object() || !weights.contains(vid)) bad(where + ": missing weight at " + vid);
      e.weights[s] = weight_from_json(weights.at(vid), g.m, where);
    }
    for (const auto& c : field(je, "class", where)) {
      if (!c.is_number_integer()) bad(where + ": class entries must be integers");
      e.curve_class.push_back(c.get<long long>());
    }
    if (je.contains("normal_degrees")) {
      for (const auto& a : je.at("normal_degrees")) {
        if (!a.is_number_integer()) bad(where + ": normal degrees must be integers");
        e.normal_degrees.push_back(a.get<int>());
      }
    }
    pending_connections.push_back(je.contains("connection") ? je.at("connection") : json::array());
    g.compact_edges.push_back(std::move(e));
  }
  for (const auto& je : doc.contains("noncompact_edges") ? doc.at("noncompact_edges") : empty_edges) {
    NoncompactEdgeData e;
    e.id = id_from_json(field(je, "id", "noncompact edge"), "noncompact edge");
    e.endpoint = vertex(field(je, "endpoint", "edge " + e.id), "edge " + e.id);
    e.weight = weight_from_json(field(je, "weight", "edge " + e.id), g.m, "edge " + e.id);
    g.noncompact_edges.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < g.compact_edges.size(); ++i) {
    for (std::size_t j = 0; j < g.noncompact_edges.size(); ++j) {
      if (g.compact_edges[i].id == g.noncompact_edges[j].id) bad("duplicate edge id " + g.compact_edges[i].id);
    }
  }
  g.rebuild_flags();

  for (std::size_t i = 0; i < g.compact_edges.size(); ++i) {
    auto& e = g.compact_edges[i];
    const json& conn = pending_connections[i];
    if (conn.empty()) {
      if (g.r > 1) any_missing_connection = true;
      e.normal_degrees.clear();
      continue;
    }
    for (const auto& pair : conn) {
      if (!pair.is_array() || pair.size() != 2) bad("edge " + e.id + ": connection entries are pairs");
      auto a = g.flag_by_id(id_from_json(pair[0], "connection"));
      auto b = g.flag_by_id(id_from_json(pair[1], "connection"));
      if (!a || !b) bad("edge " + e.id + ": connection names an unknown edge");
      e.connection.emplace_back(*a, *b);
    }
  }
  if (any_missing_connection) {
    // Keep explicit connections; infer the rest.
    GkmGraph inferred = infer_connection(g);
    for (std::size_t i = 0; i < g.compact_edges.size(); ++i) {
      if (g.compact_edges[i].connection.empty()) g.compact_edges[i] = inferred.compact_edges[i];
    }
  }
  return g;
}

namespace {

std::vector<int> int_list(const std::string& args, const std::string& spec) {
  std::vector<int> out;
  if (args.empty()) return out;
  std::size_t start = 0;
  while (start <= args.size()) {
    const std::size_t end = std::min(args.find(',', start), args.size());
    const std::string item = args.substr(start, end - start);
    int value = 0;
    const char* first = item.data();
    if (!item.empty() && item[0] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw Error(ErrorCode::InvalidArgument, "bad builder argument '" + item + "' in " + spec);
    }
    out.push_back(value);
    start = end + 1;
  }
  return out;
}

}  // namespace

GkmGraph build_from_spec(const std::string& spec) {
  if (spec.rfind("product:", 0) == 0) {
    const std::string rest = spec.substr(8);
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t star = rest.find('*', start);
      parts.push_back(rest.substr(start, star == std::string::npos ? std::string::npos : star - start));
      if (star == std::string::npos) break;
      start = star + 1;
    }
    if (parts.size() < 2) throw Error(ErrorCode::InvalidArgument, "product needs at least two factors");
    GkmGraph g = build_from_spec(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) g = build_product(g, build_from_spec(parts[i]));
    return g;
  }
  static const std::regex short_projective(R"(P(\d+))");
  std::smatch match;
  if (std::regex_match(spec, match, short_projective)) return build_projective_space(std::stoi(match[1]));

  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const auto values = int_list(args, spec);
  if (name == "projective") {
    if (values.size() != 1) throw Error(ErrorCode::InvalidArgument, "projective takes one argument r");
    return build_projective_space(values[0]);
  }
  if (name == "grassmannian") {
    if (values.size() != 2) throw Error(ErrorCode::InvalidArgument, "grassmannian takes arguments k,m");
    return build_grassmannian(values[0], values[1]);
  }
  if (name == "local-line") return build_local_line(values);
  throw Error(ErrorCode::UnknownBuilder, "unknown builder '" + name + "'");
}

}  // namespace gwloc
