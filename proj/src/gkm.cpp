#include "gwloc/gkm.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace gwloc {

int CompactEdgeData::side_of(std::size_t vertex) const {
  if (endpoints[0] == vertex) return 0;
  if (endpoints[1] == vertex) return 1;
  throw Error(ErrorCode::InvalidArgument, "vertex is not an endpoint of edge " + id);
}

const LinearForm& GkmGraph::weight(const FlagRef& flag, std::size_t vertex) const {
  if (flag.compact) {
    const auto& e = compact_edges.at(flag.edge);
    return e.weights[e.side_of(vertex)];
  }
  return noncompact_edges.at(flag.edge).weight;
}

void GkmGraph::rebuild_flags() {
  for (auto& v : vertices) v.flags.clear();
  for (std::size_t i = 0; i < compact_edges.size(); ++i) {
    for (std::size_t end : compact_edges[i].endpoints) {
      vertices.at(end).flags.push_back({true, i});
    }
  }
  for (std::size_t i = 0; i < noncompact_edges.size(); ++i) {
    vertices.at(noncompact_edges[i].endpoint).flags.push_back({false, i});
  }
}

std::optional<std::size_t> GkmGraph::vertex_index(const std::string& id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].id == id) return i;
  }
  return std::nullopt;
}

std::optional<FlagRef> GkmGraph::flag_by_id(const std::string& id) const {
  for (std::size_t i = 0; i < compact_edges.size(); ++i) {
    if (compact_edges[i].id == id) return FlagRef{true, i};
  }
  for (std::size_t i = 0; i < noncompact_edges.size(); ++i) {
    if (noncompact_edges[i].id == id) return FlagRef{false, i};
  }
  return std::nullopt;
}

const std::string& GkmGraph::flag_id(const FlagRef& flag) const {
  return flag.compact ? compact_edges.at(flag.edge).id : noncompact_edges.at(flag.edge).id;
}

Rational GkmGraph::ample_value(std::span<const long long> beta) const {
  Rational acc = 0;
  for (std::size_t i = 0; i < beta.size() && i < ample_functional.size(); ++i) {
    acc += ample_functional[i] * Rational(Integer(static_cast<long>(beta[i])));
  }
  return acc;
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) out << v.kind << " at " << v.location << ": " << v.message << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Validation

namespace {

bool weight_ok(const LinearForm& w, std::size_t m) {
  return w.nvars() == m && w.is_integral() && !w.is_zero();
}

void check_connection(const GkmGraph& g, std::size_t index, ValidationReport& report) {
  const auto& e = g.compact_edges[index];
  const std::string where = "edge " + e.id;
  const std::size_t expected = g.r - 1;
  if (e.connection.size() != expected || e.normal_degrees.size() != expected) {
    report.violations.push_back({"connection", where,
                                 "expected " + std::to_string(expected) +
                                     " matched normal directions with degrees"});
    return;
  }
  std::set<FlagRef> left, right;
  const FlagRef self{true, index};
  const LinearForm& w = e.weights[0];
  for (std::size_t i = 0; i < expected; ++i) {
    const auto& [a, b] = e.connection[i];
    auto incident = [&](std::size_t v, const FlagRef& f) {
      const auto& flags = g.vertices[v].flags;
      return f != self && std::find(flags.begin(), flags.end(), f) != flags.end();
    };
    if (!incident(e.endpoints[0], a) || !incident(e.endpoints[1], b)) {
      report.violations.push_back({"connection", where, "pair " + std::to_string(i) +
                                                            " does not join normal flags of the endpoints"});
      return;
    }
    left.insert(a);
    right.insert(b);
    const LinearForm expect =
        g.weight(a, e.endpoints[0]) - Rational(e.normal_degrees[i]) * w;
    if (!(g.weight(b, e.endpoints[1]) == expect)) {
      report.violations.push_back(
          {"axial-2b", where + " flags " + g.flag_id(a) + "/" + g.flag_id(b),
           "w(e_i',s') = " + g.weight(b, e.endpoints[1]).to_string() + " but w(e_i,s) - a_i w(e,s) = " +
               expect.to_string()});
    }
  }
  if (left.size() != expected || right.size() != expected) {
    report.violations.push_back({"connection", where, "matching is not a bijection"});
  }
}

}  // namespace

ValidationReport validate_gkm(const GkmGraph& g) {
  ValidationReport report;
  auto add = [&](std::string kind, std::string where, std::string msg) {
    report.violations.push_back({std::move(kind), std::move(where), std::move(msg)});
  };
  if (g.vertices.empty()) add("structure", "graph", "vertex set is empty");
  if (g.m == 0) add("structure", "graph", "torus rank m must be positive");
  if (g.ample_functional.size() != g.class_rank) {
    add("structure", "graph", "ample functional length differs from class rank");
  }

  bool structure_ok = true;
  for (const auto& e : g.compact_edges) {
    const std::string where = "edge " + e.id;
    if (e.endpoints[0] >= g.vertices.size() || e.endpoints[1] >= g.vertices.size()) {
      add("structure", where, "endpoint out of range");
      structure_ok = false;
      continue;
    }
    if (e.endpoints[0] == e.endpoints[1]) {
      add("structure", where, "compact edge endpoints must differ");
      structure_ok = false;
    }
    for (int s = 0; s < 2; ++s) {
      if (!weight_ok(e.weights[s], g.m)) {
        add("weight", where + " at " + g.vertices[e.endpoints[s]].id,
            "weight must be a nonzero integer vector of length m");
        structure_ok = false;
      }
    }
    if (structure_ok && !(e.weights[0] + e.weights[1]).is_zero()) {
      add("axial-2a", where, "w(e,s) + w(e,s') = " + (e.weights[0] + e.weights[1]).to_string() + " != 0");
    }
    if (e.curve_class.size() != g.class_rank) {
      add("class", where, "curve class has wrong length");
    } else if (std::all_of(e.curve_class.begin(), e.curve_class.end(), [](long long c) { return c == 0; })) {
      add("class", where, "curve class is zero");
    } else if (g.ample_value(e.curve_class) <= 0) {
      add("class", where, "ample functional is not positive on the curve class");
    }
  }
  for (const auto& e : g.noncompact_edges) {
    if (e.endpoint >= g.vertices.size()) {
      add("structure", "edge " + e.id, "endpoint out of range");
      structure_ok = false;
    } else if (!weight_ok(e.weight, g.m)) {
      add("weight", "edge " + e.id, "weight must be a nonzero integer vector of length m");
      structure_ok = false;
    }
  }
  if (!structure_ok) return report;

  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& vd = g.vertices[v];
    const std::string where = "vertex " + vd.id;
    if (vd.flags.size() != g.r) {
      add("valence", where, "has " + std::to_string(vd.flags.size()) + " flags, expected r = " +
                                std::to_string(g.r));
    }
    for (std::size_t i = 0; i < vd.flags.size(); ++i) {
      for (std::size_t j = i + 1; j < vd.flags.size(); ++j) {
        if (g.weight(vd.flags[i], v).is_parallel_to(g.weight(vd.flags[j], v))) {
          add("gkm-hypothesis", where + " flags " + g.flag_id(vd.flags[i]) + "," + g.flag_id(vd.flags[j]),
              "weights " + g.weight(vd.flags[i], v).to_string() + " and " +
                  g.weight(vd.flags[j], v).to_string() + " are linearly dependent");
        }
      }
    }
  }
  if (!report.ok()) return report;
  for (std::size_t i = 0; i < g.compact_edges.size(); ++i) check_connection(g, i, report);
  return report;
}

GkmGraph strip_connection(GkmGraph graph) {
  for (auto& e : graph.compact_edges) {
    e.connection.clear();
    e.normal_degrees.clear();
  }
  return graph;
}

GkmGraph infer_connection(GkmGraph g) {
  for (std::size_t index = 0; index < g.compact_edges.size(); ++index) {
    auto& e = g.compact_edges[index];
    const FlagRef self{true, index};
    const LinearForm& w = e.weights[0];
    e.connection.clear();
    e.normal_degrees.clear();
    std::set<FlagRef> used;
    for (const FlagRef& a : g.vertices[e.endpoints[0]].flags) {
      if (a == self) continue;
      std::optional<std::pair<FlagRef, Rational>> match;
      for (const FlagRef& b : g.vertices[e.endpoints[1]].flags) {
        if (b == self) continue;
        const LinearForm diff = g.weight(a, e.endpoints[0]) - g.weight(b, e.endpoints[1]);
        std::optional<Rational> deg = diff.is_zero() ? std::optional<Rational>(Rational(0)) : diff.ratio_to(w);
        if (!deg) continue;
        if (match) {
          throw Error(ErrorCode::Ambiguous, "edge " + e.id + ": flag " + g.flag_id(a) +
                                                " matches both " + g.flag_id(match->first) + " and " +
                                                g.flag_id(b));
        }
        match.emplace(b, *deg);
      }
      if (!match) {
        throw Error(ErrorCode::InvalidArgument,
                    "edge " + e.id + ": no direction at the far endpoint matches flag " + g.flag_id(a));
      }
      if (match->second.get_den() != 1) {
        throw Error(ErrorCode::NoIntegerDegree, "edge " + e.id + ": normal degree " +
                                                    match->second.get_str() + " is not an integer");
      }
      if (!used.insert(match->first).second) {
        throw Error(ErrorCode::Ambiguous,
                    "edge " + e.id + ": direction " + g.flag_id(match->first) + " matched twice");
      }
      e.connection.emplace_back(a, match->first);
      e.normal_degrees.push_back(static_cast<int>(match->second.get_num().get_si()));
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Builders

namespace {

LinearForm unit_difference(std::size_t m, std::size_t plus, std::size_t minus) {
  return LinearForm::variable(m, plus) - LinearForm::variable(m, minus);
}

std::string subset_id(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

}  // namespace

GkmGraph build_projective_space(int r) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "projective space needs r >= 1");
  GkmGraph g;
  g.m = static_cast<std::size_t>(r) + 1;
  g.r = static_cast<std::size_t>(r);
  g.class_rank = 1;
  g.ample_functional = {Rational(1)};
  for (int i = 0; i <= r; ++i) g.vertices.push_back({std::to_string(i), {}});
  for (int i = 0; i <= r; ++i) {
    for (int j = i + 1; j <= r; ++j) {
      CompactEdgeData e;
      e.id = std::to_string(i) + "-" + std::to_string(j);
      e.endpoints[0] = static_cast<std::size_t>(i);
      e.endpoints[1] = static_cast<std::size_t>(j);
      e.weights[0] = unit_difference(g.m, j, i);
      e.weights[1] = unit_difference(g.m, i, j);
      e.curve_class = {1};
      g.compact_edges.push_back(std::move(e));
    }
  }
  g.rebuild_flags();
  return infer_connection(std::move(g));
}

GkmGraph build_grassmannian(int k, int m) {
  if (k < 1 || k >= m) throw Error(ErrorCode::InvalidArgument, "grassmannian needs 1 <= k < m");
  GkmGraph g;
  g.m = static_cast<std::size_t>(m);
  g.r = static_cast<std::size_t>(k * (m - k));
  g.class_rank = 1;
  g.ample_functional = {Rational(1)};

  // k-subsets of {1..m} in lexicographic order.
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur(k);
  std::iota(cur.begin(), cur.end(), 1);
  while (true) {
    subsets.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == m - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  for (const auto& s : subsets) g.vertices.push_back({subset_id(s), {}});

  for (std::size_t a = 0; a < subsets.size(); ++a) {
    for (std::size_t b = a + 1; b < subsets.size(); ++b) {
      std::vector<int> only_a, only_b;
      std::set_difference(subsets[a].begin(), subsets[a].end(), subsets[b].begin(), subsets[b].end(),
                          std::back_inserter(only_a));
      std::set_difference(subsets[b].begin(), subsets[b].end(), subsets[a].begin(), subsets[a].end(),
                          std::back_inserter(only_b));
      if (only_a.size() != 1) continue;
      // The line through C^J and C^J' moves the j1 coordinate to j2.
      const auto j1 = static_cast<std::size_t>(only_a[0] - 1);
      const auto j2 = static_cast<std::size_t>(only_b[0] - 1);
      CompactEdgeData e;
      e.id = g.vertices[a].id + "-" + g.vertices[b].id;
      e.endpoints[0] = a;
      e.endpoints[1] = b;
      e.weights[0] = unit_difference(g.m, j2, j1);
      e.weights[1] = unit_difference(g.m, j1, j2);
      e.curve_class = {1};
      g.compact_edges.push_back(std::move(e));
    }
  }
  g.rebuild_flags();
  return infer_connection(std::move(g));
}

GkmGraph build_local_line(const std::vector<int>& a) {
  GkmGraph g;
  g.r = a.size() + 1;
  g.m = g.r;
  g.class_rank = 1;
  g.ample_functional = {Rational(1)};
  g.vertices = {{"0", {}}, {"inf", {}}};
  CompactEdgeData line;
  line.id = "line";
  line.endpoints[0] = 0;
  line.endpoints[1] = 1;
  line.weights[0] = LinearForm::variable(g.m, 0);
  line.weights[1] = -line.weights[0];
  line.curve_class = {1};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const LinearForm fiber = LinearForm::variable(g.m, i + 1);
    g.noncompact_edges.push_back({"fiber" + std::to_string(i + 1) + "@0", 0, fiber});
    g.noncompact_edges.push_back(
        {"fiber" + std::to_string(i + 1) + "@inf", 1, fiber - Rational(a[i]) * line.weights[0]});
    line.connection.emplace_back(FlagRef{false, 2 * i}, FlagRef{false, 2 * i + 1});
    line.normal_degrees.push_back(a[i]);
  }
  g.compact_edges.push_back(std::move(line));
  g.rebuild_flags();
  if (!validate_gkm(g).ok()) {
    throw Error(ErrorCode::Validation, "local line builder produced an invalid graph");
  }
  return g;
}

GkmGraph build_product(const GkmGraph& a, const GkmGraph& b) {
  GkmGraph g;
  g.m = a.m + b.m;
  g.r = a.r + b.r;
  g.class_rank = a.class_rank + b.class_rank;
  g.ample_functional = a.ample_functional;
  g.ample_functional.insert(g.ample_functional.end(), b.ample_functional.begin(), b.ample_functional.end());

  auto embed = [&](const LinearForm& w, bool first) {
    std::vector<Rational> c(g.m, Rational(0));
    const std::size_t offset = first ? 0 : a.m;
    for (std::size_t i = 0; i < w.nvars(); ++i) c[offset + i] = w[i];
    return LinearForm(std::move(c));
  };
  auto vid = [&](std::size_t i, std::size_t j) { return i * b.vertices.size() + j; };
  for (const auto& va : a.vertices) {
    for (const auto& vb : b.vertices) g.vertices.push_back({"(" + va.id + "," + vb.id + ")", {}});
  }

  const std::size_t a_edges = a.compact_edges.size() * b.vertices.size();
  const std::size_t a_rays = a.noncompact_edges.size() * b.vertices.size();
  // Product flag for (factor flag, other-factor vertex).
  auto flag_a = [&](const FlagRef& f, std::size_t vb) {
    return f.compact ? FlagRef{true, f.edge * b.vertices.size() + vb}
                     : FlagRef{false, f.edge * b.vertices.size() + vb};
  };
  auto flag_b = [&](std::size_t va, const FlagRef& f) {
    return f.compact ? FlagRef{true, a_edges + va * b.compact_edges.size() + f.edge}
                     : FlagRef{false, a_rays + va * b.noncompact_edges.size() + f.edge};
  };
  auto pad_class = [&](const std::vector<long long>& c, bool first) {
    std::vector<long long> out(g.class_rank, 0);
    std::copy(c.begin(), c.end(), out.begin() + (first ? 0 : static_cast<long>(a.class_rank)));
    return out;
  };

  for (const auto& ea : a.compact_edges) {
    for (std::size_t vb = 0; vb < b.vertices.size(); ++vb) {
      CompactEdgeData e;
      e.id = "(" + ea.id + "," + b.vertices[vb].id + ")";
      for (int s = 0; s < 2; ++s) {
        e.endpoints[s] = vid(ea.endpoints[s], vb);
        e.weights[s] = embed(ea.weights[s], true);
      }
      for (std::size_t i = 0; i < ea.connection.size(); ++i) {
        e.connection.emplace_back(flag_a(ea.connection[i].first, vb), flag_a(ea.connection[i].second, vb));
        e.normal_degrees.push_back(ea.normal_degrees[i]);
      }
      for (const FlagRef& f : b.vertices[vb].flags) {
        e.connection.emplace_back(flag_b(ea.endpoints[0], f), flag_b(ea.endpoints[1], f));
        e.normal_degrees.push_back(0);
      }
      e.curve_class = pad_class(ea.curve_class, true);
      g.compact_edges.push_back(std::move(e));
    }
  }
  for (std::size_t va = 0; va < a.vertices.size(); ++va) {
    for (const auto& eb : b.compact_edges) {
      CompactEdgeData e;
      e.id = "(" + a.vertices[va].id + "," + eb.id + ")";
      for (int s = 0; s < 2; ++s) {
        e.endpoints[s] = vid(va, eb.endpoints[s]);
        e.weights[s] = embed(eb.weights[s], false);
      }
      for (const FlagRef& f : a.vertices[va].flags) {
        e.connection.emplace_back(flag_a(f, eb.endpoints[0]), flag_a(f, eb.endpoints[1]));
        e.normal_degrees.push_back(0);
      }
      for (std::size_t i = 0; i < eb.connection.size(); ++i) {
        e.connection.emplace_back(flag_b(va, eb.connection[i].first), flag_b(va, eb.connection[i].second));
        e.normal_degrees.push_back(eb.normal_degrees[i]);
      }
      e.curve_class = pad_class(eb.curve_class, false);
      g.compact_edges.push_back(std::move(e));
    }
  }
  for (const auto& ea : a.noncompact_edges) {
    for (std::size_t vb = 0; vb < b.vertices.size(); ++vb) {
      g.noncompact_edges.push_back({"(" + ea.id + "," + b.vertices[vb].id + ")", vid(ea.endpoint, vb),
                                    embed(ea.weight, true)});
    }
  }
  for (std::size_t va = 0; va < a.vertices.size(); ++va) {
    for (const auto& eb : b.noncompact_edges) {
      g.noncompact_edges.push_back({"(" + a.vertices[va].id + "," + eb.id + ")", vid(va, eb.endpoint),
                                    embed(eb.weight, false)});
    }
  }
  g.rebuild_flags();
  return g;
}

// ---------------------------------------------------------------------------
// Subtorus restriction

namespace {

LinearForm apply_rho(const std::vector<std::vector<long long>>& rho, const LinearForm& w) {
  std::vector<Rational> out;
  out.reserve(rho.size());
  for (const auto& row : rho) {
    if (row.size() != w.nvars()) {
      throw Error(ErrorCode::InvalidArgument, "subtorus matrix has wrong number of columns");
    }
    Rational acc = 0;
    for (std::size_t i = 0; i < row.size(); ++i) acc += Rational(Integer(static_cast<long>(row[i]))) * w[i];
    out.push_back(acc);
  }
  return LinearForm(std::move(out));
}

}  // namespace

GkmGraph restrict_subtorus(const GkmGraph& graph, const std::vector<std::vector<long long>>& rho) {
  if (rho.empty()) throw Error(ErrorCode::InvalidArgument, "subtorus matrix has no rows");
  GkmGraph g = graph;
  g.m = rho.size();
  for (auto& e : g.compact_edges) {
    for (auto& w : e.weights) w = apply_rho(rho, w);
  }
  for (auto& e : g.noncompact_edges) e.weight = apply_rho(rho, e.weight);
  ValidationReport report = validate_gkm(g);
  if (!report.ok()) {
    throw Error(ErrorCode::DegenerateSubtorus, "restricted graph is not GKM:\n" + report.to_string());
  }
  return g;
}

std::vector<LinearForm> subtorus_substitution(const std::vector<std::vector<long long>>& rho) {
  if (rho.empty()) throw Error(ErrorCode::InvalidArgument, "subtorus matrix has no rows");
  const std::size_t m = rho.front().size();
  std::vector<LinearForm> images;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Rational> c;
    for (const auto& row : rho) c.emplace_back(Integer(static_cast<long>(row.at(i))));
    images.emplace_back(std::move(c));
  }
  return images;
}

// ---------------------------------------------------------------------------
// Chern data

std::vector<Rational> chern_functional(const GkmGraph& g) {
  const std::size_t b = g.class_rank;
  // Rows [c(e) | 2 + sum a_i(e)], reduced to echelon form over Q.
  std::vector<std::vector<Rational>> rows;
  for (const auto& e : g.compact_edges) {
    std::vector<Rational> row;
    for (long long c : e.curve_class) row.emplace_back(Integer(static_cast<long>(c)));
    row.resize(b, Rational(0));
    row.emplace_back(2 + std::accumulate(e.normal_degrees.begin(), e.normal_degrees.end(), 0));
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < b && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const Rational inv = 1 / rows[rank][col];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = 0; j <= b; ++j) rows[i][j] -= f * rows[rank][j];
    }
    pivots.push_back(col);
    ++rank;
  }
  for (std::size_t i = rank; i < rows.size(); ++i) {
    if (rows[i][b] != 0) {
      throw Error(ErrorCode::InconsistentChernData,
                  "no linear functional satisfies kappa(c(e)) = 2 + sum a_i(e) on every edge");
    }
  }
  std::vector<Rational> kappa(b, Rational(0));
  for (std::size_t i = 0; i < rank; ++i) kappa[pivots[i]] = rows[i][b];
  return kappa;
}

long long virtual_dim(const GkmGraph& graph, int genus, int n, std::span<const long long> beta) {
  const auto kappa = chern_functional(graph);
  Rational c1 = 0;
  for (std::size_t i = 0; i < kappa.size() && i < beta.size(); ++i) {
    c1 += kappa[i] * Rational(Integer(static_cast<long>(beta[i])));
  }
  if (c1.get_den() != 1) {
    throw Error(ErrorCode::InconsistentChernData, "c_1 pairing with beta is not an integer");
  }
  return c1.get_num().get_si() + (static_cast<long long>(graph.r) - 3) * (1 - genus) + n;
}

ValidationReport validate_equiv_class(const GkmGraph& g, const EquivClass& cls) {
  ValidationReport report;
  if (cls.restrictions.size() != g.vertices.size()) {
    report.violations.push_back({"class", "insertion", "needs one restriction per fixed point"});
    return report;
  }
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& p = cls.restrictions[v];
    if (p.is_zero()) continue;
    if (p.nvars() != g.m) {
      report.violations.push_back({"class", "vertex " + g.vertices[v].id, "restriction has wrong ring"});
      continue;
    }
    if (p.homogeneous_degree() != cls.degree) {
      report.violations.push_back({"degree", "vertex " + g.vertices[v].id,
                                   "restriction is not homogeneous of degree " + std::to_string(cls.degree)});
    }
  }
  if (!report.ok()) return report;
  for (const auto& e : g.compact_edges) {
    const SparsePoly diff = cls.restrictions[e.endpoints[0]] - cls.restrictions[e.endpoints[1]];
    if (!divide_by_linear(diff, e.weights[0])) {
      report.violations.push_back({"gkm-compatibility", "edge " + e.id,
                                   "restrictions at the endpoints differ by a non-multiple of the edge weight"});
    }
  }
  return report;
}

EquivClass point_class(const GkmGraph& g, std::size_t vertex) {
  if (vertex >= g.vertices.size()) throw Error(ErrorCode::InvalidArgument, "point class: no such vertex");
  EquivClass cls{std::vector<SparsePoly>(g.vertices.size(), SparsePoly(g.m)), static_cast<int>(g.r)};
  SparsePoly e = SparsePoly::constant(g.m, 1);
  for (const auto& f : g.vertices[vertex].flags) e = e * SparsePoly::from_linear(g.weight(f, vertex));
  cls.restrictions[vertex] = std::move(e);
  return cls;
}

EquivClass unit_class(const GkmGraph& g) {
  return EquivClass{std::vector<SparsePoly>(g.vertices.size(), SparsePoly::constant(g.m, 1)), 0};
}

}  // namespace gwloc
