#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "gwloc/localization.hpp"

namespace gwloc {

int DecoratedGraph::genus() const {
  const long loops = static_cast<long>(edges.size()) - static_cast<long>(labels.size()) + 1;
  return static_cast<int>(std::accumulate(genera.begin(), genera.end(), 0L) + loops);
}

std::size_t DecoratedGraph::marking_count() const {
  std::size_t n = 0;
  for (const auto& m : markings) n += m.size();
  return n;
}

Integer DecoratedGraph::a_order() const {
  Integer out = static_cast<long>(automorphisms);
  for (const auto& e : edges) out *= e.degree;
  return out;
}

std::vector<std::size_t> DecoratedGraph::incident_edges(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].ends[0] == v || edges[i].ends[1] == v) out.push_back(i);
  }
  return out;
}

namespace {

using Key = std::vector<long long>;

std::vector<std::size_t> rank_keys(const std::vector<Key>& keys) {
  std::vector<Key> distinct = keys;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::size_t> out(keys.size());
  for (std::size_t v = 0; v < keys.size(); ++v) {
    out[v] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), keys[v]) - distinct.begin());
  }
  return out;
}

std::size_t count_distinct(const std::vector<std::size_t>& colors) {
  std::vector<std::size_t> c = colors;
  std::sort(c.begin(), c.end());
  return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
}

// Encoding of a graph under a labeling pos: vertex -> position.
Key encode(const DecoratedGraph& dg, const std::vector<std::size_t>& pos) {
  const std::size_t n = dg.labels.size();
  std::vector<std::size_t> at(n);
  for (std::size_t v = 0; v < n; ++v) at[pos[v]] = v;
  Key out;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t v = at[p];
    out.push_back(static_cast<long long>(dg.labels[v]));
    out.push_back(dg.genera[v]);
    out.push_back(static_cast<long long>(dg.markings[v].size()));
    for (int m : dg.markings[v]) out.push_back(m);
  }
  std::vector<std::array<long long, 4>> edges;
  for (const auto& e : dg.edges) {
    edges.push_back({static_cast<long long>(pos[e.ends[0]]), static_cast<long long>(pos[e.ends[1]]),
                     static_cast<long long>(e.label), e.degree});
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges) out.insert(out.end(), e.begin(), e.end());
  return out;
}

long long factorial_ll(long long k) {
  long long out = 1;
  for (long long i = 2; i <= k; ++i) out *= i;
  return out;
}

}  // namespace

void canonicalize(const GkmGraph& graph, DecoratedGraph& dg) {
  const std::size_t n = dg.labels.size();
  if (dg.genera.size() != n) dg.genera.resize(n, 0);
  if (dg.markings.size() != n) dg.markings.resize(n);
  for (auto& m : dg.markings) std::sort(m.begin(), m.end());

  // Color refinement.
  std::vector<Key> keys(n);
  for (std::size_t v = 0; v < n; ++v) {
    Key& k = keys[v];
    k = {static_cast<long long>(dg.labels[v]), dg.genera[v], static_cast<long long>(dg.markings[v].size())};
    k.insert(k.end(), dg.markings[v].begin(), dg.markings[v].end());
    std::vector<std::array<long long, 3>> inc;
    for (const auto& e : dg.edges) {
      for (int s = 0; s < 2; ++s) {
        if (e.ends[s] == v) inc.push_back({static_cast<long long>(e.label), e.degree, s});
      }
    }
    std::sort(inc.begin(), inc.end());
    for (const auto& x : inc) k.insert(k.end(), x.begin(), x.end());
  }
  std::vector<std::size_t> color = rank_keys(keys);
  while (true) {
    std::vector<Key> next(n);
    for (std::size_t v = 0; v < n; ++v) {
      next[v] = {static_cast<long long>(color[v])};
      std::vector<std::array<long long, 4>> nb;
      for (const auto& e : dg.edges) {
        for (int s = 0; s < 2; ++s) {
          if (e.ends[s] == v) {
            nb.push_back({static_cast<long long>(color[e.ends[1 - s]]), static_cast<long long>(e.label), e.degree, s});
          }
        }
      }
      std::sort(nb.begin(), nb.end());
      for (const auto& x : nb) next[v].insert(next[v].end(), x.begin(), x.end());
    }
    std::vector<std::size_t> refined = rank_keys(next);
    const bool stable = count_distinct(refined) == count_distinct(color);
    color = std::move(refined);
    if (stable) break;
  }

  // Backtrack over orderings inside each color class.
  std::vector<std::vector<std::size_t>> classes(count_distinct(color));
  for (std::size_t v = 0; v < n; ++v) classes[color[v]].push_back(v);
  std::vector<std::size_t> pos(n);
  std::optional<Key> best;
  std::vector<std::vector<std::size_t>> best_labelings;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t c, std::size_t offset) {
    if (c == classes.size()) {
      Key code = encode(dg, pos);
      if (!best || code < *best) {
        best = std::move(code);
        best_labelings.assign(1, pos);
      } else if (code == *best) {
        best_labelings.push_back(pos);
      }
      return;
    }
    std::vector<std::size_t> members = classes[c];
    std::sort(members.begin(), members.end());
    do {
      for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = offset + i;
      rec(c + 1, offset + members.size());
    } while (std::next_permutation(members.begin(), members.end()));
  };
  rec(0, 0);

  const std::vector<std::size_t>& p0 = best_labelings.front();
  DecoratedGraph out;
  out.labels.resize(n);
  out.genera.resize(n);
  out.markings.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    out.labels[p0[v]] = dg.labels[v];
    out.genera[p0[v]] = dg.genera[v];
    out.markings[p0[v]] = dg.markings[v];
  }
  for (auto e : dg.edges) {
    e.ends[0] = p0[e.ends[0]];
    e.ends[1] = p0[e.ends[1]];
    out.edges.push_back(e);
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.ends[0], a.ends[1], a.label, a.degree) < std::tie(b.ends[0], b.ends[1], b.label, b.degree);
  });
  for (const auto& pk : best_labelings) {
    std::vector<std::size_t> perm(n);
    for (std::size_t v = 0; v < n; ++v) perm[p0[v]] = pk[v];
    out.vertex_automorphisms.push_back(std::move(perm));
  }
  std::sort(out.vertex_automorphisms.begin(), out.vertex_automorphisms.end());
  long long aut = static_cast<long long>(best_labelings.size());
  for (std::size_t i = 0; i < out.edges.size();) {
    std::size_t j = i;
    const auto& a = out.edges[i];
    while (j < out.edges.size() && out.edges[j].ends[0] == a.ends[0] && out.edges[j].ends[1] == a.ends[1] &&
           out.edges[j].label == a.label && out.edges[j].degree == a.degree) {
      ++j;
    }
    aut *= factorial_ll(static_cast<long long>(j - i));
    i = j;
  }
  out.automorphisms = aut;

  std::string text;
  for (std::size_t v = 0; v < n; ++v) {
    if (v) text += ' ';
    text += "v" + std::to_string(v) + ":" + graph.vertices[out.labels[v]].id;
    if (out.genera[v]) text += ",g" + std::to_string(out.genera[v]);
    if (!out.markings[v].empty()) {
      text += ",m{";
      for (std::size_t i = 0; i < out.markings[v].size(); ++i) {
        if (i) text += ',';
        text += std::to_string(out.markings[v][i]);
      }
      text += '}';
    }
  }
  text += " |";
  for (const auto& e : out.edges) {
    text += " v" + std::to_string(e.ends[0]) + "-v" + std::to_string(e.ends[1]) + "[" +
            graph.compact_edges[e.label].id + "]d" + std::to_string(e.degree);
  }
  out.canonical = std::move(text);
  dg = std::move(out);
}

long long automorphism_order(const GkmGraph& graph, const DecoratedGraph& dg) {
  DecoratedGraph copy = dg;
  canonicalize(graph, copy);
  return copy.automorphisms;
}

std::vector<std::vector<std::pair<std::size_t, int>>> edge_multisets(const GkmGraph& graph,
                                                                     std::span<const long long> beta) {
  if (beta.size() != graph.class_rank) {
    throw Error(ErrorCode::InvalidArgument, "curve class has " + std::to_string(beta.size()) +
                                                " entries, the class lattice has rank " +
                                                std::to_string(graph.class_rank));
  }
  const Rational total = graph.ample_value(beta);
  std::vector<std::pair<std::size_t, int>> candidates;
  std::vector<Rational> cost;
  for (std::size_t e = 0; e < graph.compact_edges.size(); ++e) {
    const Rational c = graph.ample_value(graph.compact_edges[e].curve_class);
    if (c <= 0) throw Error(ErrorCode::Validation, "ample functional is not positive on edge " + graph.compact_edges[e].id);
    for (int d = 1; d * c <= total; ++d) {
      candidates.emplace_back(e, d);
      cost.push_back(d * c);
    }
  }
  std::vector<std::vector<std::pair<std::size_t, int>>> out;
  std::vector<std::pair<std::size_t, int>> chosen;
  std::vector<long long> remaining(beta.begin(), beta.end());
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t start, Rational left) {
    if (left == 0) {
      if (std::all_of(remaining.begin(), remaining.end(), [](long long x) { return x == 0; })) out.push_back(chosen);
      return;
    }
    for (std::size_t i = start; i < candidates.size(); ++i) {
      if (cost[i] > left) continue;
      const auto [e, d] = candidates[i];
      const auto& cls = graph.compact_edges[e].curve_class;
      for (std::size_t k = 0; k < remaining.size(); ++k) remaining[k] -= d * cls[k];
      chosen.push_back(candidates[i]);
      rec(i, left - cost[i]);
      chosen.pop_back();
      for (std::size_t k = 0; k < remaining.size(); ++k) remaining[k] += d * cls[k];
    }
  };
  if (total > 0) rec(0, total);
  return out;
}

namespace {

// Restricted growth strings: all set partitions of {0..k-1}.
std::vector<std::vector<int>> set_partitions(std::size_t k) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(k, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int blocks) {
    if (i == k) {
      out.push_back(a);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      a[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

bool connected(std::size_t n, const std::vector<DecoratedGraph::Edge>& edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::size_t comps = n;
  for (const auto& e : edges) {
    const std::size_t a = find(e.ends[0]), b = find(e.ends[1]);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

}  // namespace

std::vector<DecoratedGraph> enumerate_skeletons(const GkmGraph& graph, std::span<const long long> beta,
                                                int max_loops) {
  std::map<std::string, DecoratedGraph> found;
  for (const auto& multiset : edge_multisets(graph, beta)) {
    const std::size_t k = multiset.size();
    // Slots (edge, side) grouped by fixed point.
    std::map<std::size_t, std::vector<std::pair<std::size_t, int>>> slots;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& e = graph.compact_edges[multiset[i].first];
      slots[e.endpoints[0]].emplace_back(i, 0);
      slots[e.endpoints[1]].emplace_back(i, 1);
    }
    std::vector<std::size_t> points;
    std::vector<std::vector<std::vector<int>>> options;
    for (const auto& [sigma, list] : slots) {
      points.push_back(sigma);
      options.push_back(set_partitions(list.size()));
    }
    std::vector<std::size_t> choice(points.size(), 0);
    while (true) {
      DecoratedGraph dg;
      dg.edges.resize(k);
      for (std::size_t i = 0; i < k; ++i) {
        dg.edges[i].label = multiset[i].first;
        dg.edges[i].degree = multiset[i].second;
      }
      for (std::size_t p = 0; p < points.size(); ++p) {
        const auto& blocks = options[p][choice[p]];
        const std::size_t base = dg.labels.size();
        const int nblocks = *std::max_element(blocks.begin(), blocks.end()) + 1;
        for (int b = 0; b < nblocks; ++b) dg.labels.push_back(points[p]);
        const auto& list = slots[points[p]];
        for (std::size_t s = 0; s < list.size(); ++s) {
          dg.edges[list[s].first].ends[list[s].second] = base + static_cast<std::size_t>(blocks[s]);
        }
      }
      const long loops = static_cast<long>(k) - static_cast<long>(dg.labels.size()) + 1;
      if (loops <= max_loops && connected(dg.labels.size(), dg.edges)) {
        dg.genera.assign(dg.labels.size(), 0);
        dg.markings.assign(dg.labels.size(), {});
        canonicalize(graph, dg);
        found.emplace(dg.canonical, std::move(dg));
      }
      std::size_t p = 0;
      while (p < points.size() && ++choice[p] == options[p].size()) choice[p++] = 0;
      if (p == points.size()) break;
    }
  }
  std::vector<DecoratedGraph> out;
  for (auto& [key, dg] : found) out.push_back(std::move(dg));
  return out;
}

namespace {

void compositions(std::size_t parts, int total, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> a(parts, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == parts) {
      a[i] = left;
      visit(a);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      a[i] = x;
      rec(i + 1, left - x);
    }
  };
  if (parts == 0) {
    if (total == 0) visit(a);
    return;
  }
  rec(0, total);
}

}  // namespace

std::vector<DecoratedGraph> enumerate_unmarked(const GkmGraph& graph, int genus, std::span<const long long> beta) {
  if (genus < 0) throw Error(ErrorCode::InvalidArgument, "negative genus");
  std::map<std::string, DecoratedGraph> found;
  for (const auto& skeleton : enumerate_skeletons(graph, beta, genus)) {
    const int spare = genus - skeleton.genus();
    compositions(skeleton.vertex_count(), spare, [&](const std::vector<int>& g) {
      DecoratedGraph dg = skeleton;
      dg.genera = g;
      canonicalize(graph, dg);
      found.emplace(dg.canonical, std::move(dg));
    });
  }
  std::vector<DecoratedGraph> out;
  for (auto& [key, dg] : found) out.push_back(std::move(dg));
  return out;
}

std::vector<DecoratedGraph> enumerate_decorated_graphs(const GkmGraph& graph, int genus, int n,
                                                       std::span<const long long> beta) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative number of markings");
  std::vector<DecoratedGraph> out;
  for (const auto& base : enumerate_unmarked(graph, genus, beta)) {
    std::map<std::string, DecoratedGraph> found;
    const std::size_t V = base.vertex_count();
    std::vector<std::size_t> s(static_cast<std::size_t>(n), 0);
    while (true) {
      DecoratedGraph dg = base;
      dg.markings.assign(V, {});
      for (int i = 0; i < n; ++i) dg.markings[s[i]].push_back(i + 1);
      canonicalize(graph, dg);
      found.emplace(dg.canonical, std::move(dg));
      std::size_t i = 0;
      while (i < s.size() && ++s[i] == V) s[i++] = 0;
      if (i == s.size()) break;
    }
    for (auto& [key, dg] : found) out.push_back(std::move(dg));
  }
  return out;
}

Integer marked_count(const DecoratedGraph& unmarked, int n) {
  Integer total = 0;
  for (const auto& perm : unmarked.vertex_automorphisms) {
    long fixed = 0;
    for (std::size_t v = 0; v < perm.size(); ++v) fixed += perm[v] == v;
    Integer x = 1;
    for (int i = 0; i < n; ++i) x *= fixed;
    total += x;
  }
  return total / static_cast<long>(unmarked.vertex_automorphisms.size());
}

}  // namespace gwloc
