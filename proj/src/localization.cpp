#include "gwloc/localization.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace gwloc {

namespace {

// Two evaluation targets for the same formulas: exact rational functions, or
// numbers at a fixed point of the torus Lie algebra.
struct SymbolicField {
  using Value = LinFrac;
  std::size_t nvars;

  Value constant(const Rational& c) const { return LinFrac::constant(nvars, c); }
  Value linear(const LinearForm& form, int power) const { return LinFrac::linear_power(form, power); }
  Value poly(const SparsePoly& p) const { return LinFrac(p); }
  static bool is_zero(const Value& v) { return v.is_zero(); }
  Value total(std::vector<Value>& terms) const { return sum(terms, nvars).normalized(); }
};

struct PointField {
  using Value = Rational;
  std::vector<Rational> point;

  Value constant(const Rational& c) const { return c; }
  Value linear(const LinearForm& form, int power) const {
    const Rational x = form.evaluate(point);
    if (x == 0) {
      if (power < 0) throw Error(ErrorCode::PoleAtPoint, "linear form " + form.to_string() + " vanishes at the point");
      return power == 0 ? Rational(1) : Rational(0);
    }
    Rational out = 1;
    for (int i = 0; i < std::abs(power); ++i) out *= x;
    return power < 0 ? Rational(1 / out) : out;
  }
  Value poly(const SparsePoly& p) const { return p.evaluate(point); }
  static bool is_zero(const Value& v) { return v == 0; }
  Value total(std::vector<Value>& terms) const {
    Rational out = 0;
    for (const auto& t : terms) out += t;
    return out;
  }
};

template <class Field>
typename Field::Value edge_value(const Field& field, const GkmGraph& graph, std::size_t edge, int degree,
                                 int side) {
  const auto& e = graph.compact_edges.at(edge);
  if (degree <= 0) throw Error(ErrorCode::InvalidArgument, "edge degree must be positive");
  const std::size_t sigma = e.endpoints[side];
  const LinearForm& w = e.weights[side];
  // (-1)^d d^{2d} / (d!)^2
  Rational c = 1;
  for (int i = 0; i < 2 * degree; ++i) c *= degree;
  for (int i = 2; i <= degree; ++i) c /= Rational(i) * i;
  if (degree % 2) c = -c;
  auto out = field.constant(c);
  out *= field.linear(w, -2 * degree);
  for (std::size_t i = 0; i < e.connection.size(); ++i) {
    const FlagRef flag = side == 0 ? e.connection[i].first : e.connection[i].second;
    const LinearForm& wi = graph.weight(flag, sigma);
    const long a = static_cast<long>(degree) * e.normal_degrees[i];
    if (a >= 0) {
      for (long j = 0; j <= a; ++j) out *= field.linear(wi - ratio(j, degree) * w, -1);
    } else {
      for (long j = 1; j <= -a - 1; ++j) out *= field.linear(wi + ratio(j, degree) * w, 1);
    }
  }
  return out;
}

struct BracketKey {
  std::size_t sigma;
  int genus;
  std::vector<std::vector<int>> partitions;
  std::vector<int> markings;
  friend auto operator<=>(const BracketKey&, const BracketKey&) = default;
};

VertexProblem problem_for(const GkmGraph& graph, const DecoratedGraph& dg, std::size_t v, std::vector<int> psi) {
  const std::size_t sigma = dg.labels.at(v);
  const auto& flags = graph.vertices[sigma].flags;
  VertexProblem p;
  p.genus = dg.genera.at(v);
  p.partitions.resize(flags.size());
  for (const auto& f : flags) p.weights.push_back(graph.weight(f, sigma));
  for (const auto& e : dg.edges) {
    for (int s = 0; s < 2; ++s) {
      if (e.ends[s] != v) continue;
      const FlagRef f{true, e.label};
      const auto it = std::find(flags.begin(), flags.end(), f);
      if (it == flags.end()) throw Error(ErrorCode::InvalidArgument, "edge not incident to its vertex label");
      p.partitions[static_cast<std::size_t>(it - flags.begin())].push_back(e.degree);
    }
  }
  for (auto& mu : p.partitions) std::sort(mu.begin(), mu.end());
  std::sort(psi.begin(), psi.end());
  p.markings = std::move(psi);
  return p;
}

// Bracket values memoized per computation. Laurent data is shared between
// fields; evaluated values are per field.
template <class Field>
class BracketCache {
 public:
  BracketCache(const Field& field, HodgeEngine& engine) : field_(field), engine_(engine) {}

  typename Field::Value get(const GkmGraph& graph, const DecoratedGraph& dg, std::size_t v, std::vector<int> psi) {
    VertexProblem p = problem_for(graph, dg, v, std::move(psi));
    BracketKey key{dg.labels[v], p.genus, p.partitions, p.markings};
    {
      std::lock_guard lock(mutex_);
      const auto it = values_.find(key);
      if (it != values_.end()) return it->second;
    }
    const BracketTerms terms = vertex_bracket_terms(p, engine_);
    std::vector<typename Field::Value> parts;
    for (const auto& [e, c] : terms.laurent) {
      auto x = field_.constant(c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] != 0) x *= field_.linear(p.weights[i], e[i]);
      }
      parts.push_back(std::move(x));
    }
    auto value = field_.total(parts);
    if (terms.divisor) value *= field_.linear(*terms.divisor, -1);
    std::lock_guard lock(mutex_);
    return values_.emplace(std::move(key), std::move(value)).first->second;
  }

 private:
  const Field& field_;
  HodgeEngine& engine_;
  std::mutex mutex_;
  std::map<BracketKey, typename Field::Value> values_;
};

void check_insertions(const GkmGraph& graph, std::span<const Insertion> insertions) {
  for (const auto& ins : insertions) {
    if (ins.psi < 0) throw Error(ErrorCode::InvalidArgument, "negative descendant exponent");
    if (ins.cls.restrictions.size() != graph.vertices.size()) {
      throw Error(ErrorCode::InvalidArgument, "insertion has " + std::to_string(ins.cls.restrictions.size()) +
                                                  " restrictions, the graph has " +
                                                  std::to_string(graph.vertices.size()) + " fixed points");
    }
  }
}

// Sum over all marking maps of one unmarked graph, divided by `aut`.
template <class Field>
typename Field::Value orbit_sum(const Field& field, const GkmGraph& graph, const DecoratedGraph& dg,
                                std::span<const Insertion> insertions, BracketCache<Field>& cache,
                                long long aut) {
  using Value = typename Field::Value;
  const std::size_t V = dg.vertex_count();
  Integer denom = static_cast<long>(aut);
  for (const auto& e : dg.edges) denom *= e.degree;
  Value edges = field.constant(ratio(1, denom));
  for (const auto& e : dg.edges) {
    if (Field::is_zero(edges)) break;
    edges *= edge_value(field, graph, e.label, e.degree, 0);
  }

  using State = std::vector<std::vector<int>>;
  std::map<State, Value> states;
  states.emplace(State(V), field.constant(1));
  for (const auto& ins : insertions) {
    std::vector<std::optional<Value>> restriction(V);
    for (std::size_t v = 0; v < V; ++v) {
      const SparsePoly& r = ins.cls.restrictions[dg.labels[v]];
      if (!r.is_zero()) restriction[v] = field.poly(r);
    }
    std::map<State, std::vector<Value>> next;
    for (const auto& [state, coeff] : states) {
      for (std::size_t v = 0; v < V; ++v) {
        if (!restriction[v]) continue;
        State s = state;
        s[v].insert(std::upper_bound(s[v].begin(), s[v].end(), ins.psi), ins.psi);
        next[std::move(s)].push_back(coeff * *restriction[v]);
      }
    }
    states.clear();
    for (auto& [state, terms] : next) {
      Value v = field.total(terms);
      if (!Field::is_zero(v)) states.emplace(state, std::move(v));
    }
  }

  std::vector<Value> terms;
  for (const auto& [state, coeff] : states) {
    Value x = coeff;
    for (std::size_t v = 0; v < V && !Field::is_zero(x); ++v) x *= cache.get(graph, dg, v, state[v]);
    if (!Field::is_zero(x)) terms.push_back(std::move(x));
  }
  Value out = field.total(terms);
  out *= edges;
  return out;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <class Field>
std::vector<typename Field::Value> graph_values(const Field& field, const GkmGraph& graph,
                                                const std::vector<DecoratedGraph>& graphs,
                                                std::span<const Insertion> insertions, HodgeEngine& engine,
                                                unsigned workers) {
  BracketCache<Field> cache(field, engine);
  std::vector<typename Field::Value> values(graphs.size());
  parallel_for(graphs.size(), workers, [&](std::size_t i) {
    values[i] = orbit_sum(field, graph, graphs[i], insertions, cache, graphs[i].automorphisms);
  });
  return values;
}

void check_beta(const GkmGraph& graph, std::span<const long long> beta) {
  if (beta.size() != graph.class_rank) {
    throw Error(ErrorCode::InvalidArgument, "curve class has " + std::to_string(beta.size()) +
                                                " entries, the class lattice has rank " +
                                                std::to_string(graph.class_rank));
  }
  if (std::all_of(beta.begin(), beta.end(), [](long long b) { return b == 0; })) {
    throw Error(ErrorCode::InvalidArgument, "curve class 0 is not supported");
  }
}

}  // namespace

LinFrac edge_factor(const GkmGraph& graph, std::size_t edge, int degree, int side) {
  if (side != 0 && side != 1) throw Error(ErrorCode::InvalidArgument, "edge side must be 0 or 1");
  return edge_value(SymbolicField{graph.m}, graph, edge, degree, side).normalized();
}

VertexProblem vertex_problem(const GkmGraph& graph, const DecoratedGraph& dg, std::size_t v,
                             const std::vector<int>& marking_psi) {
  return problem_for(graph, dg, v, marking_psi);
}

LinFrac vertex_factor(const GkmGraph& graph, const DecoratedGraph& dg, std::size_t v,
                      std::span<const Insertion> insertions, HodgeEngine& engine) {
  check_insertions(graph, insertions);
  LinFrac out = LinFrac::constant(graph.m, 1);
  std::vector<int> psi;
  for (int i : dg.markings.at(v)) {
    if (i < 1 || static_cast<std::size_t>(i) > insertions.size()) {
      throw Error(ErrorCode::InvalidArgument, "marking " + std::to_string(i) + " has no insertion");
    }
    const auto& ins = insertions[static_cast<std::size_t>(i - 1)];
    out *= LinFrac(ins.cls.restrictions[dg.labels[v]]);
    psi.push_back(ins.psi);
  }
  if (out.is_zero()) return out;
  return (out * vertex_bracket(problem_for(graph, dg, v, psi), engine)).normalized();
}

LinFrac graph_contribution(const GkmGraph& graph, const DecoratedGraph& dg, std::span<const Insertion> insertions,
                           HodgeEngine& engine) {
  if (dg.marking_count() != insertions.size()) {
    throw Error(ErrorCode::InvalidArgument, "graph markings and insertions differ in number");
  }
  Integer denom = dg.a_order();
  LinFrac out = LinFrac::constant(graph.m, ratio(1, denom));
  for (const auto& e : dg.edges) out *= edge_factor(graph, e.label, e.degree, 0);
  for (std::size_t v = 0; v < dg.vertex_count() && !out.is_zero(); ++v) {
    out *= vertex_factor(graph, dg, v, insertions, engine);
  }
  return out.normalized();
}

LinFrac marking_orbit_sum(const GkmGraph& graph, const DecoratedGraph& unmarked,
                          std::span<const Insertion> insertions, HodgeEngine& engine) {
  check_insertions(graph, insertions);
  SymbolicField field{graph.m};
  BracketCache<SymbolicField> cache(field, engine);
  return orbit_sum(field, graph, unmarked, insertions, cache, unmarked.automorphisms).normalized();
}

std::vector<Rational> random_point(std::size_t m, std::mt19937_64& rng) {
  constexpr long long B = 1000000;
  std::uniform_int_distribution<long long> dist(-B, B - 1);
  std::vector<Rational> out(m);
  for (auto& x : out) {
    long long v = dist(rng);
    if (v >= 0) ++v;  // skip 0
    x = Rational(static_cast<long>(v));
  }
  return out;
}

InvariantResult equivariant_invariant(const GkmGraph& graph, int genus, std::span<const long long> beta,
                                      std::span<const Insertion> insertions, HodgeEngine& engine,
                                      const ComputeOptions& options) {
  check_beta(graph, beta);
  check_insertions(graph, insertions);
  if (genus < 0) throw Error(ErrorCode::InvalidArgument, "negative genus");
  const std::vector<DecoratedGraph> graphs = enumerate_unmarked(graph, genus, beta);

  InvariantResult out;
  out.unmarked_graphs = graphs.size();
  for (const auto& g : graphs) {
    out.graph_ids.push_back(g.canonical);
    out.marked_graphs += marked_count(g, static_cast<int>(insertions.size()));
  }

  if (options.mode == Mode::Symbolic) {
    SymbolicField field{graph.m};
    auto values = graph_values(field, graph, graphs, insertions, engine, options.workers);
    if (options.keep_contributions) {
      for (const auto& v : values) out.contributions.push_back(v.to_string());
    }
    out.symbolic = field.total(values);
    return out;
  }

  std::mt19937_64 rng(options.seed);
  const int wanted = options.expect_constant ? 3 : 1;
  std::vector<std::vector<Rational>> contributions;
  for (int k = 0; k < wanted; ++k) {
    constexpr int kAttempts = 64;
    for (int attempt = 0;; ++attempt) {
      PointField field{random_point(graph.m, rng)};
      try {
        auto values = graph_values(field, graph, graphs, insertions, engine, options.workers);
        const Rational value = field.total(values);
        if (out.value && value != *out.value) {
          throw Error(ErrorCode::SpecializationDisagreement,
                      "values " + out.value->get_str() + " and " + value.get_str() + " at two points differ");
        }
        out.value = value;
        out.points.push_back(field.point);
        contributions.push_back(std::move(values));
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PoleAtPoint || attempt + 1 == kAttempts) throw;
      }
    }
  }
  if (options.keep_contributions) {
    for (const auto& v : contributions.front()) out.contributions.push_back(v.get_str());
  }
  return out;
}

std::optional<Rational> nonequivariant_limit(const LinFrac& value) {
  const auto poly = value.as_polynomial();
  if (!poly) return std::nullopt;
  return poly->constant_term();
}

std::vector<std::pair<int, LinFrac>> genus_series(const GkmGraph& graph, std::span<const long long> beta,
                                                  std::span<const Insertion> insertions, int genus_cutoff,
                                                  HodgeEngine& engine, unsigned workers) {
  check_beta(graph, beta);
  check_insertions(graph, insertions);
  if (genus_cutoff < 0) throw Error(ErrorCode::InvalidArgument, "negative genus cutoff");
  const std::vector<DecoratedGraph> skeletons = enumerate_skeletons(graph, beta, genus_cutoff);

  // Every (skeleton, genus assignment) pair, weighted by the skeleton's
  // symmetry rather than the decorated one's.
  struct Job {
    std::size_t skeleton;
    int genus;
    std::vector<int> genera;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < skeletons.size(); ++s) {
    const std::size_t V = skeletons[s].vertex_count();
    const int loops = skeletons[s].genus();
    for (int g = loops; g <= genus_cutoff; ++g) {
      std::vector<int> a(V, 0);
      const int spare = g - loops;
      // all ordered distributions of `spare` over V vertices
      std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == V) {
          a[i] = left;
          jobs.push_back({s, g, a});
          return;
        }
        for (int x = 0; x <= left; ++x) {
          a[i] = x;
          rec(i + 1, left - x);
        }
      };
      rec(0, spare);
    }
  }

  SymbolicField field{graph.m};
  BracketCache<SymbolicField> cache(field, engine);
  std::vector<LinFrac> values(jobs.size());
  parallel_for(jobs.size(), workers, [&](std::size_t i) {
    DecoratedGraph dg = skeletons[jobs[i].skeleton];
    dg.genera = jobs[i].genera;
    values[i] = orbit_sum(field, graph, dg, insertions, cache, skeletons[jobs[i].skeleton].automorphisms);
  });
  std::vector<std::vector<LinFrac>> by_genus(static_cast<std::size_t>(genus_cutoff) + 1);
  for (std::size_t i = 0; i < jobs.size(); ++i) by_genus[jobs[i].genus].push_back(std::move(values[i]));
  std::vector<std::pair<int, LinFrac>> out;
  for (int g = 0; g <= genus_cutoff; ++g) out.emplace_back(g, field.total(by_genus[g]));
  return out;
}

long long expected_degree(const GkmGraph& graph, int genus, std::span<const long long> beta,
                          std::span<const Insertion> insertions) {
  long long total = 0;
  for (const auto& ins : insertions) total += ins.cls.degree + ins.psi;
  return total - virtual_dim(graph, genus, static_cast<int>(insertions.size()), beta);
}

}  // namespace gwloc
