#pragma once

// Torus-fixed loci of stable maps to a GKM manifold (decorated graphs) and
// the graph sum computing equivariant descendant invariants.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gwloc/gkm.hpp"
#include "gwloc/hodge.hpp"

namespace gwloc {

struct DecoratedGraph {
  struct Edge {
    std::size_t ends[2] = {0, 0};  // ends[s] lies over endpoints[s] of the GKM edge
    std::size_t label = 0;         // compact edge of the GKM graph
    int degree = 1;
  };

  std::vector<std::size_t> labels;           // fixed point of each vertex
  std::vector<int> genera;                   // g_v
  std::vector<Edge> edges;
  std::vector<std::vector<int>> markings;    // per vertex, sorted, 1-based
  /// |Aut|, edge permutations included. Vertex automorphisms are kept as
  /// permutations for orbit counting.
  long long automorphisms = 1;
  std::vector<std::vector<std::size_t>> vertex_automorphisms;
  std::string canonical;

  std::size_t vertex_count() const { return labels.size(); }
  int genus() const;
  std::size_t marking_count() const;
  /// |A| = |Aut| * prod d_e.
  Integer a_order() const;
  std::vector<std::size_t> incident_edges(std::size_t v) const;
};

/// Fills `canonical`, `automorphisms` and `vertex_automorphisms` and reorders
/// vertices and edges into canonical order.
void canonicalize(const GkmGraph& graph, DecoratedGraph& dg);

/// |Aut| of a decorated graph, recomputed from scratch.
long long automorphism_order(const GkmGraph& graph, const DecoratedGraph& dg);

/// Effective decompositions: multisets of (edge, degree) with sum d c = beta.
std::vector<std::vector<std::pair<std::size_t, int>>> edge_multisets(const GkmGraph& graph,
                                                                     std::span<const long long> beta);

/// Connected graphs over `beta` with first Betti number at most max_loops;
/// no genus or marking decorations (all g_v = 0). Canonical, duplicate free.
std::vector<DecoratedGraph> enumerate_skeletons(const GkmGraph& graph, std::span<const long long> beta,
                                                int max_loops);

/// G_{g,n}(X, beta) without markings (n = 0 layer).
std::vector<DecoratedGraph> enumerate_unmarked(const GkmGraph& graph, int genus, std::span<const long long> beta);

/// Full G_{g,n}(X, beta), markings included.
std::vector<DecoratedGraph> enumerate_decorated_graphs(const GkmGraph& graph, int genus, int n,
                                                       std::span<const long long> beta);

/// Number of marked decorated graphs over an unmarked one (Burnside).
Integer marked_count(const DecoratedGraph& unmarked, int n);

/// h(e, d) computed from endpoint `side` of the compact edge.
LinFrac edge_factor(const GkmGraph& graph, std::size_t edge, int degree, int side = 0);

struct Insertion {
  int psi = 0;
  EquivClass cls;
};

/// Bracket inputs for vertex v of a decorated graph.
VertexProblem vertex_problem(const GkmGraph& graph, const DecoratedGraph& dg, std::size_t v,
                             const std::vector<int>& marking_psi);

/// prod_{i in S_v} i_sigma^* gamma_i times the vertex bracket.
LinFrac vertex_factor(const GkmGraph& graph, const DecoratedGraph& dg, std::size_t v,
                      std::span<const Insertion> insertions, HodgeEngine& engine);

/// Contribution of one fully decorated (marked) graph.
LinFrac graph_contribution(const GkmGraph& graph, const DecoratedGraph& dg, std::span<const Insertion> insertions,
                           HodgeEngine& engine);

/// Sum over all marking maps of the contributions of one unmarked graph,
/// divided by its automorphism order. Equals the sum of graph_contribution
/// over the marked graphs lying over it.
LinFrac marking_orbit_sum(const GkmGraph& graph, const DecoratedGraph& unmarked,
                          std::span<const Insertion> insertions, HodgeEngine& engine);

enum class Mode { Symbolic, Specialize };

struct ComputeOptions {
  Mode mode = Mode::Symbolic;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool keep_contributions = false;
  /// Specialize mode: require three points to agree (set when the answer is
  /// expected to be a constant).
  bool expect_constant = false;
};

struct InvariantResult {
  std::optional<LinFrac> symbolic;            // symbolic mode
  std::optional<Rational> value;              // specialize mode
  std::vector<std::vector<Rational>> points;  // specialize mode, points used
  std::size_t unmarked_graphs = 0;
  Integer marked_graphs = 0;
  std::vector<std::string> graph_ids;         // canonical forms, in summation order
  std::vector<std::string> contributions;     // per unmarked graph, when kept
};

/// Sum over decorated graphs of the fixed-locus contributions. Throws InvalidArgument for beta = 0 or a wrong number of
/// insertion restrictions; SpecializationDisagreement if an expected constant
/// differs between points.
InvariantResult equivariant_invariant(const GkmGraph& graph, int genus, std::span<const long long> beta,
                                      std::span<const Insertion> insertions, HodgeEngine& engine,
                                      const ComputeOptions& options = {});

/// Constant term if the value is a polynomial.
std::optional<Rational> nonequivariant_limit(const LinFrac& value);

/// Invariants for g = 0..cutoff, grouped over genus-free graphs.
std::vector<std::pair<int, LinFrac>> genus_series(const GkmGraph& graph, std::span<const long long> beta,
                                                  std::span<const Insertion> insertions, int genus_cutoff,
                                                  HodgeEngine& engine, unsigned workers = 1);

/// sum_i (deg gamma_i + a_i) - d^vir: the expected complex degree.
long long expected_degree(const GkmGraph& graph, int genus, std::span<const long long> beta,
                          std::span<const Insertion> insertions);

/// Coordinates drawn uniformly from {-B..B} \ {0}, B = 10^6.
std::vector<Rational> random_point(std::size_t m, std::mt19937_64& rng);

}  // namespace gwloc
