#pragma once

// Combinatorial model of a GKM manifold: fixed points, invariant curves,
// tangent weights along flags, and the connection matching normal
// directions across each compact edge.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwloc/algebra.hpp"

namespace gwloc {

/// Reference to an edge of the GKM graph, compact or not.
struct FlagRef {
  bool compact = true;
  std::size_t edge = 0;

  friend bool operator==(const FlagRef&, const FlagRef&) = default;
  friend auto operator<=>(const FlagRef&, const FlagRef&) = default;
};

struct VertexData {
  std::string id;
  std::vector<FlagRef> flags;  // E_sigma, in file order
};

struct CompactEdgeData {
  std::string id;
  std::size_t endpoints[2] = {0, 0};
  LinearForm weights[2];  // tangent weight at endpoints[0], endpoints[1]
  /// Pairs (flag at endpoints[0], flag at endpoints[1]) over the normal
  /// directions; normal_degrees[i] belongs to connection[i].
  std::vector<std::pair<FlagRef, FlagRef>> connection;
  std::vector<int> normal_degrees;
  std::vector<long long> curve_class;

  /// 0 or 1 for an endpoint vertex; throws otherwise.
  int side_of(std::size_t vertex) const;
};

struct NoncompactEdgeData {
  std::string id;
  std::size_t endpoint = 0;
  LinearForm weight;
};

struct GkmGraph {
  std::size_t m = 0;  // torus rank
  std::size_t r = 0;  // complex dimension / valence
  std::size_t class_rank = 0;
  std::vector<Rational> ample_functional;
  std::vector<VertexData> vertices;
  std::vector<CompactEdgeData> compact_edges;
  std::vector<NoncompactEdgeData> noncompact_edges;

  /// Tangent weight w(flag, vertex).
  const LinearForm& weight(const FlagRef& flag, std::size_t vertex) const;
  /// Rebuilds every vertex flag list from the edge lists (compact first).
  void rebuild_flags();
  std::optional<std::size_t> vertex_index(const std::string& id) const;
  std::optional<FlagRef> flag_by_id(const std::string& id) const;
  const std::string& flag_id(const FlagRef& flag) const;
  bool is_compact_target() const { return noncompact_edges.empty(); }
  Rational ample_value(std::span<const long long> beta) const;
};

struct Violation {
  std::string kind;      // e.g. "axial-2a", "gkm-hypothesis"
  std::string location;  // offending vertex / edge / flag ids
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

ValidationReport validate_gkm(const GkmGraph& graph);

/// Drops connection and normal degrees from every compact edge.
GkmGraph strip_connection(GkmGraph graph);

/// Solves condition (2b) for every compact edge. Throws Error with
/// ErrorCode::Ambiguous or ErrorCode::NoIntegerDegree.
GkmGraph infer_connection(GkmGraph graph);

GkmGraph build_projective_space(int r);
GkmGraph build_grassmannian(int k, int m);
GkmGraph build_local_line(const std::vector<int>& normal_degrees);
/// Product of two GKM graphs; torus and class lattice are concatenated.
GkmGraph build_product(const GkmGraph& a, const GkmGraph& b);

/// Restriction to a subtorus: rho is m' x m and maps every weight w to rho*w.
/// Throws ErrorCode::DegenerateSubtorus when the result violates the GKM
/// hypothesis.
GkmGraph restrict_subtorus(const GkmGraph& graph, const std::vector<std::vector<long long>>& rho);

/// Images of u_1..u_m under the substitution induced by rho.
std::vector<LinearForm> subtorus_substitution(const std::vector<std::vector<long long>>& rho);

/// Linear functional kappa on the class lattice with
/// kappa(c(e)) = 2 + sum_i a_i(e); throws ErrorCode::InconsistentChernData.
std::vector<Rational> chern_functional(const GkmGraph& graph);

long long virtual_dim(const GkmGraph& graph, int genus, int n, std::span<const long long> beta);

/// Equivariant cohomology class through its fixed-point restrictions.
struct EquivClass {
  std::vector<SparsePoly> restrictions;  // one per vertex of the GKM graph
  int degree = 0;                        // complex degree
};

ValidationReport validate_equiv_class(const GkmGraph& graph, const EquivClass& cls);

/// Class of the fixed point p_sigma: e(T_sigma X) at sigma, zero elsewhere.
EquivClass point_class(const GkmGraph& graph, std::size_t vertex);
/// The unit class 1.
EquivClass unit_class(const GkmGraph& graph);

/// Canonical JSON document for a graph.
std::string graph_to_json(const GkmGraph& graph);
/// Parses the JSON graph format; infers the connection when absent.
GkmGraph graph_from_json(const std::string& text);

/// Builder spec such as "P2", "projective:3", "grassmannian:2,4",
/// "local-line:-1,-1", "product:P1*P1". Throws ErrorCode::UnknownBuilder.
GkmGraph build_from_spec(const std::string& spec);

}  // namespace gwloc
