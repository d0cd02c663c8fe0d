#pragma once

// Request/response layer shared by the C API and the command line tool.
// Requests and results are JSON documents; every number that is not a
// small integer is an exact fraction string.

#include <optional>
#include <string>
#include <vector>

#include "gwloc/localization.hpp"

namespace gwloc {

/// Insertion file: [{"a": int, "degree": int, "restrictions": {vertex: "poly"}}].
/// Vertices left out restrict to 0. Instead of "restrictions" an entry may
/// name "class": "point:<vertex>" or "unit". Polynomials must be homogeneous
/// of the declared degree and form a valid equivariant class.
std::vector<Insertion> parse_insertions(const GkmGraph& graph, const std::string& text);
std::string insertions_to_json(const GkmGraph& graph, const std::vector<Insertion>& insertions);

struct ComputeRequest {
  std::string source;  // echoed only
  int genus = 0;
  std::vector<long long> beta;
  std::vector<Insertion> insertions;
  Mode mode = Mode::Symbolic;
  std::uint64_t seed = 1;
  std::optional<int> genus_cutoff;
  unsigned workers = 1;
  bool verbose = false;
};

/// Request document: {"source", "genus", "beta", "insertions" (array in the
/// insertion file format), "mode", "seed", "genus_cutoff", "workers", "verbose"}.
ComputeRequest parse_request(const GkmGraph& graph, const std::string& text);

/// Validates the graph, runs the graph sum and returns the result document.
/// Worker count never changes the output; timing is reported only when
/// verbose.
std::string run_compute(const GkmGraph& graph, const ComputeRequest& request, HodgeEngine& engine);

/// One line per decorated graph of G_{g,n}(X, beta): |Aut|, |A| and the
/// canonical form.
std::string graph_listing(const GkmGraph& graph, int genus, int n, const std::vector<long long>& beta);

}  // namespace gwloc
