#pragma once

// Intersection numbers on moduli of stable curves and the per-vertex
// localization brackets built from them.
//
// Pure psi integrals come from the genus-zero multinomial formula and the
// string / dilaton / DVV recursions. Integrals with lambda classes are
// rewritten in Chern characters of the Hodge bundle and reduced with
// Mumford's formula for ch_{2l-1}(E) (kappa, psi and boundary terms); the
// boundary pushforwards split into products of lower integrals and kappa
// classes are pushed down to extra psi points.

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "gwloc/algebra.hpp"

namespace gwloc {

struct PsiKey {
  int genus = 0;
  std::vector<int> psi;  // sorted

  friend auto operator<=>(const PsiKey&, const PsiKey&) = default;
};

struct HodgeKey {
  int genus = 0;
  std::vector<int> psi;     // sorted
  std::vector<int> lambda;  // exponents of lambda_1..lambda_g, length g

  friend auto operator<=>(const HodgeKey&, const HodgeKey&) = default;
};

HodgeKey make_hodge_key(int genus, std::vector<int> psi, std::vector<int> lambda);

/// Memoized evaluator for psi and Hodge integrals. Lookups and inserts are
/// safe from several threads at once.
class HodgeEngine {
 public:
  HodgeEngine() = default;
  HodgeEngine(const HodgeEngine&) = delete;
  HodgeEngine& operator=(const HodgeEngine&) = delete;

  /// Integral of prod psi_i^{a_i} over M_{g,n}-bar. Throws UnstableRange.
  Rational psi_integral(int genus, std::vector<int> psi);

  /// Integral of prod psi_i^{a_i} prod lambda_j^{k_j}. Throws UnstableRange.
  Rational hodge_integral(const HodgeKey& key);
  Rational hodge_integral(int genus, std::vector<int> psi, std::vector<int> lambda) {
    return hodge_integral(make_hodge_key(genus, std::move(psi), std::move(lambda)));
  }

  /// Mixed integral of psi, kappa and ch_k(E) classes (kappa in the
  /// Arbarello-Cornalba convention).
  Rational tautological_integral(int genus, std::vector<int> psi, std::vector<int> kappa,
                                 std::vector<int> ch);

  void save(const std::filesystem::path& path) const;
  /// Merges entries from a cache file. Throws VersionMismatch / CorruptEntry.
  void load(const std::filesystem::path& path);

  std::map<PsiKey, Rational> psi_entries() const;
  std::map<HodgeKey, Rational> hodge_entries() const;
  std::size_t size() const;

  static constexpr const char* kHeader = "hodgecache v1";

 private:
  struct TautKey {
    int genus;
    std::vector<int> psi, kappa, ch;
    friend auto operator<=>(const TautKey&, const TautKey&) = default;
  };

  Rational psi_impl(int genus, std::vector<int> psi);
  Rational taut_impl(int genus, std::vector<int> psi, std::vector<int> kappa, std::vector<int> ch);

  template <class Map, class Key>
  std::optional<Rational> find(const Map& map, const Key& key) const;
  template <class Map, class Key>
  void insert(Map& map, const Key& key, const Rational& value);

  mutable std::shared_mutex mutex_;
  std::map<PsiKey, Rational> psi_;
  std::map<HodgeKey, Rational> hodge_;
  std::map<TautKey, Rational> taut_;
};

/// Reference path for psi integrals: string / dilaton / DVV only, no
/// genus-zero closed form, no shared memo.
Rational psi_integral_by_recursion(int genus, std::vector<int> psi);

/// Closed genus-zero formula (n-3)! / prod a_i!, zero off dimension.
Rational genus_zero_psi(const std::vector<int>& psi);

/// B_k as an exact rational (B_1 = -1/2).
Rational bernoulli(int k);

/// One term c * prod_j lambda_j^{k_j}.
struct LambdaTerm {
  std::vector<int> lambda;  // length g
  LinFrac coeff;
};

/// Lambda_g^vee(w) = sum_i (-1)^i lambda_i w^{g-i}.
std::vector<LambdaTerm> lambda_expand(int genus, const LinearForm& w);

/// Inputs of one vertex bracket <tau_{a_1} ... tau_{a_k}>_{g, mu, w}.
struct VertexProblem {
  int genus = 0;
  std::vector<std::vector<int>> partitions;  // one per direction, parts > 0
  std::vector<LinearForm> weights;           // one per direction
  std::vector<int> markings;                 // psi exponents a_i
};

/// Bracket value as sum_e c_e prod_i w_i^{e_i}, optionally divided by one
/// extra linear form (the two-edge unstable vertex).
struct BracketTerms {
  std::map<std::vector<int>, Rational> laurent;
  std::optional<LinearForm> divisor;
};

BracketTerms vertex_bracket_terms(const VertexProblem& problem, HodgeEngine& engine);
LinFrac vertex_bracket(const VertexProblem& problem, HodgeEngine& engine);

}  // namespace gwloc
