#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gwloc/localization.hpp"

using namespace gwloc;

namespace {

LinearForm L(std::vector<long long> c) { return LinearForm::from_ints(c); }

std::vector<long long> B(std::initializer_list<long long> b) { return b; }

// Equivariant hyperplane class on P^r: restriction -u_i at vertex i.
EquivClass hyperplane(const GkmGraph& g) {
  EquivClass c;
  c.degree = 1;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) c.restrictions.push_back(-SparsePoly::variable(g.m, i));
  return c;
}

Insertion ins(int psi, EquivClass cls) { return {psi, std::move(cls)}; }

LinFrac symbolic(const GkmGraph& g, int genus, std::vector<long long> beta, const std::vector<Insertion>& insertions,
                 HodgeEngine& engine, unsigned workers = 1) {
  ComputeOptions opt;
  opt.workers = workers;
  return *equivariant_invariant(g, genus, beta, insertions, engine, opt).symbolic;
}

std::vector<long long> sorted_auts(const std::vector<DecoratedGraph>& graphs) {
  std::vector<long long> out;
  for (const auto& g : graphs) out.push_back(g.automorphisms);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GkmGraph> all_builders() {
  return {build_projective_space(1), build_projective_space(2), build_projective_space(3),
          build_grassmannian(2, 4),  build_local_line({-1, -1}), build_local_line({}),
          build_local_line({0}),     build_local_line({1, -3}),  build_from_spec("product:P1*P1")};
}

}  // namespace

TEST_CASE("graph counts on P1 and P2") {
  const GkmGraph p1 = build_projective_space(1);
  auto d1 = enumerate_unmarked(p1, 0, B({1}));
  CHECK(d1.size() == 1);
  CHECK(sorted_auts(d1) == std::vector<long long>{1});
  auto d2 = enumerate_unmarked(p1, 0, B({2}));
  CHECK(d2.size() == 3);
  CHECK(sorted_auts(d2) == std::vector<long long>{1, 2, 2});
  auto g1 = enumerate_unmarked(p1, 1, B({1}));
  CHECK(g1.size() == 2);
  for (const auto& g : g1) CHECK(g.genus() == 1);
  // a loop appears at genus 1, degree 2 (two parallel edges)
  auto g1d2 = enumerate_unmarked(p1, 1, B({2}));
  CHECK(std::any_of(g1d2.begin(), g1d2.end(), [](const DecoratedGraph& g) { return g.edges.size() == 2 && g.vertex_count() == 2; }));

  const GkmGraph p2 = build_projective_space(2);
  CHECK(enumerate_unmarked(p2, 0, B({1})).size() == 3);

  // a marked leaf kills the flip symmetry
  auto marked = enumerate_decorated_graphs(p1, 0, 1, B({2}));
  std::size_t total = 0;
  for (const auto& g : enumerate_unmarked(p1, 0, B({2}))) total += marked_count(g, 1).get_ui();
  CHECK(marked.size() == total);
  CHECK(marked.size() == 6);
  // a marked leaf kills the flip of the two-edge graphs, a marked center does not
  CHECK(sorted_auts(marked) == std::vector<long long>{1, 1, 1, 1, 2, 2});
}

TEST_CASE("canonical form is label independent") {
  const GkmGraph p1 = build_projective_space(1);
  DecoratedGraph a;
  a.labels = {0, 1, 1};
  a.genera = {0, 0, 1};
  a.markings = {{}, {1}, {}};
  a.edges = {{{0, 1}, 0, 1}, {{0, 2}, 0, 2}};
  DecoratedGraph b;
  b.labels = {1, 0, 1};
  b.genera = {1, 0, 0};
  b.markings = {{}, {}, {1}};
  b.edges = {{{1, 2}, 0, 1}, {{1, 0}, 0, 2}};
  canonicalize(p1, a);
  canonicalize(p1, b);
  CHECK(a.canonical == b.canonical);
  CHECK(a.automorphisms == 1);

  DecoratedGraph star;
  star.labels = {0, 1, 1, 1};
  star.genera = {0, 0, 0, 0};
  star.markings = {{}, {}, {}, {}};
  star.edges = {{{0, 1}, 0, 1}, {{0, 2}, 0, 1}, {{0, 3}, 0, 1}};
  CHECK(automorphism_order(p1, star) == 6);
  DecoratedGraph parallel;
  parallel.labels = {0, 1};
  parallel.genera = {0, 0};
  parallel.markings = {{}, {}};
  parallel.edges = {{{0, 1}, 0, 1}, {{0, 1}, 0, 1}};
  CHECK(automorphism_order(p1, parallel) == 2);
}

TEST_CASE("edge factors") {
  const GkmGraph p1 = build_projective_space(1);
  const LinearForm w = p1.compact_edges[0].weights[0];
  CHECK(edge_factor(p1, 0, 1) == -LinFrac::linear_power(w, -2));
  const GkmGraph con = build_local_line({-1, -1});
  CHECK(edge_factor(con, 0, 1) == -LinFrac::linear_power(con.compact_edges[0].weights[0], -2));
  // a = 0: one extra 1/w_i
  const GkmGraph flat = build_local_line({0});
  const auto& e = flat.compact_edges[0];
  const LinearForm wi = flat.weight(e.connection[0].first, e.endpoints[0]);
  CHECK(edge_factor(flat, 0, 1) ==
        -LinFrac::linear_power(e.weights[0], -2) * LinFrac::linear_power(wi, -1));
  // P1 degree 2: d^{2d}/(d!)^2 = 4
  CHECK(edge_factor(p1, 0, 2) == Rational(4) * LinFrac::linear_power(w, -4));
}

TEST_CASE("edge factor does not depend on the endpoint") {
  for (const auto& g : all_builders()) {
    for (std::size_t e = 0; e < g.compact_edges.size(); ++e) {
      for (int d = 1; d <= 3; ++d) {
        CHECK_MESSAGE(edge_factor(g, e, d, 0) == edge_factor(g, e, d, 1), g.compact_edges[e].id << " d=" << d);
      }
    }
  }
}

TEST_CASE("single graph contributions") {
  HodgeEngine engine;
  const GkmGraph p1 = build_projective_space(1);
  const auto d1 = enumerate_unmarked(p1, 0, B({1}));
  CHECK(graph_contribution(p1, d1[0], {}, engine) == LinFrac::constant(p1.m, 1));
  // single edge of degree 2: 1/2 * 4/w^4 * (w/2) * (-w/2)
  for (const auto& g : enumerate_unmarked(p1, 0, B({2}))) {
    if (g.edges.size() != 1) continue;
    const LinearForm w = p1.compact_edges[0].weights[0];
    CHECK(graph_contribution(p1, g, {}, engine) == ratio(-1, 2) * LinFrac::linear_power(w, -2));
  }
}

TEST_CASE("basic invariants") {
  HodgeEngine engine;
  const GkmGraph p1 = build_projective_space(1);
  CHECK(symbolic(p1, 0, {1}, {}, engine) == LinFrac::constant(p1.m, 1));
  CHECK(symbolic(p1, 0, {1}, {ins(0, point_class(p1, 0))}, engine) == LinFrac::constant(p1.m, 1));
  CHECK(symbolic(p1, 0, {1}, {ins(0, point_class(p1, 1))}, engine) == LinFrac::constant(p1.m, 1));
  const GkmGraph con = build_local_line({-1, -1});
  CHECK(symbolic(con, 0, {1}, {}, engine) == LinFrac::constant(con.m, 1));
  CHECK(symbolic(con, 0, {2}, {}, engine) == LinFrac::constant(con.m, ratio(1, 8)));
  const GkmGraph p2 = build_projective_space(2);
  CHECK(symbolic(p2, 0, {1}, {ins(0, point_class(p2, 0)), ins(0, point_class(p2, 1))}, engine) ==
        LinFrac::constant(p2.m, 1));
  std::vector<Insertion> five;
  for (int i = 0; i < 5; ++i) five.push_back(ins(0, point_class(p2, static_cast<std::size_t>(i % 3))));
  CHECK(symbolic(p2, 0, {2}, five, engine) == LinFrac::constant(p2.m, 1));
  // degree 1 maps hit the divisor once
  CHECK(symbolic(p1, 0, {1}, {ins(0, hyperplane(p1)), ins(0, point_class(p1, 0)), ins(0, point_class(p1, 1))},
                 engine) == LinFrac::constant(p1.m, 1));
}

TEST_CASE("invalid requests") {
  HodgeEngine engine;
  const GkmGraph p1 = build_projective_space(1);
  CHECK_THROWS_AS(equivariant_invariant(p1, 0, B({0}), {}, engine), Error);
  CHECK_THROWS_AS(equivariant_invariant(p1, 0, B({1, 1}), {}, engine), Error);
  EquivClass bad;
  bad.restrictions = {SparsePoly::constant(p1.m, 1)};
  std::vector<Insertion> one{ins(0, bad)};
  CHECK_THROWS_AS(equivariant_invariant(p1, 0, B({1}), one, engine), Error);
}

TEST_CASE("homogeneity and polynomiality for compact targets") {
  HodgeEngine engine;
  const std::vector<GkmGraph> targets{build_projective_space(1), build_projective_space(2)};
  for (const auto& g : targets) {
    std::vector<EquivClass> classes{unit_class(g), hyperplane(g), point_class(g, 0), point_class(g, 1)};
    for (int genus = 0; genus <= 1; ++genus) {
      for (long long d = 1; d <= 2; ++d) {
        for (int a = 0; a <= 2; ++a) {
          for (std::size_t c = 0; c < classes.size(); ++c) {
            std::vector<Insertion> list{ins(a, classes[c])};
            if (expected_degree(g, genus, B({d}), list) < 0) continue;
            const LinFrac v = symbolic(g, genus, {d}, list, engine);
            INFO("r=" << g.r << " g=" << genus << " d=" << d << " a=" << a << " c=" << c << " value " << v.to_string());
            CHECK(v.as_polynomial().has_value());
            if (!v.is_zero()) CHECK(*v.homogeneous_degree() == expected_degree(g, genus, B({d}), list));
          }
        }
      }
    }
  }
}

TEST_CASE("marked graph sum equals orbit sum") {
  HodgeEngine engine;
  const GkmGraph p1 = build_projective_space(1);
  const std::vector<Insertion> list{ins(1, hyperplane(p1)), ins(0, point_class(p1, 0)), ins(2, unit_class(p1))};
  for (int genus = 0; genus <= 1; ++genus) {
    for (long long d = 1; d <= 2; ++d) {
      std::vector<LinFrac> parts;
      for (const auto& g : enumerate_decorated_graphs(p1, genus, 3, B({d}))) {
        parts.push_back(graph_contribution(p1, g, list, engine));
      }
      CHECK(sum(parts, p1.m).normalized() == symbolic(p1, genus, {d}, list, engine));
    }
  }
}

TEST_CASE("specialize agrees with symbolic") {
  HodgeEngine engine;
  const GkmGraph p2 = build_projective_space(2);
  const std::vector<Insertion> list{ins(1, hyperplane(p2)), ins(0, point_class(p2, 2))};
  ComputeOptions opt;
  opt.mode = Mode::Specialize;
  opt.seed = 7;
  const auto spec = equivariant_invariant(p2, 0, B({2}), list, engine, opt);
  REQUIRE(spec.value.has_value());
  REQUIRE(spec.points.size() == 1);
  const LinFrac sym = symbolic(p2, 0, {2}, list, engine);
  CHECK(sym.specialize(spec.points[0]) == *spec.value);

  opt.expect_constant = true;
  std::vector<Insertion> five;
  for (int i = 0; i < 5; ++i) five.push_back(ins(0, point_class(p2, static_cast<std::size_t>(i % 3))));
  const auto c = equivariant_invariant(p2, 0, B({2}), five, engine, opt);
  CHECK(c.points.size() == 3);
  CHECK(*c.value == 1);
}

TEST_CASE("subtorus naturality") {
  HodgeEngine engine;
  const GkmGraph p2 = build_projective_space(2);
  const std::vector<std::vector<long long>> rho{{1, 0, 0}, {0, 1, 0}};
  const GkmGraph sub = restrict_subtorus(p2, rho);
  const auto images = subtorus_substitution(rho);
  const std::vector<Insertion> list{ins(1, hyperplane(p2)), ins(0, point_class(p2, 1))};
  std::vector<Insertion> sub_list;
  for (const auto& i : list) {
    EquivClass c;
    c.degree = i.cls.degree;
    for (const auto& r : i.cls.restrictions) c.restrictions.push_back(r.substitute(images));
    sub_list.push_back(ins(i.psi, c));
  }
  for (long long d = 1; d <= 2; ++d) {
    const LinFrac full = symbolic(p2, 0, {d}, list, engine);
    CHECK(full.substitute(images) == symbolic(sub, 0, {d}, sub_list, engine));
  }
}

TEST_CASE("genus series matches per-genus sums") {
  HodgeEngine engine;
  const GkmGraph p1 = build_projective_space(1);
  const std::vector<Insertion> list{ins(2, point_class(p1, 0))};
  const auto series = genus_series(p1, B({2}), list, 2, engine, 2);
  REQUIRE(series.size() == 3);
  for (const auto& [g, v] : series) CHECK(v == symbolic(p1, g, {2}, list, engine));
  const GkmGraph con = build_local_line({-1, -1});
  const auto cs = genus_series(con, B({1}), {}, 2, engine);
  for (const auto& [g, v] : cs) CHECK(v == symbolic(con, g, {1}, {}, engine));
}

TEST_CASE("result does not depend on worker count") {
  HodgeEngine engine;
  const GkmGraph gr = build_grassmannian(2, 4);
  const std::vector<Insertion> list{ins(0, point_class(gr, 0)), ins(1, point_class(gr, 3))};
  const LinFrac a = symbolic(gr, 0, {1}, list, engine, 1);
  HodgeEngine fresh;
  const LinFrac b = symbolic(gr, 0, {1}, list, fresh, 4);
  CHECK(a.to_string() == b.to_string());
}

TEST_CASE("non-equivariant limit") {
  const std::size_t m = 2;
  CHECK(*nonequivariant_limit(LinFrac::constant(m, ratio(3, 4))) == ratio(3, 4));
  LinFrac p = LinFrac::from_linear(L({1, 0})) + LinFrac::constant(m, 5);
  CHECK(*nonequivariant_limit(p) == 5);
  CHECK(!nonequivariant_limit(LinFrac::linear_power(L({1, -1}), -1)).has_value());
  CHECK(*nonequivariant_limit(LinFrac(m)) == 0);
}

TEST_CASE("stationary degree-one invariants of P1") {
  // <tau_{2g}(pt)>_{g,1} = 1 / (4^g (2g+1)!), from the degree-one completed cycle
  HodgeEngine engine;
  const GkmGraph p1 = build_projective_space(1);
  for (int g = 0; g <= 3; ++g) {
    Integer denom = 1;
    for (int i = 0; i < g; ++i) denom *= 4;
    for (int i = 2; i <= 2 * g + 1; ++i) denom *= i;
    const std::vector<Insertion> list{ins(2 * g, point_class(p1, static_cast<std::size_t>(g % 2)))};
    CHECK(symbolic(p1, g, {1}, list, engine) == LinFrac::constant(p1.m, ratio(1, denom)));
  }
}
