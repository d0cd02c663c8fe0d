#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>

#include "gwloc/hodge.hpp"

using namespace gwloc;

namespace {

// All exponent vectors of length n with entries <= max summing to total.
void vectors(std::size_t n, int total, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> a(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == n) {
      a[i] = left;
      visit(a);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      a[i] = x;
      rec(i + 1, left - x);
    }
  };
  if (n == 0) {
    if (total == 0) visit(a);
  } else {
    rec(0, total);
  }
}

Rational binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  Rational out = 1;
  for (long i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

}  // namespace

TEST_CASE("psi integral examples") {
  HodgeEngine e;
  CHECK(e.psi_integral(0, {0, 0, 0}) == 1);
  CHECK(e.psi_integral(0, {1, 1, 0, 0, 0}) == 2);
  CHECK(e.psi_integral(1, {1}) == Rational(1, 24));
  CHECK(e.psi_integral(0, {2, 0, 0}) == 0);
  CHECK(e.psi_integral(2, {4}) == Rational(1, 1152));
  CHECK(e.psi_integral(3, {7}) == Rational(1, 82944));
  CHECK(e.psi_integral(1, {1, 1}) == Rational(1, 24));
  CHECK(e.psi_integral(2, {2, 3}) == Rational(29, 5760));
  try {
    e.psi_integral(0, {0, 0});
    FAIL("expected UnstableRange");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::UnstableRange);
  }
  CHECK_THROWS_AS(e.psi_integral(1, {}), Error);
}

TEST_CASE("string and dilaton equations") {
  HodgeEngine e;
  for (int g = 0; g <= 2; ++g) {
    for (std::size_t n = 1; n <= 5; ++n) {
      if (2 * g - 2 + static_cast<int>(n) <= 0) continue;
      // Dimension after adding the extra point.
      vectors(n, 3 * g - 3 + static_cast<int>(n) + 1, [&](const std::vector<int>& a) {
        std::vector<int> with0 = a;
        with0.push_back(0);
        Rational expect = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (a[j] == 0) continue;
          std::vector<int> b = a;
          --b[j];
          expect += e.psi_integral(g, b);
        }
        CHECK(e.psi_integral(g, with0) == expect);
      });
      vectors(n, 3 * g - 3 + static_cast<int>(n), [&](const std::vector<int>& a) {
        std::vector<int> with1 = a;
        with1.push_back(1);
        CHECK(e.psi_integral(g, with1) == (2 * g - 2 + static_cast<int>(n)) * e.psi_integral(g, a));
      });
    }
  }
}

TEST_CASE("genus zero closed form agrees with the recursion") {
  for (std::size_t n = 3; n <= 8; ++n) {
    vectors(n, static_cast<int>(n) - 3, [&](const std::vector<int>& a) {
      CHECK(genus_zero_psi(a) == psi_integral_by_recursion(0, a));
    });
  }
  HodgeEngine e;
  CHECK(psi_integral_by_recursion(2, {2, 3}) == e.psi_integral(2, {2, 3}));
  CHECK(psi_integral_by_recursion(2, {1, 1, 1, 1, 3}) == e.psi_integral(2, {1, 1, 1, 1, 3}));
}

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(4) == Rational(-1, 30));
  CHECK(bernoulli(6) == Rational(1, 42));
}

TEST_CASE("hodge integral examples") {
  HodgeEngine e;
  CHECK(e.hodge_integral(1, {0}, {1}) == Rational(1, 24));
  CHECK(e.hodge_integral(1, {1}, {1}) == 0);
  CHECK(e.hodge_integral(2, {4}, {0, 0}) == e.psi_integral(2, {4}));
  // Known top intersections on M_2-bar.
  CHECK(e.tautological_integral(2, {0}, {}, {}) == 0);
  CHECK(e.hodge_integral(2, {0, 0}, {1, 1}) == 0);  // wrong degree
  CHECK(e.hodge_integral(2, {1}, {1, 1}) == ratio(2, 5760));  // dilaton of lambda1 lambda2
  CHECK(e.hodge_integral(2, {1}, {3, 0}) == ratio(2, 2880));
  CHECK(e.hodge_integral(2, {3}, {1, 0}) == Rational(1, 480));
  CHECK(e.hodge_integral(2, {2}, {0, 1}) == Rational(7, 5760));
  CHECK(e.hodge_integral(3, {1}, {1, 1, 1}) == ratio(4, 1451520));  // dilaton of lambda1 lambda2 lambda3
}

TEST_CASE("lambda_g formula") {
  // int psi^a lambda_g = C(2g-3+n, a) * b_g with b_1 = 1/24, b_2 = 7/5760.
  HodgeEngine e;
  const Rational b[] = {0, Rational(1, 24), Rational(7, 5760)};
  for (int g = 1; g <= 2; ++g) {
    for (std::size_t n = 1; n <= 4; ++n) {
      vectors(n, 2 * g - 3 + static_cast<int>(n), [&](const std::vector<int>& a) {
        std::vector<int> k(g, 0);
        k[g - 1] = 1;
        Rational multinomial = 1;
        long left = 2 * g - 3 + static_cast<long>(n);
        for (int x : a) {
          multinomial *= binom(left, x);
          left -= x;
        }
        CHECK(e.hodge_integral(g, a, k) == multinomial * b[g]);
      });
    }
  }
}

TEST_CASE("Mumford relation lambda1^2 = 2 lambda2 in genus 2") {
  HodgeEngine e;
  for (std::size_t n = 1; n <= 3; ++n) {
    vectors(n, 3 * 2 - 3 + static_cast<int>(n) - 2, [&](const std::vector<int>& a) {
      CHECK(e.hodge_integral(2, a, {2, 0}) == 2 * e.hodge_integral(2, a, {0, 1}));
    });
  }
  // lambda_2^2 = 0
  CHECK(e.hodge_integral(2, {0, 0}, {0, 2}) == 0);
}

TEST_CASE("memoized and fresh values agree") {
  HodgeEngine warm;
  for (int rep = 0; rep < 2; ++rep) {
    HodgeEngine fresh;
    CHECK(warm.hodge_integral(2, {1, 2}, {1, 0}) == fresh.hodge_integral(2, {1, 2}, {1, 0}));
    CHECK(warm.psi_integral(2, {1, 1, 4}) == fresh.psi_integral(2, {1, 1, 4}));
  }
}

TEST_CASE("memo persistence") {
  const auto dir = std::filesystem::temp_directory_path() / "gwloc_memo_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "memo.txt";

  HodgeEngine a;
  a.hodge_integral(2, {2}, {0, 1});
  a.psi_integral(2, {1, 1, 4});
  REQUIRE(a.size() > 0);
  a.save(path);
  HodgeEngine b;
  b.load(path);
  CHECK(a.psi_entries() == b.psi_entries());
  CHECK(a.hodge_entries() == b.hodge_entries());
  b.save(dir / "memo2.txt");
  std::ifstream f1(path), f2(dir / "memo2.txt");
  std::string s1((std::istreambuf_iterator<char>(f1)), {}), s2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(s1 == s2);

  HodgeEngine empty, empty2;
  empty.save(dir / "empty.txt");
  empty2.load(dir / "empty.txt");
  CHECK(empty2.size() == 0);

  {
    std::ofstream bad(dir / "bad.txt");
    bad << "hodgecache v0\n";
  }
  try {
    empty2.load(dir / "bad.txt");
    FAIL("expected VersionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VersionMismatch);
  }
  {
    std::ofstream bad(dir / "corrupt.txt");
    bad << "hodgecache v1\nP;1;1=1/24\nX;garbage\n";
  }
  try {
    empty2.load(dir / "corrupt.txt");
    FAIL("expected CorruptEntry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CorruptEntry);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("lambda_expand") {
  const LinearForm w = LinearForm::from_ints(std::vector<long long>{1, -1});
  auto t0 = lambda_expand(0, w);
  REQUIRE(t0.size() == 1);
  CHECK(t0[0].coeff == LinFrac::constant(2, 1));
  auto t2 = lambda_expand(2, w);
  REQUIRE(t2.size() == 3);
  CHECK(t2[0].lambda == std::vector<int>{0, 0});
  CHECK(t2[0].coeff == LinFrac::linear_power(w, 2));
  CHECK(t2[1].lambda == std::vector<int>{1, 0});
  CHECK(t2[1].coeff == -LinFrac::from_linear(w));
  CHECK(t2[2].lambda == std::vector<int>{0, 1});
  CHECK(t2[2].coeff == LinFrac::constant(2, 1));
}

TEST_CASE("vertex bracket unstable conventions") {
  HodgeEngine e;
  const LinearForm w = LinearForm::variable(2, 0);
  const LinFrac W = LinFrac::from_linear(w);
  for (int d = 1; d <= 4; ++d) {
    CHECK(vertex_bracket({0, {{d}}, {w}, {}}, e) == Rational(1, d) * W);
    for (int a = 0; a <= 4; ++a) {
      CHECK(vertex_bracket({0, {{d}}, {w}, {a}}, e) == (Rational(-1, d) * W).pow(a));
    }
    for (int d2 = 1; d2 <= 3; ++d2) {
      CHECK(vertex_bracket({0, {{d, d2}}, {w}, {}}, e) == LinFrac::constant(2, ratio(d * d2, d + d2)));
    }
  }
  // Two directions: w1 w2 / (w1/d1 + w2/d2).
  const LinearForm v = LinearForm::variable(2, 1);
  CHECK(vertex_bracket({0, {{2}, {3}}, {w, v}, {}}, e) ==
        LinFrac::parse("u1*u2 / (u1/2 + u2/3)", 2));
  // Noncompact / empty directions enter with exponent l-1 = 0.
  CHECK(vertex_bracket({0, {{1}, {}}, {w, v}, {}}, e) == W);
}

TEST_CASE("vertex bracket matches genus-zero closed forms") {
  HodgeEngine e;
  const std::size_t m = 7;
  std::vector<LinearForm> ws;
  for (std::size_t i = 0; i < m; ++i) ws.push_back(LinearForm::variable(m, i));
  for (std::size_t n = 3; n <= 7; ++n) {
    // int 1/prod(w_i - psi_i) = (1/prod w_i) (sum 1/w_i)^{n-3}, checked
    // through the bracket with one part of size 1 per direction.
    VertexProblem p{0, {}, {}, {}};
    for (std::size_t i = 0; i < n; ++i) {
      p.partitions.push_back({1});
      p.weights.push_back(ws[i]);
    }
    LinFrac inv_sum(m);
    LinFrac prod = LinFrac::constant(m, 1);
    for (std::size_t i = 0; i < n; ++i) {
      inv_sum += LinFrac::linear_power(ws[i], -1);
      prod *= LinFrac::from_linear(ws[i]);
    }
    LinFrac expected = prod.pow(static_cast<int>(n) - 1) * prod.pow(-1) * inv_sum.pow(static_cast<int>(n) - 3);
    CHECK(vertex_bracket(p, e) == expected);
  }
  // int psi_2^a / (w_1 - psi_1) over M_{0,n}, as a bracket with one
  // edge and n-1 markings (one carrying a).
  const LinearForm w = ws[0];
  for (int n = 2; n <= 7; ++n) {
    for (int a = 0; a <= 4; ++a) {
      VertexProblem p{0, {{1}}, {w}, {}};
      p.markings.push_back(a);
      for (int i = 2; i < n; ++i) p.markings.push_back(0);
      Rational c = 0;
      int power = a + 2 - n;
      if (n == 2 || a <= n - 3) {
        c = 1;
        for (int i = 0; i < a; ++i) c *= (n - 3 - i);
        for (int i = 2; i <= a; ++i) c /= i;
      }
      const LinFrac expected = n == 2 ? Rational(a % 2 ? -1 : 1) * LinFrac::from_linear(w).pow(a)
                                      : c * LinFrac::linear_power(w, power);
      CHECK(vertex_bracket(p, e) == expected);
    }
  }
}
