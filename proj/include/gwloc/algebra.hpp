#pragma once

// Exact arithmetic in Q(u_1, ..., u_m) restricted to fractions whose
// denominators are products of linear forms.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "gwloc/error.hpp"

namespace gwloc {

using Rational = mpq_class;
using Integer = mpz_class;

/// n / d in lowest terms.
inline Rational ratio(const Integer& n, const Integer& d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

/// Sum_i c_i u_i.  Arbitrary sign and scale; see normalized().
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}

  static LinearForm variable(std::size_t nvars, std::size_t index);
  static LinearForm from_ints(std::span<const long long> coeffs);

  std::size_t nvars() const { return coeffs_.size(); }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// Index of the first nonzero coefficient, or nvars() if zero.
  std::size_t leading_index() const;

  Rational evaluate(std::span<const Rational> point) const;

  /// Returns (c, L) with *this == c * L, where L has coprime integer
  /// coefficients and a positive first nonzero coefficient.
  std::pair<Rational, LinearForm> normalized() const;
  bool is_normalized() const;

  /// q with *this == q * other, if the two are proportional.
  std::optional<Rational> ratio_to(const LinearForm& other) const;
  bool is_parallel_to(const LinearForm& other) const;

  /// All coefficients are integers.
  bool is_integral() const;

  std::string to_string() const;

  friend LinearForm operator+(const LinearForm& a, const LinearForm& b);
  friend LinearForm operator-(const LinearForm& a, const LinearForm& b);
  friend LinearForm operator-(const LinearForm& a);
  friend LinearForm operator*(const Rational& s, const LinearForm& a);
  friend bool operator==(const LinearForm& a, const LinearForm& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator<(const LinearForm& a, const LinearForm& b) { return a.coeffs_ < b.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
};

using Exponent = std::vector<int>;

/// Polynomial in Q[u_1, ..., u_m] stored as exponent -> nonzero coefficient,
/// lexicographically ordered.
class SparsePoly {
 public:
  using Terms = std::map<Exponent, Rational>;

  explicit SparsePoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static SparsePoly constant(std::size_t nvars, const Rational& c);
  static SparsePoly variable(std::size_t nvars, std::size_t index);
  static SparsePoly from_linear(const LinearForm& form);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Exponent& e, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// Maximal total degree; -1 for zero.
  int total_degree() const;
  /// Common total degree of all terms, if any (nullopt for zero too).
  std::optional<int> homogeneous_degree() const;

  Rational evaluate(std::span<const Rational> point) const;

  /// Substitute u_i -> images[i]; images live in the target ring.
  SparsePoly substitute(std::span<const LinearForm> images) const;

  SparsePoly pow(unsigned k) const;

  std::string to_string() const;

  SparsePoly& operator+=(const SparsePoly& other);
  SparsePoly& operator-=(const SparsePoly& other);
  SparsePoly& operator*=(const Rational& s);

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator-(const SparsePoly& a);
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const Rational& s, SparsePoly a) { return a *= s; }
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_;
  Terms terms_;
};

/// Exact quotient p / form, or nullopt when form does not divide p.
std::optional<SparsePoly> divide_by_linear(const SparsePoly& p, const LinearForm& form);

/// numerator / prod_i L_i^{k_i} with normalized L_i.
class LinFrac {
 public:
  using Denominator = std::map<LinearForm, int>;

  explicit LinFrac(std::size_t nvars = 0) : num_(nvars) {}
  explicit LinFrac(SparsePoly numerator) : num_(std::move(numerator)) {}
  LinFrac(SparsePoly numerator, Denominator denominator);

  static LinFrac constant(std::size_t nvars, const Rational& c);
  static LinFrac from_linear(const LinearForm& form);
  /// form^power for any integer power; form must be nonzero if power < 0.
  static LinFrac linear_power(const LinearForm& form, int power);

  std::size_t nvars() const { return num_.nvars(); }
  const SparsePoly& numerator() const { return num_; }
  const Denominator& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }

  /// Cancels every denominator factor that divides the numerator.
  LinFrac& normalize();
  LinFrac normalized() const;

  /// Inverse of a fraction whose numerator is a scalar times a product of
  /// linear forms. Factors are found among the constant/monomial/linear
  /// shapes and by trial division against the fraction's own denominator
  /// factors, the coordinate forms, and `candidates`.
  LinFrac inverse(std::span<const LinearForm> candidates = {}) const;

  LinFrac pow(int k) const;

  Rational specialize(std::span<const Rational> point) const;

  std::optional<SparsePoly> as_polynomial() const;
  /// Complex degree: deg(numerator) - sum of multiplicities.
  std::optional<int> homogeneous_degree() const;

  LinFrac substitute(std::span<const LinearForm> images) const;

  std::string to_string() const;
  static LinFrac parse(std::string_view text, std::size_t nvars);

  LinFrac& operator+=(const LinFrac& other);
  LinFrac& operator*=(const LinFrac& other);
  LinFrac& operator*=(const Rational& s);

  friend LinFrac operator+(LinFrac a, const LinFrac& b) { return a += b; }
  friend LinFrac operator-(const LinFrac& a);
  friend LinFrac operator-(LinFrac a, const LinFrac& b) { return a += -b; }
  friend LinFrac operator*(LinFrac a, const LinFrac& b) { return a *= b; }
  friend LinFrac operator*(const Rational& s, LinFrac a) { return a *= s; }
  friend bool operator==(const LinFrac& a, const LinFrac& b);

 private:
  SparsePoly num_;
  Denominator den_;
};

/// Exact sum over a common denominator, normalized once at the end.
LinFrac sum(std::span<const LinFrac> terms, std::size_t nvars);

}  // namespace gwloc
