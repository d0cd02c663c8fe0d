#include "gwloc/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace gwloc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InversionUnsupported: return "InversionUnsupported";
    case ErrorCode::PoleAtPoint: return "PoleAtPoint";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::UnstableRange: return "UnstableRange";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptEntry: return "CorruptEntry";
    case ErrorCode::Ambiguous: return "Ambiguous";
    case ErrorCode::NoIntegerDegree: return "NoIntegerDegree";
    case ErrorCode::DegenerateSubtorus: return "DegenerateSubtorus";
    case ErrorCode::InconsistentChernData: return "InconsistentChernData";
    case ErrorCode::Validation: return "ValidationFailed";
    case ErrorCode::SpecializationDisagreement: return "SpecializationDisagreement";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownBuilder: return "UnknownBuilder";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  Rational q;
  std::string s(text);
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorCode::Parse, "not a rational number: '" + s + "'");
  }
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// LinearForm

LinearForm LinearForm::variable(std::size_t nvars, std::size_t index) {
  std::vector<Rational> c(nvars, Rational(0));
  c.at(index) = 1;
  return LinearForm(std::move(c));
}

LinearForm LinearForm::from_ints(std::span<const long long> coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (long long v : coeffs) c.emplace_back(Integer(static_cast<long>(v)));
  return LinearForm(std::move(c));
}

bool LinearForm::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

std::size_t LinearForm::leading_index() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return i;
  }
  return coeffs_.size();
}

Rational LinearForm::evaluate(std::span<const Rational> point) const {
  Rational acc = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) acc += coeffs_[i] * point[i];
  }
  return acc;
}

std::pair<Rational, LinearForm> LinearForm::normalized() const {
  const std::size_t lead = leading_index();
  if (lead == coeffs_.size()) {
    throw Error(ErrorCode::DivisionByZero, "cannot normalize the zero linear form");
  }
  Integer den_lcm = 1;
  for (const auto& c : coeffs_) {
    if (c != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Integer num_gcd = 0;
  for (const auto& c : coeffs_) {
    if (c == 0) continue;
    Integer scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational scale(num_gcd, den_lcm);
  scale.canonicalize();
  if (coeffs_[lead] < 0) scale = -scale;
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c / scale);
  return {scale, LinearForm(std::move(out))};
}

bool LinearForm::is_normalized() const {
  const std::size_t lead = leading_index();
  if (lead == coeffs_.size() || coeffs_[lead] < 0) return false;
  Integer g = 0;
  for (const auto& c : coeffs_) {
    if (c.get_den() != 1) return false;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  }
  return g == 1;
}

std::optional<Rational> LinearForm::ratio_to(const LinearForm& other) const {
  if (other.nvars() != nvars()) return std::nullopt;
  const std::size_t lead = other.leading_index();
  if (lead == other.nvars()) return std::nullopt;
  Rational q = coeffs_[lead] / other.coeffs_[lead];
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != q * other.coeffs_[i]) return std::nullopt;
  }
  return q;
}

bool LinearForm::is_parallel_to(const LinearForm& other) const {
  if (is_zero() || other.is_zero()) return true;
  return ratio_to(other).has_value();
}

bool LinearForm::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

namespace {

std::string format_monomial(const Exponent& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'u' + std::to_string(i + 1);
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out;
}

// Appends "c*mono" with sign handling; first term keeps a bare leading '-'.
void append_term(std::string& out, const Rational& c, const std::string& mono) {
  const bool negative = c < 0;
  const Rational mag = negative ? Rational(-c) : c;
  if (out.empty()) {
    if (negative) out += '-';
  } else {
    out += negative ? " - " : " + ";
  }
  if (mono.empty()) {
    out += mag.get_str();
  } else if (mag == 1) {
    out += mono;
  } else {
    out += mag.get_str() + "*" + mono;
  }
}

}  // namespace

std::string LinearForm::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    append_term(out, coeffs_[i], "u" + std::to_string(i + 1));
  }
  return out.empty() ? "0" : out;
}

LinearForm operator+(const LinearForm& a, const LinearForm& b) {
  std::vector<Rational> c(a.coeffs_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_.at(i);
  return LinearForm(std::move(c));
}

LinearForm operator-(const LinearForm& a, const LinearForm& b) { return a + (-b); }

LinearForm operator-(const LinearForm& a) {
  std::vector<Rational> c(a.coeffs_);
  for (auto& x : c) x = -x;
  return LinearForm(std::move(c));
}

LinearForm operator*(const Rational& s, const LinearForm& a) {
  std::vector<Rational> c(a.coeffs_);
  for (auto& x : c) x *= s;
  return LinearForm(std::move(c));
}

// ---------------------------------------------------------------------------
// SparsePoly

SparsePoly SparsePoly::constant(std::size_t nvars, const Rational& c) {
  SparsePoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

SparsePoly SparsePoly::variable(std::size_t nvars, std::size_t index) {
  SparsePoly p(nvars);
  Exponent e(nvars, 0);
  e.at(index) = 1;
  p.add_term(e, Rational(1));
  return p;
}

SparsePoly SparsePoly::from_linear(const LinearForm& form) {
  SparsePoly p(form.nvars());
  for (std::size_t i = 0; i < form.nvars(); ++i) {
    if (form[i] == 0) continue;
    Exponent e(form.nvars(), 0);
    e[i] = 1;
    p.add_term(e, form[i]);
  }
  return p;
}

void SparsePoly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool SparsePoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational SparsePoly::constant_term() const {
  auto it = terms_.find(Exponent(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int SparsePoly::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    best = std::max(best, std::accumulate(e.begin(), e.end(), 0));
  }
  return best;
}

std::optional<int> SparsePoly::homogeneous_degree() const {
  std::optional<int> deg;
  for (const auto& [e, c] : terms_) {
    const int d = std::accumulate(e.begin(), e.end(), 0);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

Rational SparsePoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) {
    throw Error(ErrorCode::InvalidArgument, "evaluation point has wrong dimension");
  }
  // Powers are cached per variable; exponents stay small.
  std::vector<std::vector<Rational>> powers(nvars_, std::vector<Rational>{Rational(1)});
  auto power = [&](std::size_t i, int k) -> const Rational& {
    auto& cache = powers[i];
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * point[i]);
    return cache[k];
  };
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] != 0) t *= power(i, e[i]);
    }
    acc += t;
  }
  return acc;
}

SparsePoly SparsePoly::substitute(std::span<const LinearForm> images) const {
  if (images.size() != nvars_) {
    throw Error(ErrorCode::InvalidArgument, "substitution needs one image per variable");
  }
  const std::size_t target = images.empty() ? 0 : images.front().nvars();
  std::vector<std::vector<SparsePoly>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) powers[i].push_back(constant(target, 1));
  auto power = [&](std::size_t i, int k) -> const SparsePoly& {
    auto& cache = powers[i];
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * from_linear(images[i]));
    return cache[k];
  };
  SparsePoly out(target);
  for (const auto& [e, c] : terms_) {
    SparsePoly t = constant(target, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] != 0) t = t * power(i, e[i]);
    }
    out += t;
  }
  return out;
}

SparsePoly SparsePoly::pow(unsigned k) const {
  SparsePoly result = constant(nvars_, 1);
  SparsePoly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

std::string SparsePoly::to_string() const {
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    append_term(out, it->second, format_monomial(it->first));
  }
  return out.empty() ? "0" : out;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

SparsePoly operator-(const SparsePoly& a) {
  SparsePoly out = a;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out(std::max(a.nvars_, b.nvars_));
  if (a.is_zero() || b.is_zero()) return out;
  Exponent e(out.nvars_);
  Rational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      prod = ca * cb;
      out.add_term(e, prod);
    }
  }
  return out;
}

std::optional<SparsePoly> divide_by_linear(const SparsePoly& p, const LinearForm& form) {
  const std::size_t k = form.leading_index();
  if (k == form.nvars()) {
    throw Error(ErrorCode::DivisionByZero, "division by the zero linear form");
  }
  if (p.is_zero()) return SparsePoly(p.nvars());

  // Slice p by the exponent of the pivot variable u_k; L = c u_k + R.
  using Slice = std::map<Exponent, Rational>;
  int top = 0;
  for (const auto& [e, c] : p.terms()) top = std::max(top, e[k]);
  if (top == 0) return std::nullopt;
  std::vector<Slice> slices(top + 1);
  for (const auto& [e, c] : p.terms()) {
    Exponent rest = e;
    rest[k] = 0;
    slices[e[k]].emplace(std::move(rest), c);
  }
  const Rational inv_lead = 1 / form[k];
  auto times_rest = [&](const Slice& s) {
    Slice out;
    for (const auto& [e, c] : s) {
      for (std::size_t i = 0; i < form.nvars(); ++i) {
        if (i == k || form[i] == 0) continue;
        Exponent shifted = e;
        ++shifted[i];
        Rational v = c * form[i];
        auto [it, inserted] = out.try_emplace(std::move(shifted), v);
        if (!inserted) {
          it->second += v;
          if (it->second == 0) out.erase(it);
        }
      }
    }
    return out;
  };
  auto minus_scaled = [&](const Slice& a, const Slice& b) {
    Slice out = a;
    for (const auto& [e, c] : b) {
      auto [it, inserted] = out.try_emplace(e, -c);
      if (!inserted) {
        it->second -= c;
        if (it->second == 0) out.erase(it);
      }
    }
    for (auto& [e, c] : out) c *= inv_lead;
    return out;
  };

  // p_e = c q_{e-1} + R q_e, solved from the top slice down.
  std::vector<Slice> q(top);
  q[top - 1] = minus_scaled(slices[top], Slice{});
  for (int e = top - 1; e >= 1; --e) {
    q[e - 1] = minus_scaled(slices[e], times_rest(q[e]));
  }
  Slice rem = slices[0];
  for (const auto& [e, c] : times_rest(q[0])) {
    auto [it, inserted] = rem.try_emplace(e, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) rem.erase(it);
    }
  }
  if (!rem.empty()) return std::nullopt;

  SparsePoly out(p.nvars());
  for (int e = 0; e < top; ++e) {
    for (const auto& [rest, c] : q[e]) {
      Exponent full = rest;
      full[k] = e;
      out.add_term(full, c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// LinFrac

namespace {

// Expanded powers of normalized forms, reused inside one operation.
class PowerCache {
 public:
  const SparsePoly& get(const LinearForm& form, int k) {
    auto& cache = cache_[form];
    if (cache.empty()) cache.push_back(SparsePoly::constant(form.nvars(), 1));
    while (static_cast<int>(cache.size()) <= k) {
      cache.push_back(cache.back() * SparsePoly::from_linear(form));
    }
    return cache[k];
  }

 private:
  std::map<LinearForm, std::vector<SparsePoly>> cache_;
};

Rational rational_pow(const Rational& base, int k) {
  Rational out = 1;
  const bool invert = k < 0;
  for (int i = 0; i < (invert ? -k : k); ++i) out *= base;
  return invert ? Rational(1 / out) : out;
}

}  // namespace

LinFrac::LinFrac(SparsePoly numerator, Denominator denominator) : num_(std::move(numerator)) {
  for (const auto& [form, k] : denominator) {
    if (k <= 0) {
      throw Error(ErrorCode::InvalidArgument, "denominator multiplicities must be positive");
    }
    auto [scale, unit] = form.normalized();
    den_[unit] += k;
    num_ *= rational_pow(scale, -k);
  }
  normalize();
}

LinFrac LinFrac::constant(std::size_t nvars, const Rational& c) {
  return LinFrac(SparsePoly::constant(nvars, c));
}

LinFrac LinFrac::from_linear(const LinearForm& form) {
  return LinFrac(SparsePoly::from_linear(form));
}

LinFrac LinFrac::linear_power(const LinearForm& form, int power) {
  if (power >= 0) return LinFrac(SparsePoly::from_linear(form).pow(static_cast<unsigned>(power)));
  auto [scale, unit] = form.normalized();
  LinFrac out(SparsePoly::constant(form.nvars(), rational_pow(scale, power)));
  out.den_[unit] = -power;
  return out;
}

LinFrac& LinFrac::normalize() {
  if (num_.is_zero()) {
    den_.clear();
    return *this;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0) {
      auto q = divide_by_linear(num_, it->first);
      if (!q) break;
      num_ = std::move(*q);
      --it->second;
    }
    it = it->second == 0 ? den_.erase(it) : std::next(it);
  }
  return *this;
}

LinFrac LinFrac::normalized() const {
  LinFrac out = *this;
  out.normalize();
  return out;
}

LinFrac LinFrac::inverse(std::span<const LinearForm> candidates) const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const std::size_t m = nvars();

  std::vector<LinearForm> pool;
  for (const auto& [form, k] : den_) pool.push_back(form);
  for (std::size_t i = 0; i < m; ++i) pool.push_back(LinearForm::variable(m, i));
  for (const auto& c : candidates) {
    if (!c.is_zero()) pool.push_back(c.normalized().second);
  }

  SparsePoly rest = num_;
  Denominator factors;
  Rational scalar = 1;
  while (true) {
    if (rest.is_constant()) {
      scalar = rest.constant_term();
      break;
    }
    if (rest.size() == 1) {
      const auto& [e, c] = *rest.terms().begin();
      for (std::size_t i = 0; i < m; ++i) {
        if (e[i] > 0) factors[LinearForm::variable(m, i)] += e[i];
      }
      scalar = c;
      break;
    }
    if (rest.homogeneous_degree() == 1) {
      std::vector<Rational> c(m, Rational(0));
      for (const auto& [e, coeff] : rest.terms()) {
        c[std::find(e.begin(), e.end(), 1) - e.begin()] = coeff;
      }
      auto [scale, unit] = LinearForm(std::move(c)).normalized();
      factors[unit] += 1;
      scalar = scale;
      break;
    }
    bool found = false;
    for (const auto& form : pool) {
      if (auto q = divide_by_linear(rest, form)) {
        factors[form] += 1;
        rest = std::move(*q);
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(ErrorCode::InversionUnsupported,
                  "numerator is not a recognizable product of linear forms: " + num_.to_string());
    }
  }

  PowerCache powers;
  SparsePoly top = SparsePoly::constant(m, 1 / scalar);
  for (const auto& [form, k] : den_) top = top * powers.get(form, k);
  LinFrac out(std::move(top));
  out.den_ = std::move(factors);
  out.normalize();
  return out;
}

LinFrac LinFrac::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  LinFrac result = constant(nvars(), 1);
  for (int i = 0; i < k; ++i) result *= *this;
  return result;
}

Rational LinFrac::specialize(std::span<const Rational> point) const {
  if (is_zero()) return 0;
  Rational den = 1;
  for (const auto& [form, k] : den_) {
    const Rational v = form.evaluate(point);
    if (v == 0) {
      throw Error(ErrorCode::PoleAtPoint, "denominator factor " + form.to_string() + " vanishes");
    }
    den *= rational_pow(v, k);
  }
  return num_.evaluate(point) / den;
}

std::optional<SparsePoly> LinFrac::as_polynomial() const {
  LinFrac n = normalized();
  if (!n.den_.empty()) return std::nullopt;
  return n.num_;
}

std::optional<int> LinFrac::homogeneous_degree() const {
  if (is_zero()) throw Error(ErrorCode::ZeroInput, "degree of the zero fraction");
  auto d = num_.homogeneous_degree();
  if (!d) return std::nullopt;
  int total = *d;
  for (const auto& [form, k] : den_) total -= k;
  return total;
}

LinFrac LinFrac::substitute(std::span<const LinearForm> images) const {
  Denominator den;
  for (const auto& [form, k] : den_) {
    LinearForm image(std::vector<Rational>(images.empty() ? 0 : images.front().nvars(), Rational(0)));
    for (std::size_t i = 0; i < form.nvars(); ++i) {
      if (form[i] != 0) image = image + form[i] * images[i];
    }
    if (image.is_zero()) {
      throw Error(ErrorCode::DivisionByZero, "substitution sends denominator factor " +
                                                 form.to_string() + " to zero");
    }
    den[image] += k;
  }
  return LinFrac(num_.substitute(images), std::move(den));
}

std::string LinFrac::to_string() const {
  if (num_.is_zero()) return "0";
  std::string top = num_.to_string();
  if (den_.empty()) return top;
  if (num_.size() > 1) top = "(" + top + ")";
  std::vector<std::string> parts;
  for (const auto& [form, k] : den_) {
    std::string f = form.to_string();
    const bool bare = SparsePoly::from_linear(form).size() == 1 && form[form.leading_index()] == 1;
    if (!bare) f = "(" + f + ")";
    if (k > 1) f += "^" + std::to_string(k);
    parts.push_back(std::move(f));
  }
  if (parts.size() == 1) return top + " / " + parts.front();
  std::string bottom;
  for (const auto& p : parts) bottom += (bottom.empty() ? "" : " * ") + p;
  return top + " / (" + bottom + ")";
}

LinFrac& LinFrac::operator+=(const LinFrac& other) {
  const LinFrac parts[2] = {std::move(*this), other};
  *this = sum(parts, std::max(parts[0].nvars(), parts[1].nvars()));
  return *this;
}

LinFrac& LinFrac::operator*=(const LinFrac& other) {
  if (is_zero() || other.is_zero()) {
    num_ = SparsePoly(std::max(nvars(), other.nvars()));
    den_.clear();
    return *this;
  }
  num_ = num_ * other.num_;
  for (const auto& [form, k] : other.den_) den_[form] += k;
  return normalize();
}

LinFrac& LinFrac::operator*=(const Rational& s) {
  num_ *= s;
  if (num_.is_zero()) den_.clear();
  return *this;
}

LinFrac operator-(const LinFrac& a) {
  LinFrac out = a;
  out.num_ = -out.num_;
  return out;
}

bool operator==(const LinFrac& a, const LinFrac& b) {
  LinFrac x = a.normalized();
  LinFrac y = b.normalized();
  if (x.den_ == y.den_) return x.num_ == y.num_;
  // Different factor sets: compare over the least common denominator.
  LinFrac::Denominator lcm = x.den_;
  for (const auto& [form, k] : y.den_) lcm[form] = std::max(lcm[form], k);
  PowerCache powers;
  auto lift = [&](const LinFrac& f) {
    SparsePoly p = f.num_;
    for (const auto& [form, k] : lcm) {
      auto it = f.den_.find(form);
      const int missing = k - (it == f.den_.end() ? 0 : it->second);
      if (missing > 0) p = p * powers.get(form, missing);
    }
    return p;
  };
  return lift(x) == lift(y);
}

LinFrac sum(std::span<const LinFrac> terms, std::size_t nvars) {
  LinFrac::Denominator lcm;
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    for (const auto& [form, k] : t.denominator()) lcm[form] = std::max(lcm[form], k);
  }
  PowerCache powers;
  SparsePoly top(nvars);
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    SparsePoly p = t.numerator();
    for (const auto& [form, k] : lcm) {
      auto it = t.denominator().find(form);
      const int missing = k - (it == t.denominator().end() ? 0 : it->second);
      if (missing > 0) p = p * powers.get(form, missing);
    }
    top += p;
  }
  return LinFrac(std::move(top), std::move(lcm));
}

}  // namespace gwloc
