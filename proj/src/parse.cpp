// Recursive-descent reader for the fraction grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' INT)?
//   primary := INT | 'u' INT | '(' expr ')'
// Division needs a right operand that is a product of linear forms; values
// built only from products keep their factorization so that e.g.
// "p / ((u1 - u2)^2 * u3)" is accepted.

#include <cctype>
#include <optional>

#include "gwloc/algebra.hpp"

namespace gwloc {
namespace {

struct Factored {
  Rational scalar;
  std::map<LinearForm, int> powers;  // normalized form -> nonzero exponent
};

struct Value {
  LinFrac frac;
  std::optional<Factored> factors;
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  LinFrac run() {
    Value v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v.frac.normalized();
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, msg + " at offset " + std::to_string(pos_) + " in '" +
                                      std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Integer integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Value from_factors(Factored f) {
    LinFrac frac = LinFrac::constant(nvars_, f.scalar);
    for (const auto& [form, k] : f.powers) frac *= LinFrac::linear_power(form, k);
    return Value{std::move(frac), std::move(f)};
  }

  // A sum that collapsed into a constant or a single linear form regains
  // its factored shape.
  Value refactor(LinFrac frac) {
    frac.normalize();
    if (frac.denominator().empty()) {
      const SparsePoly& p = frac.numerator();
      if (p.is_constant()) return Value{frac, Factored{p.constant_term(), {}}};
      if (p.homogeneous_degree() == 1) {
        std::vector<Rational> c(nvars_, Rational(0));
        for (const auto& [e, coeff] : p.terms()) {
          for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 1) c[i] = coeff;
          }
        }
        auto [scale, unit] = LinearForm(std::move(c)).normalized();
        return Value{frac, Factored{scale, {{unit, 1}}}};
      }
    }
    return Value{std::move(frac), std::nullopt};
  }

  Value expr() {
    Value acc = term();
    while (true) {
      if (accept('+')) {
        acc = refactor(acc.frac + term().frac);
      } else if (accept('-')) {
        acc = refactor(acc.frac - term().frac);
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = unary();
    while (true) {
      if (accept('*')) {
        acc = multiply(std::move(acc), unary(), false);
      } else if (accept('/')) {
        acc = multiply(std::move(acc), unary(), true);
      } else {
        return acc;
      }
    }
  }

  Value multiply(Value a, Value b, bool divide) {
    if (divide) {
      if (b.frac.is_zero()) fail("division by zero");
      if (!b.factors) {
        try {
          b = Value{b.frac.inverse(), std::nullopt};
        } catch (const Error& e) {
          fail(std::string("divisor is not a product of linear forms (") + e.what() + ")");
        }
        return Value{a.frac * b.frac, std::nullopt};
      }
      b.factors->scalar = 1 / b.factors->scalar;
      for (auto& [form, k] : b.factors->powers) k = -k;
      b.frac = from_factors(*b.factors).frac;
    }
    if (a.factors && b.factors) {
      Factored f = *a.factors;
      f.scalar *= b.factors->scalar;
      for (const auto& [form, k] : b.factors->powers) {
        if ((f.powers[form] += k) == 0) f.powers.erase(form);
      }
      return from_factors(std::move(f));
    }
    return Value{a.frac * b.frac, std::nullopt};
  }

  Value unary() {
    if (accept('-')) {
      Value v = unary();
      if (v.factors) v.factors->scalar = -v.factors->scalar;
      v.frac = -v.frac;
      return v;
    }
    if (accept('+')) return unary();
    return power();
  }

  Value power() {
    Value base = primary();
    if (!accept('^')) return base;
    const Integer k = integer();
    if (!k.fits_sint_p() || k > 4096) fail("exponent too large");
    const int e = static_cast<int>(k.get_si());
    if (base.factors) {
      Factored f = *base.factors;
      Rational s = 1;
      for (int i = 0; i < e; ++i) s *= f.scalar;
      f.scalar = s;
      for (auto it = f.powers.begin(); it != f.powers.end();) {
        it->second *= e;
        it = it->second == 0 ? f.powers.erase(it) : std::next(it);
      }
      return from_factors(std::move(f));
    }
    return Value{base.frac.pow(e), std::nullopt};
  }

  Value primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (c == 'u') {
      ++pos_;
      const Integer idx = integer();
      if (idx < 1 || idx > static_cast<long>(nvars_)) {
        fail("variable index out of range (have " + std::to_string(nvars_) + " variables)");
      }
      const auto i = static_cast<std::size_t>(idx.get_ui() - 1);
      return from_factors(Factored{Rational(1), {{LinearForm::variable(nvars_, i), 1}}});
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return from_factors(Factored{Rational(integer()), {}});
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

LinFrac LinFrac::parse(std::string_view text, std::size_t nvars) {
  return Parser(text, nvars).run();
}

}  // namespace gwloc
