#pragma once

// Exact symbolic group orders built from integer literals, factorials,
// halving, powers and products, with guarded exact evaluation and certified
// bounds on the natural logarithm when exact evaluation is out of reach.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lucchini/errors.hpp"

namespace lucchini {

using BigInt = boost::multiprecision::cpp_int;

/// 40 significant digits with a binary exponent range of +-2^24, enough to
/// hold logarithms of three-level tower orders.
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<40, boost::multiprecision::digit_base_10, void, std::int64_t,
                                         -(std::int64_t(1) << 24), (std::int64_t(1) << 24)>,
    boost::multiprecision::et_off>;

/// Closed interval containing ln(value).
struct LogInterval {
  Real lo;
  Real hi;
};

/// Closed interval containing the number of decimal digits of a value.
struct DigitBounds {
  BigInt lo;
  BigInt hi;
};

inline constexpr std::size_t kDefaultCostBound = 100000;

namespace detail {

inline const Real& log_slack() {
  static const Real eps = Real("1e-30");
  return eps;
}

/// Widens an interval by a relative and absolute slack to absorb rounding.
inline LogInterval widen(Real lo, Real hi) {
  const Real& eps = log_slack();
  lo = lo - abs(lo) * eps - eps;
  hi = hi + abs(hi) * eps + eps;
  if (lo < 0) lo = 0;
  return {lo, hi};
}

inline BigInt product_range(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) return 1;
  if (hi - lo < 16) {
    BigInt r = 1;
    for (std::uint64_t k = lo; k <= hi; ++k) r *= k;
    return r;
  }
  std::uint64_t mid = lo + (hi - lo) / 2;
  return product_range(lo, mid) * product_range(mid + 1, hi);
}

// Beyond this ln(x), exp(x) no longer fits the Real exponent range.
inline const Real& exp_limit() {
  static const Real limit = Real(10000000);
  return limit;
}

}  // namespace detail

inline BigInt factorial(std::uint64_t n) { return detail::product_range(2, n); }

class OrderExpr {
 public:
  enum class Kind { literal, factorial, half, power, product };

  OrderExpr() : OrderExpr(literal(1)) {}

  static OrderExpr literal(BigInt v) {
    if (v < 1) throw Error("order literal must be positive");
    auto n = std::make_shared<Node>();
    n->kind = Kind::literal;
    n->value = std::move(v);
    return OrderExpr(std::move(n));
  }

  static OrderExpr factorial(OrderExpr x) {
    if (auto v = x.as_literal(); v && *v <= 1) return literal(1);
    return make(Kind::factorial, {std::move(x)});
  }

  static OrderExpr half(OrderExpr x) {
    if (auto v = x.as_literal()) {
      if (*v % 2 != 0) throw Error("halving an odd order");
      return literal(*v / 2);
    }
    return make(Kind::half, {std::move(x)});
  }

  static OrderExpr power(OrderExpr base, OrderExpr exponent) {
    if (auto e = exponent.as_literal(); e && *e == 1) return base;
    if (auto b = base.as_literal(); b && *b == 1) return literal(1);
    if (auto b = base.as_literal(), e = exponent.as_literal(); b && e && *e < 64) {
      BigInt v = boost::multiprecision::pow(*b, static_cast<unsigned>(*e));
      if (v < (BigInt(1) << 63)) return literal(v);
    }
    return make(Kind::power, {std::move(base), std::move(exponent)});
  }

  /// Flattens nested products and folds literal factors into one trailing literal.
  static OrderExpr product(const std::vector<OrderExpr>& factors) {
    std::vector<OrderExpr> symbolic;
    BigInt lit = 1;
    auto add = [&](const OrderExpr& f, auto& self) -> void {
      if (f.kind() == Kind::product) {
        for (const auto& c : f.children()) self(c, self);
      } else if (auto v = f.as_literal()) {
        lit *= *v;
      } else {
        symbolic.push_back(f);
      }
    };
    for (const auto& f : factors) add(f, add);
    if (symbolic.empty()) return literal(lit);
    if (lit != 1) symbolic.push_back(literal(lit));
    if (symbolic.size() == 1) return symbolic.front();
    return make(Kind::product, std::move(symbolic));
  }

  Kind kind() const noexcept { return node_->kind; }
  const std::vector<OrderExpr>& children() const noexcept { return node_->children; }

  std::optional<BigInt> as_literal() const {
    if (node_->kind == Kind::literal) return node_->value;
    return std::nullopt;
  }

  /// Text form, e.g. `(fact(60)/2)^60 * 60`.
  std::string text() const {
    const auto& c = node_->children;
    switch (node_->kind) {
      case Kind::literal: return node_->value.str();
      case Kind::factorial: return "fact(" + c[0].text() + ")";
      case Kind::half: return c[0].atom_text() + "/2";
      case Kind::power: return c[0].atom_text() + "^" + c[1].atom_text();
      case Kind::product: {
        std::string out;
        for (std::size_t k = 0; k < c.size(); ++k) out += (k ? " * " : "") + c[k].text();
        return out;
      }
    }
    return "?";
  }

  /// Certified bounds on ln(value); nullopt when out of numeric range.
  std::optional<LogInterval> log_bounds() const {
    const auto& c = node_->children;
    switch (node_->kind) {
      case Kind::literal: {
        Real l = log(Real(node_->value));
        return detail::widen(l, l);
      }
      case Kind::product: {
        Real lo = 0, hi = 0;
        for (const auto& f : c) {
          auto b = f.log_bounds();
          if (!b) return std::nullopt;
          lo += b->lo;
          hi += b->hi;
        }
        return detail::widen(lo, hi);
      }
      case Kind::half: {
        auto b = c[0].log_bounds();
        if (!b) return std::nullopt;
        Real ln2 = log(Real(2));
        return detail::widen(b->lo - ln2, b->hi - ln2);
      }
      case Kind::power: {
        auto b = c[0].log_bounds();
        auto e = c[1].value_bounds();
        if (!b || !e) return std::nullopt;
        return detail::widen(b->lo * e->first, b->hi * e->second);
      }
      case Kind::factorial: {
        auto n = c[0].value_bounds();
        if (!n) return std::nullopt;
        return detail::widen(stirling(n->first), stirling(n->second) + 1 / (12 * n->second));
      }
    }
    return std::nullopt;
  }

  std::optional<DigitBounds> digit_bounds() const {
    if (auto v = as_literal()) {
      BigInt d = v->str().size();
      return DigitBounds{d, d};
    }
    auto b = log_bounds();
    if (!b) return std::nullopt;
    Real ln10 = log(Real(10));
    BigInt lo = static_cast<BigInt>(floor(b->lo / ln10)) + 1;
    BigInt hi = static_cast<BigInt>(floor(b->hi / ln10)) + 1;
    return DigitBounds{lo, hi};
  }

  /// Exact value when it has at most `max_digits` decimal digits.
  std::optional<BigInt> evaluate(std::size_t max_digits = kDefaultCostBound) const {
    if (auto v = as_literal()) return v;
    auto d = digit_bounds();
    if (!d || d->hi > max_digits) return std::nullopt;
    return eval_unchecked();
  }

  /// Certified answer to value >= m, nullopt when the bounds cannot decide.
  std::optional<bool> at_least(const BigInt& m, std::size_t max_digits = kDefaultCostBound) const {
    if (auto v = evaluate(max_digits)) return *v >= m;
    auto b = log_bounds();
    if (!b) return std::nullopt;
    Real lm = log(Real(m));
    if (b->lo >= lm * (1 + detail::log_slack())) return true;
    if (b->hi < lm * (1 - detail::log_slack())) return false;
    return std::nullopt;
  }

  friend bool operator==(const OrderExpr& a, const OrderExpr& b) { return a.text() == b.text(); }

 private:
  struct Node {
    Kind kind = Kind::literal;
    BigInt value;
    std::vector<OrderExpr> children;
  };

  explicit OrderExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static OrderExpr make(Kind k, std::vector<OrderExpr> children) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->children = std::move(children);
    return OrderExpr(std::move(n));
  }

  std::string atom_text() const {
    if (kind() == Kind::literal || kind() == Kind::factorial) return text();
    return "(" + text() + ")";
  }

  // n ln n - n + ln(2 pi n)/2, a lower bound for ln n! (n >= 1).
  static Real stirling(const Real& n) {
    if (n < 1) return 0;
    const Real pi = boost::math::constants::pi<Real>();
    return n * log(n) - n + log(2 * pi * n) / 2;
  }

  /// Bounds on the value itself.
  std::optional<std::pair<Real, Real>> value_bounds() const {
    if (auto v = as_literal()) {
      Real x(*v);
      return std::pair{x, x};
    }
    auto b = log_bounds();
    if (!b || b->hi > detail::exp_limit()) return std::nullopt;
    return std::pair{exp(b->lo), exp(b->hi)};
  }

  BigInt eval_unchecked() const {
    const auto& c = node_->children;
    switch (node_->kind) {
      case Kind::literal: return node_->value;
      case Kind::factorial: return lucchini::factorial(static_cast<std::uint64_t>(c[0].eval_unchecked()));
      case Kind::half: return c[0].eval_unchecked() / 2;
      case Kind::power:
        return boost::multiprecision::pow(c[0].eval_unchecked(), static_cast<unsigned>(c[1].eval_unchecked()));
      case Kind::product: {
        BigInt r = 1;
        for (const auto& f : c) r *= f.eval_unchecked();
        return r;
      }
    }
    return 1;
  }

  std::shared_ptr<const Node> node_;
};

/// Parses the text form produced by OrderExpr::text.
inline OrderExpr parse_order_expr(std::string_view text) {
  struct Parser {
    std::string_view s;
    std::size_t i = 0;

    void skip() {
      while (i < s.size() && s[i] == ' ') ++i;
    }
    bool eat(std::string_view tok) {
      skip();
      if (s.substr(i).starts_with(tok)) {
        i += tok.size();
        return true;
      }
      return false;
    }
    [[noreturn]] void fail() const {
      throw ParseError("bad order expression at column " + std::to_string(i) + " of '" + std::string(s) + "'");
    }
    OrderExpr atom() {
      skip();
      if (eat("fact(")) {
        auto e = expr();
        if (!eat(")")) fail();
        return OrderExpr::factorial(e);
      }
      if (eat("(")) {
        auto e = expr();
        if (!eat(")")) fail();
        return e;
      }
      std::size_t start = i;
      while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
      if (start == i) fail();
      return OrderExpr::literal(BigInt(std::string(s.substr(start, i - start))));
    }
    OrderExpr power() {
      auto b = atom();
      if (eat("^")) return OrderExpr::power(b, atom());
      return b;
    }
    OrderExpr term() {
      auto t = power();
      while (eat("/2")) t = OrderExpr::half(t);
      return t;
    }
    OrderExpr expr() {
      std::vector<OrderExpr> fs{term()};
      while (eat("*")) fs.push_back(term());
      return fs.size() == 1 ? fs.front() : OrderExpr::product(fs);
    }
  };
  Parser p{text};
  auto e = p.expr();
  p.skip();
  if (p.i != text.size()) p.fail();
  return e;
}

/// Renders a huge bound in scientific notation, rounded in the safe direction.
inline std::string approx_text(const BigInt& v, bool round_up) {
  std::string s = v.str();
  if (s.size() <= 15) return s;
  std::string mant = s.substr(0, 10);
  if (round_up) {
    BigInt m(mant);
    m += 1;
    mant = m.str();
    if (mant.size() > 10) return "1.000000000e" + std::to_string(s.size());
  }
  return mant.substr(0, 1) + "." + mant.substr(1) + "e" + std::to_string(s.size() - 1);
}

}  // namespace lucchini
