#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "wsuper/lambda.hpp"

namespace wsuper {

namespace detail {

inline LambdaPoly lambda_mul(const LambdaPoly& a, const LambdaPoly& b) {
  LambdaPoly r(a.space() ? a.space() : b.space());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r.add(i + j, a.coeff(i) * b.coeff(j));
  return r;
}

/// Recursive-descent parser for the rendering grammar: sums of ·-separated factors, where a factor is a
/// rational, k, λ, a generator name, ∂^n(expr) or (expr), optionally raised to ^n.
class Parser {
 public:
  Parser(const SpacePtr& space, std::string_view text) : space_(space), s_(text) {}

  LambdaPoly parse() {
    LambdaPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  LambdaPoly constant(const Scalar& c) const { return LambdaPoly(DiffPoly(c).with_space(space_)); }

  LambdaPoly expr() {
    LambdaPoly r(space_);
    bool neg = eat("-");
    if (!neg) eat("+");
    LambdaPoly t = term();
    r += neg ? -t : t;
    while (true) {
      if (eat("+")) {
        r += term();
      } else if (eat("-")) {
        r -= term();
      } else {
        break;
      }
    }
    return r;
  }

  LambdaPoly term() {
    LambdaPoly r = power();
    while (eat("·") || eat("*")) r = lambda_mul(r, power());
    return r;
  }

  int integer(bool allow_negative) {
    skip();
    bool neg = false;
    if (allow_negative && pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    int v = std::stoi(std::string(s_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }

  LambdaPoly power() {
    skip();
    bool is_k = false;
    LambdaPoly base = primary(is_k);
    if (!eat("^")) return base;
    int n = integer(is_k);
    if (is_k) return constant(Scalar::monomial(1, n));
    LambdaPoly r = constant(1);
    for (int i = 0; i < n; ++i) r = lambda_mul(r, base);
    return r;
  }

  LambdaPoly primary(bool& is_k) {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat("(")) {
      LambdaPoly r = expr();
      if (!eat(")")) fail("expected ')'");
      return r;
    }
    if (eat("∂")) {
      int n = eat("^") ? integer(false) : 1;
      if (!eat("(")) fail("expected '(' after ∂");
      LambdaPoly inner = expr();
      if (!eat(")")) fail("expected ')'");
      return inner.map([n](const DiffPoly& p) { return p.partial(unsigned(n)); });
    }
    if (eat("λ")) return constant(1).shift(1);
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational num = integer(false);
      if (eat("/")) num /= integer(false);
      return constant(num);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "k") {
        is_k = true;
        return constant(Scalar::k());
      }
      if (!space_) fail("no generator space for symbol '" + name + "'");
      auto idx = space_->find(name);
      if (!idx) fail("unknown symbol '" + name + "'");
      return LambdaPoly(DiffPoly::symbol(space_, *idx));
    }
    fail("unexpected character");
  }

  SpacePtr space_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline LambdaPoly parse_lambda(const SpacePtr& space, std::string_view text) {
  return detail::Parser(space, text).parse();
}

inline DiffPoly parse_poly(const SpacePtr& space, std::string_view text) {
  LambdaPoly r = parse_lambda(space, text);
  if (r.size() > 1) throw ParseError("λ is not allowed here: '" + std::string(text) + "'");
  return r.coeff(0).with_space(space);
}

}  // namespace wsuper
