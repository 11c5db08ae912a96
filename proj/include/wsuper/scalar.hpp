#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wsuper/errors.hpp"
#include "wsuper/rational.hpp"

namespace wsuper {

/// Laurent polynomial in the level symbol k with rational coefficients.
/// Terms are kept sorted by exponent with no zero coefficients.
class Scalar {
 public:
  using Term = std::pair<int, Rational>;

  Scalar() = default;
  Scalar(const Rational& c) {
    if (c != 0) terms_.emplace_back(0, c);
  }
  Scalar(long c) : Scalar(Rational(c)) {}
  Scalar(int c) : Scalar(Rational(c)) {}

  static Scalar monomial(const Rational& c, int exp) {
    Scalar s;
    if (c != 0) s.terms_.emplace_back(exp, c);
    return s;
  }
  static Scalar k() { return monomial(1, 1); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  bool is_monomial() const { return terms_.size() == 1; }
  const std::vector<Term>& terms() const { return terms_; }

  Rational constant_value() const {
    if (!is_constant()) throw Error("scalar " + str() + " depends on k");
    return terms_.empty() ? Rational(0) : terms_[0].second;
  }

  Scalar operator-() const {
    Scalar r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.cbegin();
    auto b = o.terms_.cbegin();
    while (a != terms_.cend() || b != o.terms_.cend()) {
      if (b == o.terms_.cend() || (a != terms_.cend() && a->first < b->first)) {
        out.push_back(*a++);
      } else if (a == terms_.cend() || b->first < a->first) {
        out.push_back(*b++);
      } else {
        Rational c = a->second + b->second;
        if (c != 0) out.emplace_back(a->first, c);
        ++a, ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.terms_.empty() || b.terms_.empty()) return {};
    if (b.terms_.size() == 1) {
      Scalar r = a;
      for (auto& t : r.terms_) {
        t.first += b.terms_[0].first;
        t.second *= b.terms_[0].second;
      }
      return r;
    }
    if (a.terms_.size() == 1) return b * a;
    Scalar r;
    for (const auto& t : a.terms_) {
      Scalar part = b;
      for (auto& u : part.terms_) {
        u.first += t.first;
        u.second *= t.second;
      }
      r += part;
    }
    return r;
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Division is only defined for monomial divisors c·k^n.
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (!b.is_monomial())
      throw NonMonomialDivision("cannot divide by non-monomial " + b.str());
    Scalar r = a;
    for (auto& t : r.terms_) {
      t.first -= b.terms_[0].first;
      t.second /= b.terms_[0].second;
    }
    return r;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Rational eval(const Rational& kval) const {
    Rational r = 0;
    for (const auto& [e, c] : terms_) {
      if (e != 0 && kval == 0) throw Error("evaluating negative power of k at k=0");
      Rational p = 1;
      Rational base = e >= 0 ? kval : Rational(1) / kval;
      for (int i = 0; i < std::abs(e); ++i) p *= base;
      r += c * p;
    }
    return r;
  }

  /// Text form: "0", "2", "-1/2", "k", "(1/2)·k^-1", "(1 + 2·k)".
  std::string str() const {
    if (terms_.empty()) return "0";
    if (terms_.size() == 1) {
      auto [e, c] = terms_[0];
      std::string s = c < 0 ? "-" : "";
      Rational a = abs(c);
      if (e == 0) return s + a.get_str();
      std::string kp = e == 1 ? "k" : "k^" + std::to_string(e);
      if (a == 1) return s + kp;
      return s + (is_integer(a) ? a.get_str() : "(" + a.get_str() + ")") + "·" + kp;
    }
    std::string out = "(";
    bool first = true;
    for (const auto& t : terms_) {
      std::string part = monomial(t.second, t.first).str();
      if (first) {
        out += part;
      } else if (part[0] == '-') {
        out += " - " + part.substr(1);
      } else {
        out += " + " + part;
      }
      first = false;
    }
    return out + ")";
  }

 private:
  std::vector<Term> terms_;
};

}  // namespace wsuper
