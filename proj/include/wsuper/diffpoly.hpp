#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wsuper/errors.hpp"
#include "wsuper/scalar.hpp"

namespace wsuper {

/// Named generators with parities; the W of S(C[∂]⊗W).
class GeneratorSpace {
 public:
  GeneratorSpace(std::string label, std::vector<std::string> names, std::vector<int> parities)
      : label_(std::move(label)), names_(std::move(names)), parities_(std::move(parities)) {
    if (names_.size() != parities_.size()) throw Error("generator names and parities differ in length");
    if (names_.size() >= (1u << 14)) throw Error("too many generators");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!index_.emplace(names_[i], i).second) throw Error("duplicate generator name '" + names_[i] + "'");
      if (parities_[i] != 0 && parities_[i] != 1) throw Error("parity must be 0 or 1");
    }
  }

  const std::string& label() const { return label_; }
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int parity(std::size_t i) const { return parities_.at(i); }
  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(const std::string& name) const {
    auto i = find(name);
    if (!i) throw Error("unknown generator '" + name + "' in " + label_);
    return *i;
  }

 private:
  std::string label_;
  std::vector<std::string> names_;
  std::vector<int> parities_;
  std::unordered_map<std::string, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const GeneratorSpace>;

inline SpacePtr make_space(std::string label, std::vector<std::string> names, std::vector<int> parities) {
  return std::make_shared<const GeneratorSpace>(std::move(label), std::move(names), std::move(parities));
}

// A symbol ∂^n(a) packs (generator, order, parity) so that integer order is (generator, order) lex.
using Sym = std::uint32_t;

constexpr Sym make_sym(std::size_t gen, unsigned order, int parity) {
  return (Sym(gen) << 17) | (Sym(order) << 1) | Sym(parity & 1);
}
constexpr std::size_t sym_gen(Sym s) { return s >> 17; }
constexpr unsigned sym_order(Sym s) { return (s >> 1) & 0xFFFFu; }
constexpr int sym_parity(Sym s) { return int(s & 1u); }
constexpr Sym sym_derive(Sym s, unsigned n = 1) { return s + (Sym(n) << 1); }

using Monomial = std::vector<Sym>;

/// Sorts in place tracking the Koszul sign; returns 0 when an odd symbol repeats.
inline int canonicalize(Monomial& m) {
  int sign = 1;
  for (std::size_t i = 1; i < m.size(); ++i) {
    Sym cur = m[i];
    std::size_t j = i;
    while (j > 0 && m[j - 1] > cur) {
      if (sym_parity(m[j - 1]) && sym_parity(cur)) sign = -sign;
      m[j] = m[j - 1];
      --j;
    }
    m[j] = cur;
  }
  for (std::size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1] && sym_parity(m[i])) return 0;
  return sign;
}

inline int monomial_parity(const Monomial& m) {
  int p = 0;
  for (Sym s : m) p ^= sym_parity(s);
  return p;
}

/// Product of two canonical monomials; sign 0 means the product vanishes.
inline int multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  int odd_left = 0;
  for (Sym s : a) odd_left += sym_parity(s);
  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      if (j < b.size() && a[i] == b[j] && sym_parity(a[i])) return 0;
      odd_left -= sym_parity(a[i]);
      out.push_back(a[i++]);
    } else {
      if (sym_parity(b[j]) && (odd_left & 1)) sign = -sign;
      out.push_back(b[j++]);
    }
  }
  return sign;
}

class DiffPoly;
using SymbolRule = std::function<std::optional<DiffPoly>(Sym)>;

/// Element of S(C[∂]⊗W) in canonical form. Constants carry no space and combine with any space.
class DiffPoly {
 public:
  using Terms = std::map<Monomial, Scalar>;

  DiffPoly() = default;
  explicit DiffPoly(SpacePtr space) : space_(std::move(space)) {}
  DiffPoly(const Scalar& c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
  }
  DiffPoly(const Rational& c) : DiffPoly(Scalar(c)) {}
  DiffPoly(long c) : DiffPoly(Scalar(c)) {}
  DiffPoly(int c) : DiffPoly(Scalar(c)) {}

  static DiffPoly symbol(const SpacePtr& space, std::size_t gen, unsigned order = 0) {
    DiffPoly p(space);
    p.terms_.emplace(Monomial{make_sym(gen, order, space->parity(gen))}, Scalar(1));
    return p;
  }
  static DiffPoly symbol(const SpacePtr& space, const std::string& name, unsigned order = 0) {
    return symbol(space, space->index(name), order);
  }
  static DiffPoly from_sym(const SpacePtr& space, Sym s) {
    DiffPoly p(space);
    p.terms_.emplace(Monomial{s}, Scalar(1));
    return p;
  }
  /// Builds from an arbitrary (unsorted) symbol sequence.
  static DiffPoly term(const SpacePtr& space, const Scalar& c, Monomial m) {
    DiffPoly p(space);
    int s = canonicalize(m);
    if (s != 0 && !c.is_zero()) p.terms_.emplace(std::move(m), s > 0 ? c : -c);
    return p;
  }

  const SpacePtr& space() const { return space_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  Scalar constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Scalar() : it->second;
  }
  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
  }

  /// Parity of a homogeneous element; zero counts as even.
  int parity() const {
    int p = -1;
    for (const auto& [m, c] : terms_) {
      int q = monomial_parity(m);
      if (p >= 0 && q != p) throw ParityMismatch("element of mixed parity: " + str());
      p = q;
    }
    return p < 0 ? 0 : p;
  }
  bool is_homogeneous() const {
    int p = -1;
    for (const auto& [m, c] : terms_) {
      int q = monomial_parity(m);
      if (p >= 0 && q != p) return false;
      p = q;
    }
    return true;
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.size());
    return d;
  }

  void add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  DiffPoly& operator+=(const DiffPoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  DiffPoly& operator-=(const DiffPoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  DiffPoly operator-() const {
    DiffPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }

  DiffPoly& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend DiffPoly operator*(DiffPoly a, const Scalar& s) { return a *= s; }
  friend DiffPoly operator*(const Scalar& s, DiffPoly a) { return a *= s; }

  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r;
    r.space_ = a.space_ ? a.space_ : b.space_;
    if (a.space_ && b.space_ && a.space_ != b.space_)
      throw MixedSpaces("product of elements from '" + a.space_->label() + "' and '" + b.space_->label() + "'");
    Monomial buf;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        int s = multiply_monomials(ma, mb, buf);
        if (s == 0) continue;
        Scalar c = ca * cb;
        r.add_term(buf, s > 0 ? c : -c);
      }
    return r;
  }
  DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }

  friend bool operator==(const DiffPoly& a, const DiffPoly& b) {
    if (a.space_ && b.space_ && a.space_ != b.space_ && !(a.is_constant() && b.is_constant())) return false;
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }

  /// The even derivation ∂.
  DiffPoly partial(unsigned n = 1) const {
    DiffPoly cur = *this;
    for (unsigned step = 0; step < n; ++step) {
      DiffPoly next(space_);
      for (const auto& [m, c] : cur.terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) {
          if (i > 0 && m[i] == m[i - 1]) continue;
          std::size_t mult = 1;
          while (i + mult < m.size() && m[i + mult] == m[i]) ++mult;
          Monomial d = m;
          d[i + mult - 1] = sym_derive(m[i]);
          int s = canonicalize(d);
          if (s == 0) continue;
          Scalar cc = c * Scalar(long(mult));
          next.add_term(d, s > 0 ? cc : -cc);
        }
      }
      cur = std::move(next);
    }
    return cur;
  }

  /// Simultaneous substitution; symbols without a rule are kept.
  DiffPoly substitute(const SymbolRule& rule) const {
    std::unordered_map<Sym, std::optional<DiffPoly>> cache;
    auto image = [&](Sym s) -> const std::optional<DiffPoly>& {
      auto it = cache.find(s);
      if (it != cache.end()) return it->second;
      auto r = rule(s);
      if (r && !r->is_zero() && r->parity() != sym_parity(s))
        throw ParityMismatch("substitution changes the parity of a symbol");
      return cache.emplace(s, std::move(r)).first->second;
    };
    DiffPoly out;
    for (const auto& [m, c] : terms_) {
      DiffPoly prod(c);
      bool all_kept = true;
      for (Sym s : m)
        if (image(s)) all_kept = false;
      if (all_kept) {
        if (!m.empty()) out.adopt(*this);
        out.add_term(m, c);
        continue;
      }
      for (Sym s : m) {
        const auto& img = image(s);
        prod = prod * (img ? *img : from_sym(space_, s));
        if (prod.is_zero()) break;
      }
      out += prod;
    }
    return out;
  }

  DiffPoly map_coefficients(const std::function<Scalar(const Scalar&)>& f) const {
    DiffPoly out(space_);
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

  /// Rebinds a constant or same-shaped polynomial to a space (used when building from constants).
  DiffPoly with_space(const SpacePtr& s) const {
    if (space_ && space_ != s) throw MixedSpaces("cannot move element between spaces");
    DiffPoly r = *this;
    r.space_ = s;
    return r;
  }

  std::string str() const;

 private:
  void adopt(const DiffPoly& o) {
    if (!o.space_) return;
    if (!space_) {
      space_ = o.space_;
    } else if (space_ != o.space_) {
      throw MixedSpaces("sum of elements from '" + space_->label() + "' and '" + o.space_->label() + "'");
    }
  }

  SpacePtr space_;
  Terms terms_;
};

inline std::string symbol_str(const GeneratorSpace& sp, Sym s) {
  const std::string& n = sp.name(sym_gen(s));
  unsigned o = sym_order(s);
  if (o == 0) return n;
  if (o == 1) return "∂(" + n + ")";
  return "∂^" + std::to_string(o) + "(" + n + ")";
}

inline std::string monomial_str(const GeneratorSpace& sp, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size();) {
    std::size_t mult = 1;
    while (i + mult < m.size() && m[i + mult] == m[i]) ++mult;
    if (!out.empty()) out += "·";
    out += symbol_str(sp, m[i]);
    if (mult > 1) out += "^" + std::to_string(mult);
    i += mult;
  }
  return out;
}

/// Renders c·(extra)·m with sign handling; `extra` is an optional middle factor such as λ^2.
inline std::string term_str(const GeneratorSpace* sp, const Scalar& c, const std::string& extra, const Monomial& m) {
  std::string body = extra;
  if (!m.empty()) {
    if (!body.empty()) body += "·";
    body += monomial_str(*sp, m);
  }
  std::string cs = c.str();
  bool neg = c.is_monomial() && cs[0] == '-';
  if (neg) cs = cs.substr(1);
  std::string out;
  if (body.empty()) {
    out = cs;
  } else if (cs == "1") {
    out = body;
  } else {
    if (cs.find('/') != std::string::npos && cs[0] != '(') cs = "(" + cs + ")";
    out = cs + "·" + body;
  }
  return (neg ? "-" : "") + out;
}

inline void append_signed(std::string& out, const std::string& t) {
  if (out.empty()) {
    out = t;
  } else if (t[0] == '-') {
    out += " - " + t.substr(1);
  } else {
    out += " + " + t;
  }
}

inline std::string DiffPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) append_signed(out, term_str(space_.get(), c, "", m));
  return out;
}

}  // namespace wsuper
