#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "wsuper/errors.hpp"

namespace wsuper {

using Rational = mpq_class;

/// Parses "p/q", "-p/q" or an integer; the result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw ParseError("empty rational");
  if (s.front() == '+') s.erase(s.begin());
  auto valid = [](const std::string& t) {
    std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if ((t[i] < '0' || t[i] > '9') && t[i] != '/') return false;
    return true;
  };
  auto slash = s.find('/');
  if (!valid(s) || (slash != std::string::npos && s.find('/', slash + 1) != std::string::npos))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("malformed rational '" + std::string(text) + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace wsuper
