#pragma once

#include <ostream>

#include "wsuper/lambda.hpp"

namespace wsuper {

inline void PrintTo(const DiffPoly& p, std::ostream* os) { *os << p.str(); }
inline void PrintTo(const LambdaPoly& p, std::ostream* os) { *os << p.str(); }
inline void PrintTo(const Scalar& s, std::ostream* os) { *os << s.str(); }

}  // namespace wsuper
