#pragma once

#include <stdexcept>
#include <string>

namespace wsuper {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};
struct AxiomViolation : Error {
  using Error::Error;
};
struct GradingError : Error {
  using Error::Error;
};
struct DegenerateForm : Error {
  using Error::Error;
};
struct UnknownBuiltin : Error {
  using Error::Error;
};
struct MixedSpaces : Error {
  using Error::Error;
};
struct ParityMismatch : Error {
  using Error::Error;
};
struct NonMonomialDivision : Error {
  using Error::Error;
};
struct NotMinimal : Error {
  using Error::Error;
};
struct NotTriangular : Error {
  using Error::Error;
};
struct NoSolution : Error {
  using Error::Error;
};
struct Uncertified : Error {
  using Error::Error;
};
struct NoLift : Error {
  using Error::Error;
};

}  // namespace wsuper
