#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sticks {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateDiagonal : Error {
  using Error::Error;
};

struct DegenerateChord : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct ExteriorPoint : Error {
  using Error::Error;
};

struct NonGenericProjection : Error {
  using Error::Error;
};

struct ProjectionFailure : Error {
  using Error::Error;
};

struct CrossingCapExceeded : Error {
  using Error::Error;
};

struct ScaleMismatch : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

struct DuplicateName : Error {
  using Error::Error;
};

struct UncertifiedConformation : Error {
  using Error::Error;
};

struct StoreCorrupt : Error {
  using Error::Error;
};

}  // namespace sticks
