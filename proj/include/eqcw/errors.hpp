#pragma once

#include <stdexcept>
#include <string>

namespace eqcw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A derivation or substitution was asked about a generator it has no image for.
struct UnknownGeneratorError : Error {
  using Error::Error;
};

struct DegreeMismatchError : Error {
  using Error::Error;
};

struct IndexError : Error {
  using Error::Error;
};

/// A table of derivation images failed one of its structural identities.
struct ConsistencyError : Error {
  using Error::Error;
};

struct TruncationError : Error {
  using Error::Error;
};

struct NotAntisymmetricError : Error {
  using Error::Error;
};

/// A named check, series or command that does not exist.
struct UnknownNameError : Error {
  using Error::Error;
};

}  // namespace eqcw
