#pragma once

#include <stdexcept>
#include <string>

namespace afr {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid family/rank/level combination or malformed user input.
struct UsageError : Error {
  using Error::Error;
};

/// A numeric quantity failed to round to the expected integer / rational grid.
struct RoundingError : Error {
  using Error::Error;
};

/// A requested map is not a permutation (e.g. bad simple-current parameter).
struct NotAPermutationError : Error {
  using Error::Error;
};

/// Exhaustive search refused to run because |P+| exceeds the configured bound.
struct SearchBoundError : Error {
  using Error::Error;
};

/// Internal consistency violation: indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace afr
