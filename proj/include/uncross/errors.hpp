#pragma once

#include <stdexcept>
#include <string>

namespace uncross {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidBipartition : Error {
  using Error::Error;
};

struct GroundMismatch : Error {
  using Error::Error;
};

struct NotCrossing : Error {
  using Error::Error;
};

struct InvalidMove : Error {
  using Error::Error;
};

struct TooLarge : Error {
  using Error::Error;
};

struct InvalidValue : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

// Broken strategy bookkeeping or a violated internal invariant; the message
// carries the diagnostic trace.
struct InternalError : Error {
  using Error::Error;
};

struct Unbounded : Error {
  using Error::Error;
};

struct InvalidConfig : Error {
  using Error::Error;
};

struct NothingToImprove : Error {
  using Error::Error;
};

}  // namespace uncross
