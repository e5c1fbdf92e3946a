#pragma once

#include <stdexcept>

namespace ricciforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid too small for the requested stencil, or degenerate chart dimensions.
class SizingError : public Error {
 public:
  using Error::Error;
};

/// Two fields that must live on one chart do not.
class ChartMismatch : public Error {
 public:
  using Error::Error;
};

/// A metric sample failed the positive-definiteness test.
class DefinitenessError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters or a violated operation precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed chart, report or parameter file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace ricciforge
