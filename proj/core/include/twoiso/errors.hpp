#pragma once

#include <stdexcept>
#include <string>

namespace twoiso {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// u or v is zero, so u⊗v is not a rank-one operator.
class NotRankOne : public Error {
 public:
  NotRankOne() : Error("not rank one") {}
};

class TruncationTooSmall : public Error {
 public:
  TruncationTooSmall() : Error("truncation too small") {}
};

/// A vector reached outside the subspace on which the truncated operator is exact.
class NotTruncationSafe : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
 public:
  DegenerateDenominator() : Error("degenerate denominator") {}
};

class BaseNotTwoIsometry : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace twoiso
