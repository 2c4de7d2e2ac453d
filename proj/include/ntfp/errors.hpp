#pragma once

#include <stdexcept>
#include <string>

namespace ntfp {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Construction / validation errors.
struct ShapeMismatch : Error {
  using Error::Error;
};

struct OutOfRangeEntry : Error {
  int i = 0, k = 0, value = 0;
  OutOfRangeEntry(const std::string& msg, int i_, int k_, int value_)
      : Error(msg), i(i_), k(k_), value(value_) {}
};

struct DomainViolation : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct UnknownPreset : Error {
  using Error::Error;
};

struct BadArity : Error {
  using Error::Error;
};

struct PartialMapping : Error {
  using Error::Error;
};

struct InfiniteSpaceUndecidable : Error {
  using Error::Error;
};

struct PreconditionUnmet : Error {
  using Error::Error;
};

struct AlphaOutOfRange : Error {
  using Error::Error;
};

struct WeightsOutOfRange : Error {
  using Error::Error;
};

// Enumeration refused: the search space exceeds the configured cap.
struct SizeLimit : Error {
  long long required = 0, cap = 0;
  SizeLimit(const std::string& msg, long long required_, long long cap_)
      : Error(msg), required(required_), cap(cap_) {}
};

struct UnknownTheorem : Error {
  using Error::Error;
};

// A certification was requested but some needed hypothesis is only declared,
// not machine-verified.
struct HypothesesNotMachineVerified : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace ntfp
