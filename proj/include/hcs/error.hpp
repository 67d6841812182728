#pragma once

#include <stdexcept>
#include <string>

namespace hcs {

enum class ErrorCode {
  NonFinite,
  DeterminantDrift,
  DimensionMismatch,
  Overflow,
  UnsupportedDimension,
  DivergentExponent,
  InterpolationOutOfRange,
  GridMismatch,
  BallOverflow,
  KeyCollision,
  TargetTooSmall,
  SupportNotSymmetric,
  NegativeMass,
  CutoffTooSmall,
  OverlapDetected,
  InvalidArgument,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

// DivergentExponent carries the minimal admissible exponent so callers can
// report it.
class DivergentExponentError : public Error {
public:
  DivergentExponentError(double min_admissible_d, const std::string& what)
      : Error(ErrorCode::DivergentExponent, what),
        min_admissible_d_(min_admissible_d) {}
  double min_admissible_d() const { return min_admissible_d_; }

private:
  double min_admissible_d_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace hcs
