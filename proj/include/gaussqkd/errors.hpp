#pragma once

#include <stdexcept>
#include <string>

namespace gaussqkd {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct MalformedMatrix : Error {
  using Error::Error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct UnsupportedTransform : Error {
  using Error::Error;
};
struct SingularCovariance : Error {
  using Error::Error;
};
struct NumericalInstability : Error {
  using Error::Error;
};
struct PurityError : Error {
  using Error::Error;
};
struct UnphysicalInput : Error {
  using Error::Error;
};
struct SingularDenominator : Error {
  using Error::Error;
};
// Requested a security interval for a state that admits none (PPT state).
struct NotSecurable : Error {
  using Error::Error;
};
// Finite coherent attack on a state violating the coherent-security constraint.
struct NotCoherentSecure : Error {
  using Error::Error;
};
struct InternalInconsistency : Error {
  using Error::Error;
};
struct NoAdvantage : Error {
  using Error::Error;
};
struct KeyLengthError : Error {
  using Error::Error;
};
struct InvalidExponent : Error {
  using Error::Error;
};
struct MessageTooLarge : Error {
  using Error::Error;
};
struct EmptySweep : Error {
  using Error::Error;
};
struct InvalidArgument : Error {
  using Error::Error;
};

}  // namespace gaussqkd
