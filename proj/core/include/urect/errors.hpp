#pragma once

#include <stdexcept>
#include <string>

namespace urect {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid generator specification (kind/dimension combination, zero count).
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Bad numeric parameter (r <= 0, r >= s, m >= d, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A ball does not meet the support it is supposed to meet.
class EmptyIntersectionError : public Error {
 public:
  using Error::Error;
};

/// Plane basis degenerate beyond tolerance.
class BasisError : public Error {
 public:
  using Error::Error;
};

/// Requested scale finer than the discrete resolution allows.
class ScaleError : public Error {
 public:
  using Error::Error;
};

/// Analysis region exceeds the generated data extent.
class ExtentError : public Error {
 public:
  using Error::Error;
};

/// No support-free ball above the radius floor (measure fills the ball).
class DensityError : public Error {
 public:
  using Error::Error;
};

/// Forest and measure do not belong together.
class IdentityError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace urect
