#pragma once

#include <stdexcept>
#include <string>

namespace thicken {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// The query point is too close to the medial axis for the nearest point to
// be trusted (or lies on it).
class MedialAxisProximity : public Error {
 public:
  using Error::Error;
};

// A predicate value fell inside the tolerance band around its threshold.
class AmbiguousPredicate : public Error {
 public:
  using Error::Error;
};

// A measure's support failed the simplex predicate of its complex spec.
class SimplexViolation : public Error {
 public:
  explicit SimplexViolation(std::string report)
      : Error("simplex violation: " + report), report_(std::move(report)) {}
  const std::string& report() const noexcept { return report_; }

 private:
  std::string report_;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

// Rejection sampling gave up.
class SamplingStarvation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace thicken
