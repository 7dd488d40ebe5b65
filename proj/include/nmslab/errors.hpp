#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nmslab {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid physical parameters. Collects every violated invariant so a bad
// config is reported in one pass.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string msg = "invalid parameters:";
    for (const auto& s : v) {
      msg += "\n  - ";
      msg += s;
    }
    return msg;
  }

  std::vector<std::string> violations_;
};

// Malformed or incomplete configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Requested operating point is at or above the parametric-gain threshold,
// where the below-threshold steady state does not exist.
class ThresholdError : public Error {
 public:
  using Error::Error;
};

// Operation requires a dynamically stable operating point and got an
// unstable one.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

// A static linear field-relation system is singular: the feedback chain at
// a perfectly resonant lossless point, or a response solve exactly on an
// undamped resonance.
class SingularChainError : public Error {
 public:
  using Error::Error;
};

// Numerical method failed to meet its own tolerance (non-convergence,
// residual too large, NaN in a series, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace nmslab
