#pragma once

#include <stdexcept>
#include <string>

namespace apolar {

/// Base class for every error raised by the library. `kind()` is a short
/// machine-readable tag; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(detail), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Caller violated a precondition (shape mismatch, out-of-range degree, ...).
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& detail) : Error("invalid_argument", detail) {}
  InvalidArgument(std::string kind, const std::string& detail) : Error(std::move(kind), detail) {}
};

/// Values from two different coefficient fields met in one computation.
class BackendMismatch : public Error {
 public:
  explicit BackendMismatch(const std::string& detail) : Error("backend_mismatch", detail) {}
};

/// Input is geometrically degenerate: a non-general section, an improper
/// slice, a singular configuration. Maps to CLI exit code 2.
class DegenerateInput : public Error {
 public:
  DegenerateInput(std::string kind, const std::string& detail) : Error(std::move(kind), detail) {}
};

/// Numerical root isolation could not separate clusters at the working
/// precision. Maps to CLI exit code 3.
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& detail)
      : Error("precision_exhausted", detail + "; retry with more bits") {}
};

}  // namespace apolar
