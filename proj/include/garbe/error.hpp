#pragma once

#include <stdexcept>
#include <string>

namespace garbe {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Domain, cover or geometry mismatch in the input.
class StructureError : public Error {
 public:
  using Error::Error;
};

// Malformed input document or configuration.
class InputError : public Error {
 public:
  using Error::Error;
};

// A defining identity failed its post-hoc check.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// An asserted inequality (decay rate, tail bound, residual budget) failed.
class BoundViolation : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  NumericalError(std::string stage, const std::string& message)
      : Error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Rethrows the active exception with `prefix` prepended, keeping its type.
[[noreturn]] void rethrow_with_prefix(const std::string& prefix);

}  // namespace garbe
