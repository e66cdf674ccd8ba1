#pragma once

#include <stdexcept>
#include <string>

namespace arrangekit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed text, schema violations, missing data. CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Request exceeds a configured resource cap. CLI exit code 3.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public ResourceError {
 public:
  CapExceeded(std::string what, std::string requested, std::string cap)
      : ResourceError(what + ": requested " + requested + " exceeds cap " + cap),
        requested_(std::move(requested)),
        cap_(std::move(cap)) {}

  const std::string& requested() const noexcept { return requested_; }
  const std::string& cap() const noexcept { return cap_; }

 private:
  std::string requested_;
  std::string cap_;
};

class EmptyComposition : public ValidationError {
 public:
  EmptyComposition() : ValidationError("composition is empty (N must be at least 1)") {}
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace arrangekit
