#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace zerodist {

/// Base for every recoverable error raised by the library. `code()` is a
/// stable dotted identifier (e.g. "domain.bad-interval") used by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class DomainError : public Error {
 public:
  using Error::Error;
  explicit DomainError(const std::string& message) : Error("domain.invalid-argument", message) {}
};

class ContainmentViolation : public DomainError {
 public:
  ContainmentViolation(double re, double im, const std::string& message)
      : DomainError("domain.containment-violation", message), re_(re), im_(im) {}

  double witness_re() const noexcept { return re_; }
  double witness_im() const noexcept { return im_; }

 private:
  double re_;
  double im_;
};

class SeparationViolation : public DomainError {
 public:
  explicit SeparationViolation(const std::string& message)
      : DomainError("domain.separation-violation", message) {}
};

}  // namespace zerodist
