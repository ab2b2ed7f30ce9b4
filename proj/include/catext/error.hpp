#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace catext {

// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Input data is structurally unusable (bad ids, wrong sizes).
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// A computation was declined because of a configured size limit.
class ResourceRefusal : public Error {
 public:
  ResourceRefusal(const std::string& what, std::uint64_t estimate, std::uint64_t limit)
      : Error(what), estimate_(estimate), limit_(limit) {}
  std::uint64_t estimate() const { return estimate_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t estimate_;
  std::uint64_t limit_;
};

// One failed condition found by a validator. Violations are data, not errors.
struct Violation {
  std::string kind;
  std::string message;
  std::vector<std::int64_t> witness;
};

using Violations = std::vector<Violation>;

}  // namespace catext
