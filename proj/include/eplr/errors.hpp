#pragma once

#include <stdexcept>
#include <string>

namespace eplr {

/// Invalid arguments or violated preconditions (CLI exit code 2).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested enumeration or allocation exceeds the configured budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A self-check (e.g. fast vs naive product) failed (CLI exit code 3).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eplr
