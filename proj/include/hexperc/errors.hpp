#pragma once

#include <stdexcept>
#include <string>

namespace hexperc {

/// Raised when a caller passes a value outside an operation's domain.
class ParameterError : public std::invalid_argument {
public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an exact computation would exceed its configured budget.
/// Exact modules refuse instead of approximating.
class Refusal : public std::runtime_error {
public:
  explicit Refusal(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hexperc
