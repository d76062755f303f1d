#pragma once

#include <stdexcept>
#include <string>

namespace dmt {

/// Raised when an input violates an operation's precondition.
class validation_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a Monte Carlo run cannot produce a usable estimate
/// (for example too few failures to fit a slope).
class statistical_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw validation_error(message);
}

}  // namespace detail
}  // namespace dmt
