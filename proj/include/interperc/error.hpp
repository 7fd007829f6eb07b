#pragma once

#include <stdexcept>
#include <string>

namespace interperc {

/// Bad parameters, malformed windows, mismatched lengths.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A lazily grown window hit its growth cap without finding a point.
class ExtensionBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bisection could not find a lambda range where the crossing estimate
/// changes sides of 1/2.
class BracketNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The epsilon probe (or the block search) of the divergent-subset
/// construction ran out of budget.
class ProbeFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace detail
}  // namespace interperc
