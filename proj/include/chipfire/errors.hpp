#pragma once

#include <stdexcept>
#include <string>

namespace chipfire {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct IllegalFiring : std::runtime_error {
  explicit IllegalFiring(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidComponent : std::runtime_error {
  explicit InvalidComponent(const std::string& what) : std::runtime_error(what) {}
};

struct NotEulerian : std::runtime_error {
  explicit NotEulerian(const std::string& what) : std::runtime_error(what) {}
};

struct NotStronglyConnected : std::runtime_error {
  explicit NotStronglyConnected(const std::string& what) : std::runtime_error(what) {}
};

// A bounded game or recurrence test needed more firings than the caller's
// step budget. Distinct from a verdict: the caller decides whether to retry,
// fall back or report "undecided".
struct StepBudgetExceeded : std::runtime_error {
  explicit StepBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct StateBudgetExceeded : std::runtime_error {
  explicit StateBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a game that is mathematically guaranteed to complete stalls.
// Always an implementation bug, never an input error.
struct InternalContradiction : std::logic_error {
  explicit InternalContradiction(const std::string& what) : std::logic_error(what) {}
};

struct ReplayFailure : std::logic_error {
  explicit ReplayFailure(const std::string& what) : std::logic_error(what) {}
};

}  // namespace chipfire
