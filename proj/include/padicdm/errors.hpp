#pragma once

#include <stdexcept>
#include <string>

namespace padicdm {

// Base of every error thrown by the library. kind() is a stable machine
// readable tag; the CLI copies it into its JSON error document.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& m) : Error("invalid-input", m) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& m) : Error("domain-error", m) {}
};

struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& m) : Error("budget-exceeded", m) {}
};

struct InvalidGauge : Error {
  explicit InvalidGauge(const std::string& m) : Error("invalid-gauge", m) {}
};

struct CyclicSearchFailed : Error {
  explicit CyclicSearchFailed(const std::string& m) : Error("cyclic-search-failed", m) {}
};

struct HypothesisViolated : Error {
  explicit HypothesisViolated(const std::string& m) : Error("hypothesis-violated", m) {}
};

}  // namespace padicdm
