#pragma once

#include <stdexcept>
#include <string>

namespace stirling {

/// Argument outside the mathematical domain of an operation (x <= 0, NaN, bad order, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested accuracy could not be reached. Carries the best value found and
/// the error bound/estimate that was actually achieved.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_value, double achieved_bound)
      : std::runtime_error(what), best_value_(best_value), achieved_bound_(achieved_bound) {}

  double best_value() const noexcept { return best_value_; }
  double achieved_bound() const noexcept { return achieved_bound_; }

 private:
  double best_value_;
  double achieved_bound_;
};

/// Series truncation tolerance unreachable within the term budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, long long terms_needed)
      : std::runtime_error(what), terms_needed_(terms_needed) {}

  long long terms_needed() const noexcept { return terms_needed_; }

 private:
  long long terms_needed_;
};

/// An integrand produced a non-finite value at a quadrature node.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double node)
      : std::runtime_error(what), node_(node) {}

  double node() const noexcept { return node_; }

 private:
  double node_;
};

/// Internal iterative procedure failed to converge (root polishing etc.).
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stirling
