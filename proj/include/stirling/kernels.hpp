#pragma once

// Binet kernels
//
//   phi(t) = (1/(e^t - 1) - 1/t + 1/2) / t = sum_{v>=1} 2 / (4 pi^2 v^2 + t^2)
//   psi(t) = -phi'(t)                      = sum_{v>=1} 4t / (4 pi^2 v^2 + t^2)^2
//
// Every evaluation returns a BoundedValue whose error_bound covers both the
// truncation of the series and floating-point rounding.

#include <cstdint>

namespace stirling {

struct BoundedValue {
  double value = 0.0;
  double error_bound = 0.0;

  double lower() const noexcept { return value - error_bound; }
  double upper() const noexcept { return value + error_bound; }
};

struct TruncationBudget {
  double target_tol = 1e-12;
  std::int64_t max_terms = 100'000'000;
};

/// Tail bounds for the series truncated after n_terms terms. Both return the
/// smaller of the uniform comparison bound (1/(2 pi^2 N) for phi,
/// 1/(4 pi^2 N) for psi) and the integral estimate int_N^inf term(u) du.
double phi_tail_bound(double t, std::int64_t n_terms);
double psi_tail_bound(double t, std::int64_t n_terms);

/// Smallest N whose tail bound is <= tol, or -1 if that exceeds max_terms.
std::int64_t phi_terms_for(double t, double tol, std::int64_t max_terms);
std::int64_t psi_terms_for(double t, double tol, std::int64_t max_terms);

BoundedValue phi_series(double t, std::int64_t n_terms);
BoundedValue psi_series(double t, std::int64_t n_terms);

/// Closed forms. Below t = kTaylorCrossover both switch to the even Taylor
/// expansion in B_{2k}/(2k)! to dodge the cancellation in 1/(e^t-1) - 1/t.
inline constexpr double kTaylorCrossover = 2.0;

double phi_closed(double t);
double psi_closed(double t);
BoundedValue phi_closed_bounded(double t);
BoundedValue psi_closed_bounded(double t);

/// Tolerance-driven evaluation: closed form when its rounding bound already
/// meets tol, otherwise the series with N picked from the budget.
/// Throws BudgetExceeded when neither route can certify tol.
BoundedValue phi(double t, double tol, std::int64_t max_terms = TruncationBudget{}.max_terms);
BoundedValue psi(double t, double tol, std::int64_t max_terms = TruncationBudget{}.max_terms);

/// Taylor coefficients c_k of phi(t) = sum_k c_k t^{2k}, i.e. B_{2k+2}/(2k+2)!.
/// Exposed for testing.
double binet_taylor_coefficient(int k);
inline constexpr int kBinetTaylorTerms = 20;

}  // namespace stirling
