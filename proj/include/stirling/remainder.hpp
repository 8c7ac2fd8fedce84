#pragma once

// Stirling remainder and friends, evaluated from the Binet integrals
//
//   Gamma(x+1) = sqrt(2 pi x) (x/e)^x exp(sigma(x) / (12 x))
//   h(x)       = int_0^inf phi(t) e^{-xt} dt        = sigma(x) / (12 x)
//   lambda(x)  = exp(h(x)) - 1
//   theta(x)   = 1 - sigma(x) = 12 int_0^inf psi(t) e^{-xt} dt
//
// All accuracies are absolute. sigma -> 0 as x -> 0, so relative accuracy is
// not meaningful near the origin.

#include <string_view>

namespace stirling {

enum class Method { gauss_laguerre, adaptive };

enum class MethodChoice { automatic, gauss_laguerre, adaptive };

std::string_view to_string(Method m);

struct EvalConfig {
  double tol = 1e-10;
  int gl_order = 96;
  int max_panels = 4000;
  int max_deriv_order = 8;
  MethodChoice method = MethodChoice::automatic;
};

/// Smallest tolerance a double evaluation can honour.
inline constexpr double kMinTolerance = 1e-13;

/// Throws DomainError if cfg breaks its invariants.
void validate(const EvalConfig& cfg);

struct RemainderEval {
  double x = 0.0;
  double sigma = 0.0;
  double h = 0.0;
  double lambda = 0.0;
  double theta = 0.0;
  double accuracy = 0.0;  // absolute, on sigma (and hence theta)
  Method method = Method::gauss_laguerre;
};

/// Value with an absolute accuracy and the integration route used.
struct ScalarEval {
  double value = 0.0;
  double accuracy = 0.0;
  Method method = Method::gauss_laguerre;
};

/// sigma(x) and the quantities derived from it. With the automatic method,
/// x >= 1 uses Gauss-Laguerre on 12 int phi(s/x) e^{-s} ds (error estimated
/// against a companion rule of 2/3 the order), everything else and any
/// Gauss-Laguerre result that misses tol goes through the adaptive t-domain
/// integrator.
///
/// Throws DomainError for x <= 0 or non-finite x, AccuracyError when tol is
/// out of reach.
RemainderEval sigma(double x, const EvalConfig& cfg = {});

double lambda_fn(double x, const EvalConfig& cfg = {});

/// Absolute accuracies of the derived fields.
double h_accuracy(const RemainderEval& r);
double lambda_accuracy(const RemainderEval& r);

/// n-th derivative of theta,
///   theta^(n)(x) = 12 (-1)^n int_0^inf t^n psi(t) e^{-xt} dt.
/// The accuracy target is relative, cfg.tol * |theta^(n)(x)|: over
/// n in [0, 8] and x in [1e-2, 1e3] the magnitudes span ~35 decades, so no
/// fixed absolute tolerance fits. Since theta < 1 this is never looser than
/// cfg.tol for n = 0.
ScalarEval theta_deriv(int n, double x, const EvalConfig& cfg = {});

/// ln Gamma(x+1) = (x + 1/2) ln x - x + ln(2 pi)/2 + h(x).
/// accuracy covers the integral only; the elementary terms add a few ulps.
ScalarEval ln_gamma_binet(double x, const EvalConfig& cfg = {});

}  // namespace stirling
