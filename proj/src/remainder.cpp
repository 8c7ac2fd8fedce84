#include "stirling/remainder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "stirling/errors.hpp"
#include "stirling/kernels.hpp"
#include "stirling/quadrature.hpp"
#include "real_text.hpp"

namespace stirling {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_x(double x, const char* who) {
  if (!std::isfinite(x) || !(x > 0.0))
    throw DomainError(std::string(who) + ": x must be finite and > 0, got " + detail::real_text(x));
}

int companion_order(int order) { return std::max(1, (2 * order) / 3); }

// Kernel evaluation that remembers the worst relative bound it has seen, so
// kernel rounding can be folded into the integral's accuracy.
struct TrackedKernel {
  double worst_relative = 0.0;

  double phi_at(double t) {
    const BoundedValue v = phi_closed_bounded(t);
    worst_relative = std::max(worst_relative, v.error_bound / v.value);
    return v.value;
  }
  double psi_at(double t) {
    const BoundedValue v = psi_closed_bounded(t);
    if (v.value > 0.0) worst_relative = std::max(worst_relative, v.error_bound / v.value);
    return v.value;
  }
};

struct LaplaceValue {
  double value;
  double accuracy;
};

// int_0^inf f(s) e^{-s} ds on the configured rule, error from the companion rule.
template <typename F>
LaplaceValue laguerre_pair(F&& f, int order) {
  const double main = integrate_laguerre(f, cached_gauss_laguerre(order));
  const double companion = integrate_laguerre(f, cached_gauss_laguerre(companion_order(order)));
  return {main, std::fabs(main - companion)};
}

RemainderEval assemble(double x, double h, double acc_h, Method method) {
  RemainderEval r;
  r.x = x;
  r.h = h;
  r.sigma = 12.0 * x * h;
  r.lambda = std::expm1(h);
  r.theta = 1.0 - r.sigma;
  r.accuracy = 12.0 * x * acc_h + 4.0 * kEps * std::fabs(r.sigma);
  r.method = method;
  return r;
}

RemainderEval sigma_laguerre(double x, const EvalConfig& cfg) {
  TrackedKernel kernel;
  const LaplaceValue q = laguerre_pair([&](double s) { return kernel.phi_at(s / x); }, cfg.gl_order);
  // h = I / x
  const double acc_integral = q.accuracy + (kernel.worst_relative + 4.0 * kEps) * q.value;
  return assemble(x, q.value / x, acc_integral / x, Method::gauss_laguerre);
}

RemainderEval sigma_adaptive(double x, const EvalConfig& cfg) {
  TrackedKernel kernel;
  // phi(t) <= 1/(2t) for every t > 0 (integral comparison of the series).
  const double tol_h = 0.5 * cfg.tol / (12.0 * x);
  PanelResult r;
  try {
    r = integrate_adaptive([&](double t) { return kernel.phi_at(t); }, x, tol_h, cfg.max_panels, Envelope{0.5, -1});
  } catch (const AccuracyError& e) {
    // the integrator reports h; callers expect sigma
    throw AccuracyError("sigma: " + std::string(e.what()) + " at x = " + detail::real_text(x),
                        12.0 * x * e.best_value(), 12.0 * x * e.achieved_bound());
  }
  const double acc_h = r.error_estimate + (kernel.worst_relative + 4.0 * kEps) * std::fabs(r.value);
  return assemble(x, r.value, acc_h, Method::adaptive);
}

// psi(t) <= min(1/24, 1/(2t^2)), hence t^n psi(t) <= t^{n-2} / 2.
Envelope derivative_envelope(int n) { return Envelope{0.5, n - 2}; }

double derivative_target(double tol, double value) { return tol * std::fabs(value); }

ScalarEval theta_deriv_laguerre(int n, double x, const EvalConfig& cfg) {
  TrackedKernel kernel;
  const LaplaceValue q =
      laguerre_pair([&](double s) { return std::pow(s, n) * kernel.psi_at(s / x); }, cfg.gl_order);
  const double scale = 12.0 * std::pow(x, -(n + 1));
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  const double value = sign * scale * q.value;
  const double accuracy =
      scale * (q.accuracy + (kernel.worst_relative + 4.0 * kEps) * q.value) + (n + 4.0) * kEps * std::fabs(value);
  return {value, accuracy, Method::gauss_laguerre};
}

ScalarEval theta_deriv_adaptive(int n, double x, const EvalConfig& cfg) {
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  // The target is relative to |theta^(n)|, which spans dozens of decades over
  // (n, x); the Gauss-Laguerre value is a fine first guess even where it is
  // too inaccurate to keep.
  double magnitude = std::fabs(theta_deriv_laguerre(n, x, cfg).value);
  ScalarEval best{};
  constexpr int kAttempts = 6;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const double want = derivative_target(cfg.tol, magnitude);
    TrackedKernel kernel;
    PanelResult r;
    try {
      r = integrate_adaptive([&](double t) { return std::pow(t, n) * kernel.psi_at(t); }, x, 0.5 * want / 12.0,
                             cfg.max_panels, derivative_envelope(n));
    } catch (const AccuracyError& e) {
      if (attempt + 1 == kAttempts)
        throw AccuracyError("theta_deriv: " + std::string(e.what()) + " for n = " + std::to_string(n) +
                                ", x = " + detail::real_text(x),
                            sign * 12.0 * e.best_value(), 12.0 * e.achieved_bound());
      magnitude = 12.0 * std::fabs(e.best_value());
      continue;
    }
    best.value = sign * 12.0 * r.value;
    best.accuracy = 12.0 * (r.error_estimate + (kernel.worst_relative + 4.0 * kEps) * std::fabs(r.value)) +
                    (n + 4.0) * kEps * std::fabs(best.value);
    best.method = Method::adaptive;
    if (best.accuracy <= derivative_target(cfg.tol, best.value)) return best;
    magnitude = std::min(0.5 * magnitude, std::fabs(best.value));
  }
  throw AccuracyError("theta_deriv: accuracy target not reached for n = " + std::to_string(n) +
                          ", x = " + detail::real_text(x),
                      best.value, best.accuracy);
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::gauss_laguerre:
      return "gauss_laguerre";
    case Method::adaptive:
      return "adaptive";
  }
  return "unknown";
}

void validate(const EvalConfig& cfg) {
  if (!std::isfinite(cfg.tol) || cfg.tol < kMinTolerance)
    throw DomainError("EvalConfig: tol must be finite and >= 1e-13, got " + detail::real_text(cfg.tol));
  if (cfg.gl_order < 1 || cfg.gl_order > kMaxLaguerreOrder)
    throw DomainError("EvalConfig: gl_order must be in [1, 256], got " + std::to_string(cfg.gl_order));
  if (cfg.max_panels < 1) throw DomainError("EvalConfig: max_panels must be >= 1");
  if (cfg.max_deriv_order < 0) throw DomainError("EvalConfig: max_deriv_order must be >= 0");
}

RemainderEval sigma(double x, const EvalConfig& cfg) {
  require_x(x, "sigma");
  validate(cfg);

  const bool try_laguerre =
      cfg.method == MethodChoice::gauss_laguerre || (cfg.method == MethodChoice::automatic && x >= 1.0);
  if (try_laguerre) {
    const RemainderEval r = sigma_laguerre(x, cfg);
    if (r.accuracy <= cfg.tol) return r;
    if (cfg.method == MethodChoice::gauss_laguerre)
      throw AccuracyError("sigma: Gauss-Laguerre estimate " + detail::real_text(r.accuracy) + " exceeds tol at x = " +
                              detail::real_text(x),
                          r.sigma, r.accuracy);
  }

  const RemainderEval r = sigma_adaptive(x, cfg);
  if (r.accuracy > cfg.tol)
    throw AccuracyError("sigma: accuracy " + detail::real_text(r.accuracy) + " exceeds tol at x = " + detail::real_text(x),
                        r.sigma, r.accuracy);
  return r;
}

double lambda_fn(double x, const EvalConfig& cfg) { return sigma(x, cfg).lambda; }

double h_accuracy(const RemainderEval& r) { return r.accuracy / (12.0 * r.x); }

double lambda_accuracy(const RemainderEval& r) {
  const double dh = h_accuracy(r);
  return std::exp(r.h + dh) * dh + 2.0 * kEps * std::fabs(r.lambda);
}

ScalarEval theta_deriv(int n, double x, const EvalConfig& cfg) {
  require_x(x, "theta_deriv");
  validate(cfg);
  if (n < 0 || n > cfg.max_deriv_order)
    throw DomainError("theta_deriv: order n must be in [0, " + std::to_string(cfg.max_deriv_order) + "], got " +
                      std::to_string(n));

  const bool try_laguerre =
      cfg.method == MethodChoice::gauss_laguerre || (cfg.method == MethodChoice::automatic && x >= 1.0);
  if (try_laguerre) {
    const ScalarEval r = theta_deriv_laguerre(n, x, cfg);
    if (r.accuracy <= derivative_target(cfg.tol, r.value)) return r;
    if (cfg.method == MethodChoice::gauss_laguerre)
      throw AccuracyError("theta_deriv: Gauss-Laguerre estimate exceeds target at x = " + detail::real_text(x), r.value,
                          r.accuracy);
  }
  return theta_deriv_adaptive(n, x, cfg);
}

ScalarEval ln_gamma_binet(double x, const EvalConfig& cfg) {
  const RemainderEval r = sigma(x, cfg);
  const double elementary = (x + 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi);
  return {elementary + r.h, h_accuracy(r), r.method};
}

}  // namespace stirling
