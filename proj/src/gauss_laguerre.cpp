#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <string>

#include "stirling/errors.hpp"
#include "stirling/quadrature.hpp"
#include "real_text.hpp"

namespace stirling {
namespace {

constexpr long double kRescale = 1e150L;

// The recurrence and the root polishing run in long double: in double, L_n
// near its smallest roots is rounding noise at the 1e-13 level, which leaks
// into the weights.
struct LaguerrePair {
  long double ln = 0.0L;       // L_n(x) * exp(-log_scale)
  long double ln_prev = 0.0L;  // L_{n-1}(x) * exp(-log_scale)
  long double log_scale = 0.0L;
};

// Three-term recurrence (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}, rescaled to
// stay inside the floating range for x up to ~4n.
LaguerrePair laguerre(int n, long double x) {
  long double prev = 1.0L;
  long double cur = 1.0L - x;
  long double log_scale = 0.0L;
  for (int k = 1; k < n; ++k) {
    const long double next = ((2.0L * k + 1.0L - x) * cur - k * prev) / (k + 1.0L);
    prev = cur;
    cur = next;
    if (std::fabs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += std::log(kRescale);
    }
  }
  return {cur, prev, log_scale};
}

long double polish_root(int n, long double x) {
  constexpr long double kLongEps = std::numeric_limits<long double>::epsilon();
  // Converged when the step reaches a few long-double ulps, or stalls well
  // below double resolution.
  constexpr long double kStall = 1e-15L;
  long double last_step = std::numeric_limits<long double>::infinity();
  for (int it = 0; it < 100; ++it) {
    const LaguerrePair p = laguerre(n, x);
    // L_n' = n (L_n - L_{n-1}) / x, so the Newton step is x L_n / (n (L_n - L_{n-1})).
    const long double step = x * p.ln / (n * (p.ln - p.ln_prev));
    if (!std::isfinite(step)) break;
    x -= step;
    const long double size = std::fabs(step);
    if (size <= 4.0L * kLongEps * x) return x;
    if (it >= 2 && size >= 0.5L * last_step && size <= kStall * x) return x;
    last_step = size;
  }
  if (last_step <= kStall * x) return x;
  throw ConvergenceError("gauss_laguerre: Newton polishing failed for order " + std::to_string(n) +
                         " near x = " + detail::real_text(static_cast<double>(x)));
}

}  // namespace

QuadratureRule gauss_laguerre(int order) {
  if (order < 1 || order > kMaxLaguerreOrder)
    throw DomainError("gauss_laguerre: order must be in [1, " + std::to_string(kMaxLaguerreOrder) + "], got " +
                      std::to_string(order));
  const int n = order;

  QuadratureRule rule;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  if (n == 1) {
    rule.nodes[0] = 1.0;
    rule.weights[0] = 1.0;
    return rule;
  }

  // Jacobi matrix: diagonal 2i+1, off-diagonal i+1.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n - 1);
  for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + 1.0;
  for (int i = 0; i + 1 < n; ++i) sub(i) = i + 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("gauss_laguerre: tridiagonal eigensolver failed for order " + std::to_string(n));
  const Eigen::VectorXd& guesses = solver.eigenvalues();

  const long double log_n = std::log(static_cast<long double>(n));
  for (int i = 0; i < n; ++i) {
    const long double x = polish_root(n, guesses(i));
    const LaguerrePair p = laguerre(n, x);
    // w = x / (n^2 L_{n-1}(x)^2)
    const long double log_w = std::log(x) - 2.0L * log_n - 2.0L * (std::log(std::fabs(p.ln_prev)) + p.log_scale);
    rule.nodes[i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(std::exp(log_w));
  }

  for (int i = 0; i < n; ++i) {
    const bool ordered = i == 0 ? rule.nodes[0] > 0.0 : rule.nodes[i] > rule.nodes[i - 1];
    if (!ordered || !std::isfinite(rule.weights[i]))
      throw ConvergenceError("gauss_laguerre: root " + std::to_string(i) + " of order " + std::to_string(n) +
                             " collapsed onto a neighbour");
  }
  return rule;
}

const QuadratureRule& cached_gauss_laguerre(int order) {
  if (order < 1 || order > kMaxLaguerreOrder)
    throw DomainError("cached_gauss_laguerre: order out of range: " + std::to_string(order));
  static std::array<std::once_flag, kMaxLaguerreOrder + 1> once;
  static std::array<std::unique_ptr<const QuadratureRule>, kMaxLaguerreOrder + 1> rules;
  const auto slot = static_cast<std::size_t>(order);
  std::call_once(once[slot], [&] { rules[slot] = std::make_unique<const QuadratureRule>(gauss_laguerre(order)); });
  return *rules[slot];
}

double integrate_laguerre(const std::function<double(double)>& f, const QuadratureRule& rule) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double s = rule.nodes[i];
    const double fs = f(s);
    if (!std::isfinite(fs))
      throw EvaluationError("integrate_laguerre: integrand not finite at node s = " + detail::real_text(s), s);
    const double term = rule.weights[i] * fs;
    const double t = sum + term;
    comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace stirling
