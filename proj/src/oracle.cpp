#include "stirling/oracle.hpp"

#include <quadmath.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "stirling/errors.hpp"
#include "real_text.hpp"

namespace stirling {
namespace {

using quad = __float128;

constexpr int kTerms = kSpougeParameter - 1;
constexpr double kDoubleEps = std::numeric_limits<double>::epsilon();
// Allowance for binary128 rounding relative to the largest intermediate.
constexpr double kQuadRounding = 1e-30;

struct SpougeTable {
  std::array<quad, kTerms + 1> c{};
};

quad pi_q() { return acosq(quad(-1)); }

SpougeTable build_table() {
  SpougeTable t;
  const quad a = kSpougeParameter;
  t.c[0] = sqrtq(2 * pi_q());
  quad factorial = 1;  // (k-1)!
  for (int k = 1; k <= kTerms; ++k) {
    if (k > 1) factorial *= (k - 1);
    const quad sign = (k % 2 == 1) ? 1 : -1;
    t.c[k] = sign / factorial * powq(a - k, k - quad(0.5)) * expq(a - k);
  }
  return t;
}

const SpougeTable& table() {
  static const SpougeTable t = build_table();
  return t;
}

// ln Gamma(w + 1), w >= 0.
quad ln_gamma_1p(quad w) {
  const SpougeTable& t = table();
  const quad a = kSpougeParameter;
  quad sum = t.c[0];
  for (int k = 1; k <= kTerms; ++k) sum += t.c[k] / (w + k);
  return (w + quad(0.5)) * logq(w + a) - (w + a) + logq(sum);
}

// h(x) = ln Gamma(x+1) - (x + 1/2) ln x + x - ln(2 pi)/2
quad binet_h(quad x) { return ln_gamma_1p(x) - (x + quad(0.5)) * logq(x) + x - logq(2 * pi_q()) / 2; }

double method_bound_log() {
  const double eps = spouge_error_bound();
  return eps / (1.0 - eps);
}

void require_positive(double v, const char* who) {
  if (!std::isfinite(v) || !(v > 0.0))
    throw DomainError(std::string(who) + ": argument must be finite and > 0, got " + detail::real_text(v));
}

}  // namespace

double spouge_error_bound() {
  const double a = kSpougeParameter;
  return std::pow(a, -0.5) * std::pow(2.0 * std::numbers::pi, -(a + 0.5));
}

OracleValue ln_gamma_ref(double z) {
  require_positive(z, "ln_gamma_ref");
  const quad zq = z;
  const quad value = zq >= 1 ? ln_gamma_1p(zq - 1) : ln_gamma_1p(zq) - logq(zq);
  const double v = static_cast<double>(value);
  return {v, method_bound_log() + kQuadRounding * std::fmax(1.0, std::fabs(v))};
}

OracleValue sigma_ref(double x) {
  require_positive(x, "sigma_ref");
  const quad xq = x;
  const double v = static_cast<double>(12 * xq * binet_h(xq));
  const double lg = std::fabs(static_cast<double>(ln_gamma_1p(xq)));
  return {v, 12.0 * x * (method_bound_log() + kQuadRounding * std::fmax(1.0, lg)) + kDoubleEps * std::fabs(v)};
}

OracleValue lambda_ref(double x) {
  require_positive(x, "lambda_ref");
  const quad xq = x;
  const quad h = binet_h(xq);
  const double v = static_cast<double>(expm1q(h));
  const double lg = std::fabs(static_cast<double>(ln_gamma_1p(xq)));
  const double h_bound = method_bound_log() + kQuadRounding * std::fmax(1.0, lg);
  return {v, std::exp(static_cast<double>(h) + h_bound) * h_bound + kDoubleEps * std::fabs(v)};
}

}  // namespace stirling
