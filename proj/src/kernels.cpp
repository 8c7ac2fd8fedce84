#include "stirling/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "stirling/errors.hpp"
#include "real_text.hpp"

namespace stirling {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kFourPiSq = 4.0 * kPi * kPi;
// Absorbs rounding in the evaluation of the bound formulas themselves.
constexpr double kBoundInflation = 1.0 + 1e-10;

void require_argument(double t, const char* who) {
  if (!std::isfinite(t) || t < 0.0)
    throw DomainError(std::string(who) + ": t must be finite and >= 0, got " + detail::real_text(t));
}

void require_terms(std::int64_t n, const char* who) {
  if (n < 1) throw DomainError(std::string(who) + ": n_terms must be >= 1");
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double result() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Rounding allowance for a compensated sum of N positive terms, each
// computed with a few ulps of relative error.
double series_rounding(double value, std::int64_t n) {
  return (8.0 * kEps + static_cast<double>(n) * kEps * kEps) * value;
}

// Smallest N in [1, max_terms] with tail(N) <= target; tail is decreasing in N.
template <typename Tail>
std::int64_t smallest_terms(Tail tail, double target, std::int64_t max_terms) {
  if (tail(1) <= target) return 1;
  std::int64_t hi = 2;
  while (tail(hi) > target) {
    if (hi >= max_terms) return -1;
    hi = (hi > max_terms / 2) ? max_terms : 2 * hi;
  }
  std::int64_t lo = hi / 2;  // tail(lo) > target
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (tail(mid) <= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

double phi_tail_bound(double t, std::int64_t n_terms) {
  require_argument(t, "phi_tail_bound");
  require_terms(n_terms, "phi_tail_bound");
  const double n = static_cast<double>(n_terms);
  const double crude = 1.0 / (2.0 * kPi * kPi * n);
  if (t == 0.0) return crude * kBoundInflation;
  // int_N^inf 2/(4 pi^2 u^2 + t^2) du = atan(t/(2 pi N)) / (pi t)
  const double integral = std::atan(t / (kTwoPi * n)) / (kPi * t);
  return std::fmin(crude, integral) * kBoundInflation;
}

double psi_tail_bound(double t, std::int64_t n_terms) {
  require_argument(t, "psi_tail_bound");
  require_terms(n_terms, "psi_tail_bound");
  if (t == 0.0) return 0.0;
  const double n = static_cast<double>(n_terms);
  const double crude = 1.0 / (kFourPiSq * n);
  // int_N^inf 4t/(b^2 u^2 + t^2)^2 du with b = 2 pi, r = t/(bN):
  //   = 2/(t^2 b) * (atan r - r/(1+r^2))
  const double r = t / (kTwoPi * n);
  double integral;
  if (r < 0.1) {
    // atan r - r/(1+r^2) = 2/3 r^3 - 4/5 r^5 + 6/7 r^7 - ..., alternating and
    // decreasing, so stopping after a positive term gives an upper bound.
    const double r2 = r * r;
    const double b4 = kFourPiSq * kFourPiSq;
    integral = (2.0 * t / (b4 * n * n * n)) * (2.0 / 3.0 - 0.8 * r2 + (6.0 / 7.0) * r2 * r2);
  } else {
    integral = 2.0 / (t * t * kTwoPi) * (std::atan(r) - r / (1.0 + r * r));
  }
  return std::fmin(crude, integral) * kBoundInflation;
}

std::int64_t phi_terms_for(double t, double tol, std::int64_t max_terms) {
  require_argument(t, "phi_terms_for");
  if (!(tol > 0.0)) throw DomainError("phi_terms_for: tol must be > 0");
  return smallest_terms([t](std::int64_t n) { return phi_tail_bound(t, n); }, tol, max_terms);
}

std::int64_t psi_terms_for(double t, double tol, std::int64_t max_terms) {
  require_argument(t, "psi_terms_for");
  if (!(tol > 0.0)) throw DomainError("psi_terms_for: tol must be > 0");
  return smallest_terms([t](std::int64_t n) { return psi_tail_bound(t, n); }, tol, max_terms);
}

BoundedValue phi_series(double t, std::int64_t n_terms) {
  require_argument(t, "phi_series");
  require_terms(n_terms, "phi_series");
  const double t2 = t * t;
  CompensatedSum sum;
  for (std::int64_t v = n_terms; v >= 1; --v) {
    const double dv = static_cast<double>(v);
    sum.add(2.0 / (kFourPiSq * dv * dv + t2));
  }
  const double value = sum.result();
  return {value, phi_tail_bound(t, n_terms) + series_rounding(value, n_terms)};
}

BoundedValue psi_series(double t, std::int64_t n_terms) {
  require_argument(t, "psi_series");
  require_terms(n_terms, "psi_series");
  if (t == 0.0) return {0.0, 0.0};
  const double t2 = t * t;
  CompensatedSum sum;
  for (std::int64_t v = n_terms; v >= 1; --v) {
    const double dv = static_cast<double>(v);
    const double d = kFourPiSq * dv * dv + t2;
    sum.add(4.0 * t / (d * d));
  }
  const double value = sum.result();
  return {value, psi_tail_bound(t, n_terms) + series_rounding(value, n_terms)};
}

BoundedValue phi_closed_bounded(double t) {
  if (!std::isfinite(t) || t <= 0.0)
    throw DomainError("phi_closed: t must be finite and > 0, got " + detail::real_text(t));

  if (t < kTaylorCrossover) {
    // phi = sum_k c_k u^k, u = t^2; alternating with |ratio| < (t/2pi)^2.
    const double u = t * t;
    double value = binet_taylor_coefficient(kBinetTaylorTerms - 1);
    for (int k = kBinetTaylorTerms - 2; k >= 0; --k) value = value * u + binet_taylor_coefficient(k);
    const double truncation = std::fabs(binet_taylor_coefficient(kBinetTaylorTerms)) * std::pow(u, kBinetTaylorTerms);
    return {value, truncation + 4.0 * kEps * value};
  }

  const double a = 1.0 / std::expm1(t);
  const double b = 1.0 / t;
  const double value = ((a - b) + 0.5) / t;
  return {value, 8.0 * kEps * (a + b + 0.5) / t};
}

BoundedValue psi_closed_bounded(double t) {
  if (!std::isfinite(t) || t <= 0.0)
    throw DomainError("psi_closed: t must be finite and > 0, got " + detail::real_text(t));

  if (t < kTaylorCrossover) {
    // psi = -sum_{k>=1} 2k c_k t^{2k-1} = t * sum_{k>=1} (-2k c_k) u^{k-1}
    const double u = t * t;
    auto coeff = [](int k) { return -2.0 * k * binet_taylor_coefficient(k); };
    double poly = coeff(kBinetTaylorTerms - 1);
    for (int k = kBinetTaylorTerms - 2; k >= 1; --k) poly = poly * u + coeff(k);
    const double value = t * poly;
    const double truncation =
        std::fabs(coeff(kBinetTaylorTerms)) * std::pow(t, 2 * kBinetTaylorTerms - 1);
    return {value, truncation + 8.0 * kEps * value};
  }

  // psi = E/t - 1/t^3 + A/t^2, E = e^t/(e^t-1)^2 = 1/(4 sinh^2(t/2)), A = t phi(t)
  const double s = std::sinh(0.5 * t);
  const double e = 0.25 / (s * s);
  const double inv_expm1 = 1.0 / std::expm1(t);
  const double inv_t = 1.0 / t;
  const double a = (inv_expm1 - inv_t) + 0.5;
  const double inv_t2 = inv_t * inv_t;
  const double value = e * inv_t - inv_t2 * inv_t + a * inv_t2;
  const double scale = e * inv_t + inv_t2 * inv_t + (inv_expm1 + inv_t + 0.5) * inv_t2;
  return {value, 8.0 * kEps * scale};
}

double phi_closed(double t) { return phi_closed_bounded(t).value; }
double psi_closed(double t) { return psi_closed_bounded(t).value; }

BoundedValue phi(double t, double tol, std::int64_t max_terms) {
  require_argument(t, "phi");
  if (!(tol > 0.0)) throw DomainError("phi: tol must be > 0");
  if (t == 0.0) {
    constexpr double twelfth = 1.0 / 12.0;
    return {twelfth, 0.5 * kEps * twelfth};
  }
  const BoundedValue closed = phi_closed_bounded(t);
  if (closed.error_bound <= tol) return closed;

  const double target = tol - series_rounding(1.0 / 12.0, max_terms);
  const std::int64_t n = target > 0.0 ? phi_terms_for(t, target, max_terms) : -1;
  if (n < 0)
    throw BudgetExceeded("phi: tolerance unreachable within " + std::to_string(max_terms) + " terms",
                         static_cast<long long>(std::ceil(1.0 / (2.0 * kPi * kPi * tol))));
  const BoundedValue series = phi_series(t, n);
  if (series.error_bound > tol) throw BudgetExceeded("phi: rounding floor exceeds tolerance", n);
  return series;
}

BoundedValue psi(double t, double tol, std::int64_t max_terms) {
  require_argument(t, "psi");
  if (!(tol > 0.0)) throw DomainError("psi: tol must be > 0");
  if (t == 0.0) return {0.0, 0.0};
  const BoundedValue closed = psi_closed_bounded(t);
  if (closed.error_bound <= tol) return closed;

  // sup psi <= 1/24, so the rounding share is bounded accordingly.
  const double target = tol - series_rounding(1.0 / 24.0, max_terms);
  const std::int64_t n = target > 0.0 ? psi_terms_for(t, target, max_terms) : -1;
  if (n < 0)
    throw BudgetExceeded("psi: tolerance unreachable within " + std::to_string(max_terms) + " terms",
                         static_cast<long long>(std::ceil(1.0 / (kFourPiSq * tol))));
  const BoundedValue series = psi_series(t, n);
  if (series.error_bound > tol) throw BudgetExceeded("psi: rounding floor exceeds tolerance", n);
  return series;
}

}  // namespace stirling
