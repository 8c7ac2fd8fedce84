#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "stirling/errors.hpp"
#include "stirling/quadrature.hpp"
#include "real_text.hpp"

namespace stirling {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

template <typename F>
Panel gauss_kronrod(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::fabs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  const double error = std::fabs((kronrod - gauss) * half) + 50.0 * kEps * abs_sum * half;
  return {a, b, kronrod * half, error};
}

}  // namespace

double envelope_tail(const Envelope& env, double x, double cutoff) {
  if (!(x > 0.0) || !(cutoff > 0.0)) throw DomainError("envelope_tail: x and cutoff must be > 0");
  double bound;
  if (env.power < 0) {
    // t^p <= T^p on [T, inf)
    bound = env.coeff * std::pow(cutoff, env.power) * std::exp(-x * cutoff) / x;
  } else {
    // int_T^inf t^p e^{-xt} dt = e^{-xT} sum_{k=0}^{p} p!/k! T^k / x^{p+1-k}
    const int p = env.power;
    const double log_t = std::log(cutoff);
    const double log_x = std::log(x);
    const double log_pfact = std::lgamma(p + 1.0);
    bound = 0.0;
    for (int k = 0; k <= p; ++k)
      bound += std::exp(-x * cutoff + log_pfact - std::lgamma(k + 1.0) + k * log_t - (p + 1 - k) * log_x);
    bound *= env.coeff;
  }
  return bound * (1.0 + 1e-12);
}

PanelResult integrate_adaptive(const std::function<double(double)>& g, double x, double tol, int max_panels,
                               const Envelope& envelope) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("integrate_adaptive: x must be finite and > 0");
  if (!(tol > 0.0)) throw DomainError("integrate_adaptive: tol must be > 0");
  if (max_panels < 1) throw DomainError("integrate_adaptive: max_panels must be >= 1");

  // Truncation point: doubling, then bisection down to ~1e-3 relative.
  const double tail_target = 0.5 * tol;
  double hi = 1.0;
  while (envelope_tail(envelope, x, hi) > tail_target) {
    hi *= 2.0;
    if (!std::isfinite(hi) || hi > 1e300) throw AccuracyError("integrate_adaptive: no finite truncation point", 0.0, tol);
  }
  double lo = hi / 2.0;
  if (envelope_tail(envelope, x, lo) > tail_target) {
    while (hi - lo > 1e-3 * hi) {
      const double mid = 0.5 * (lo + hi);
      if (envelope_tail(envelope, x, mid) <= tail_target)
        hi = mid;
      else
        lo = mid;
    }
  }
  const double cutoff = hi;
  const double tail = envelope_tail(envelope, x, cutoff);

  auto integrand = [&](double t) {
    const double v = g(t) * std::exp(-x * t);
    if (!std::isfinite(v))
      throw EvaluationError("integrate_adaptive: integrand not finite at t = " + detail::real_text(t), t);
    return v;
  };

  std::vector<Panel> panels;
  {
    double a = 0.0;
    double b = std::min(1.0, cutoff);
    while (true) {
      panels.push_back(gauss_kronrod(integrand, a, b));
      if (b >= cutoff) break;
      a = b;
      b = std::min(2.0 * b, cutoff);
    }
  }

  auto totals = [&panels](double& value, double& error) {
    double comp = 0.0;
    value = 0.0;
    error = 0.0;
    for (const Panel& p : panels) {
      const double t = value + p.value;
      comp += std::fabs(value) >= std::fabs(p.value) ? (value - t) + p.value : (p.value - t) + value;
      value = t;
      error += p.error;
    }
    value += comp;
  };

  double value = 0.0;
  double error = 0.0;
  totals(value, error);
  while (error + tail > tol) {
    if (static_cast<int>(panels.size()) >= max_panels)
      throw AccuracyError("integrate_adaptive: tolerance " + detail::real_text(tol) + " not met within " +
                              std::to_string(max_panels) + " panels (achieved " + detail::real_text(error + tail) + ")",
                          value, error + tail);
    // First panel with the largest error; ties resolve by position.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].error > panels[worst].error) worst = i;
    const Panel split = panels[worst];
    const double mid = 0.5 * (split.a + split.b);
    panels[worst] = gauss_kronrod(integrand, split.a, mid);
    panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1, gauss_kronrod(integrand, mid, split.b));
    totals(value, error);
  }

  return {value, error + tail, static_cast<int>(panels.size()), cutoff};
}

}  // namespace stirling
