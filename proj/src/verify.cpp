#include "stirling/verify.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "stirling/errors.hpp"
#include "stirling/oracle.hpp"

namespace stirling {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Sign test on value against its error bar.
CheckStatus classify(double value, double bound) {
  if (value - bound > 0.0) return CheckStatus::pass;
  if (value < -bound) return CheckStatus::fail;
  return CheckStatus::inconclusive;
}

void annotate(PointRecord& r, double signed_value, double bound) {
  r.margin = signed_value - bound;
  r.status = classify(signed_value, bound);
}

template <typename F>
auto guarded(double x, F&& f) {
  try {
    return f();
  } catch (const AccuracyError& e) {
    throw AccuracyError("at x = " + std::to_string(x) + ": " + e.what(), e.best_value(), e.achieved_bound());
  }
}

VerificationReport monotone_report(std::string name, std::span<const double> xs, const std::vector<double>& values,
                                   const std::vector<double>& bounds, double direction) {
  VerificationReport report;
  report.check_name = std::move(name);
  report.details.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    PointRecord& r = report.details[i];
    r.x = xs[i];
    r.value = values[i];
    r.bound = bounds[i];
    if (i + 1 < xs.size()) annotate(r, direction * (values[i + 1] - values[i]), bounds[i] + bounds[i + 1]);
  }
  summarize(report);
  return report;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

void summarize(VerificationReport& report) {
  bool any_fail = false;
  bool any_inconclusive = false;
  bool first = true;
  report.worst_margin = std::numeric_limits<double>::infinity();
  report.worst_location = report.details.empty() ? 0.0 : report.details.front().x;
  for (const PointRecord& r : report.details) {
    if (!r.margin) continue;
    if (first || *r.margin < report.worst_margin) {
      report.worst_margin = *r.margin;
      report.worst_location = r.x;
      first = false;
    }
    any_fail = any_fail || r.status == CheckStatus::fail;
    any_inconclusive = any_inconclusive || r.status == CheckStatus::inconclusive;
  }
  report.status = any_fail ? CheckStatus::fail : any_inconclusive ? CheckStatus::inconclusive : CheckStatus::pass;
  report.passed = report.worst_margin > 0.0;
}

std::vector<RemainderEval> evaluate_sigma_grid(std::span<const double> xs, const EvalConfig& cfg, Execution exec) {
  validate(cfg);
  return map_indices<RemainderEval>(
      xs.size(), [&](std::size_t i) { return guarded(xs[i], [&] { return sigma(xs[i], cfg); }); }, exec);
}

VerificationReport check_envelope(std::span<const double> xs, const EvalConfig& cfg, Execution exec) {
  require_strictly_increasing(xs);
  const auto evals = evaluate_sigma_grid(xs, cfg, exec);
  VerificationReport report;
  report.check_name = "envelope";
  report.details.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    PointRecord& r = report.details[i];
    r.x = xs[i];
    r.value = evals[i].sigma;
    r.bound = evals[i].accuracy;
    // distance to the nearer end of (0, 1)
    const double slack = std::fmin(r.value, 1.0 - r.value);
    annotate(r, slack, r.bound);
  }
  summarize(report);
  return report;
}

VerificationReport check_sigma_increasing(std::span<const double> xs, const EvalConfig& cfg, Execution exec) {
  require_strictly_increasing(xs);
  const auto evals = evaluate_sigma_grid(xs, cfg, exec);
  std::vector<double> values(xs.size());
  std::vector<double> bounds(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    values[i] = evals[i].sigma;
    bounds[i] = evals[i].accuracy;
  }
  return monotone_report("sigma_increasing", xs, values, bounds, +1.0);
}

VerificationReport check_lambda_decreasing(std::span<const double> xs, const EvalConfig& cfg, Execution exec) {
  require_strictly_increasing(xs);
  const auto evals = evaluate_sigma_grid(xs, cfg, exec);
  std::vector<double> values(xs.size());
  std::vector<double> bounds(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    values[i] = evals[i].lambda;
    bounds[i] = lambda_accuracy(evals[i]);
  }
  return monotone_report("lambda_decreasing", xs, values, bounds, -1.0);
}

VerificationReport check_complete_monotonicity(std::span<const double> xs, int n_max, const EvalConfig& cfg,
                                               Execution exec) {
  require_strictly_increasing(xs);
  validate(cfg);
  if (n_max < 0 || n_max > cfg.max_deriv_order)
    throw DomainError("check_complete_monotonicity: n_max must be in [0, " + std::to_string(cfg.max_deriv_order) +
                      "], got " + std::to_string(n_max));

  const std::size_t per_order = xs.size();
  const std::size_t total = per_order * static_cast<std::size_t>(n_max + 1);
  const auto evals = map_indices<ScalarEval>(
      total,
      [&](std::size_t k) {
        const int n = static_cast<int>(k / per_order);
        const double x = xs[k % per_order];
        return guarded(x, [&] { return theta_deriv(n, x, cfg); });
      },
      exec);

  VerificationReport report;
  report.check_name = "complete_monotonicity";
  report.details.resize(total);
  for (std::size_t k = 0; k < total; ++k) {
    PointRecord& r = report.details[k];
    const int n = static_cast<int>(k / per_order);
    r.x = xs[k % per_order];
    r.n = n;
    r.value = evals[k].value;
    r.bound = evals[k].accuracy;
    annotate(r, (n % 2 == 0 ? 1.0 : -1.0) * r.value, r.bound);
  }
  summarize(report);
  return report;
}

VerificationReport check_alternating_differences(std::span<const double> xs, int n_max, double h,
                                                 const BoundedFunction& f, std::string name, Execution exec) {
  require_strictly_increasing(xs);
  if (n_max < 0 || n_max > kMaxDifferenceOrder)
    throw DomainError("check_alternating_differences: n_max must be in [0, 6], got " + std::to_string(n_max));
  if (!std::isfinite(h) || !(h > 0.0)) throw DomainError("check_alternating_differences: h must be finite and > 0");
  for (double x : xs)
    if (!std::isfinite(x + n_max * h))
      throw DomainError("check_alternating_differences: stencil leaves (0, inf) at x = " + std::to_string(x));

  // f at x + k h for every grid point and k = 0..n_max
  const std::size_t width = static_cast<std::size_t>(n_max + 1);
  const auto samples = map_indices<BoundedValue>(
      xs.size() * width,
      [&](std::size_t j) {
        const double x = xs[j / width];
        const double at = x + static_cast<double>(j % width) * h;
        return guarded(at, [&] { return f(at); });
      },
      exec);

  VerificationReport report;
  report.check_name = std::move(name);
  for (int n = 0; n <= n_max; ++n) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      // (-1)^n Delta^n f(x) = sum_k (-1)^k C(n,k) f(x + k h)
      double value = 0.0;
      double bound = 0.0;
      double magnitude = 0.0;
      for (int k = 0; k <= n; ++k) {
        const BoundedValue& s = samples[i * width + static_cast<std::size_t>(k)];
        const double c = binomial(n, k);
        value += (k % 2 == 0 ? c : -c) * s.value;
        bound += c * s.error_bound;
        magnitude += c * std::fabs(s.value);
      }
      bound += (n + 1) * kEps * magnitude;
      PointRecord r;
      r.x = xs[i];
      r.n = n;
      r.value = value;
      r.bound = bound;
      annotate(r, value, bound);
      report.details.push_back(r);
    }
  }
  summarize(report);
  return report;
}

VerificationReport check_alternating_differences(std::span<const double> xs, int n_max, double h,
                                                 const EvalConfig& cfg, Execution exec) {
  validate(cfg);
  const BoundedFunction theta = [&cfg](double x) {
    const RemainderEval r = sigma(x, cfg);
    return BoundedValue{r.theta, r.accuracy + kEps};
  };
  return check_alternating_differences(xs, n_max, h, theta, "alternating_differences", exec);
}

VerificationReport cross_check_vs_oracle(std::span<const double> xs, const EvalConfig& cfg, Execution exec) {
  require_strictly_increasing(xs);
  const auto evals = evaluate_sigma_grid(xs, cfg, exec);
  VerificationReport report;
  report.check_name = "oracle_cross_check";
  report.details.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const OracleValue ref = sigma_ref(xs[i]);
    PointRecord& r = report.details[i];
    r.x = xs[i];
    r.value = std::fabs(evals[i].sigma - ref.value);
    r.bound = cfg.tol + ref.bound;
    r.margin = r.bound - r.value;
    r.status = *r.margin > 0.0 ? CheckStatus::pass : CheckStatus::fail;
  }
  summarize(report);
  return report;
}

VerificationReport check_envelope(const GridSpec& grid, const EvalConfig& cfg, Execution exec) {
  const auto xs = abscissae(grid);
  return check_envelope(std::span<const double>(xs), cfg, exec);
}

VerificationReport check_sigma_increasing(const GridSpec& grid, const EvalConfig& cfg, Execution exec) {
  const auto xs = abscissae(grid);
  return check_sigma_increasing(std::span<const double>(xs), cfg, exec);
}

VerificationReport check_lambda_decreasing(const GridSpec& grid, const EvalConfig& cfg, Execution exec) {
  const auto xs = abscissae(grid);
  return check_lambda_decreasing(std::span<const double>(xs), cfg, exec);
}

VerificationReport check_complete_monotonicity(const GridSpec& grid, int n_max, const EvalConfig& cfg,
                                               Execution exec) {
  const auto xs = abscissae(grid);
  return check_complete_monotonicity(std::span<const double>(xs), n_max, cfg, exec);
}

VerificationReport check_alternating_differences(const GridSpec& grid, int n_max, double h, const EvalConfig& cfg,
                                                 Execution exec) {
  const auto xs = abscissae(grid);
  return check_alternating_differences(std::span<const double>(xs), n_max, h, cfg, exec);
}

VerificationReport cross_check_vs_oracle(const GridSpec& grid, const EvalConfig& cfg, Execution exec) {
  const auto xs = abscissae(grid);
  return cross_check_vs_oracle(std::span<const double>(xs), cfg, exec);
}

}  // namespace stirling
