#pragma once

// Numerical certification of the monotonicity properties of the Stirling
// remainder over finite grids.
//
// A strict inequality can only be witnessed up to the accuracy attached to
// each value, so every point ends up in one of three states:
//   pass          the inequality holds with room to spare (margin > 0)
//   fail          the opposite inequality holds beyond the error bars
//   inconclusive  the error bars swallow the difference

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stirling/grid.hpp"
#include "stirling/kernels.hpp"
#include "stirling/remainder.hpp"

namespace stirling {

enum class CheckStatus { pass, fail, inconclusive };

std::string_view to_string(CheckStatus s);

struct PointRecord {
  double x = 0.0;
  std::optional<int> n;  // derivative / difference order, where it applies
  double value = 0.0;
  double bound = 0.0;
  // Margin and status of the test anchored at this record. For the
  // monotonicity checks that is the pair (x_i, x_{i+1}), so the last record
  // has neither.
  std::optional<double> margin;
  std::optional<CheckStatus> status;
};

struct VerificationReport {
  std::string check_name;
  bool passed = false;
  CheckStatus status = CheckStatus::pass;
  double worst_margin = 0.0;
  double worst_location = 0.0;
  std::vector<PointRecord> details;
};

/// Rebuilds passed/status/worst_* from the per-record margins and statuses.
void summarize(VerificationReport& report);

/// 0 < sigma(x) < 1; margin = min(sigma - acc, 1 - sigma - acc).
VerificationReport check_envelope(std::span<const double> xs, const EvalConfig& cfg,
                                  Execution exec = Execution::parallel);

/// sigma(x_{i+1}) - sigma(x_i) - (acc_i + acc_{i+1}) > 0 for consecutive points.
VerificationReport check_sigma_increasing(std::span<const double> xs, const EvalConfig& cfg,
                                          Execution exec = Execution::parallel);

/// lambda(x_i) - lambda(x_{i+1}) - (acc_i + acc_{i+1}) > 0 for consecutive points.
VerificationReport check_lambda_decreasing(std::span<const double> xs, const EvalConfig& cfg,
                                           Execution exec = Execution::parallel);

/// (-1)^n theta^(n)(x) - acc > 0 for n = 0..n_max at every x. Records are
/// ordered by n, then by x.
VerificationReport check_complete_monotonicity(std::span<const double> xs, int n_max, const EvalConfig& cfg,
                                               Execution exec = Execution::parallel);

/// Derivative-free probe: (-1)^n Delta_h^n f(x) > 0 for n = 0..n_max with
/// forward differences, each carrying the binomially weighted sum of the
/// point accuracies. f is any bounded evaluator.
inline constexpr int kMaxDifferenceOrder = 6;

using BoundedFunction = std::function<BoundedValue(double)>;

VerificationReport check_alternating_differences(std::span<const double> xs, int n_max, double h,
                                                 const BoundedFunction& f, std::string name,
                                                 Execution exec = Execution::parallel);

/// The same probe applied to theta = 1 - sigma.
VerificationReport check_alternating_differences(std::span<const double> xs, int n_max, double h,
                                                 const EvalConfig& cfg, Execution exec = Execution::parallel);

/// |sigma(x) - sigma_ref(x)| < tol + oracle bound. Records carry
/// value = |difference| and bound = tol + oracle bound.
VerificationReport cross_check_vs_oracle(std::span<const double> xs, const EvalConfig& cfg,
                                         Execution exec = Execution::parallel);

// GridSpec conveniences.
VerificationReport check_envelope(const GridSpec& grid, const EvalConfig& cfg, Execution exec = Execution::parallel);
VerificationReport check_sigma_increasing(const GridSpec& grid, const EvalConfig& cfg,
                                          Execution exec = Execution::parallel);
VerificationReport check_lambda_decreasing(const GridSpec& grid, const EvalConfig& cfg,
                                           Execution exec = Execution::parallel);
VerificationReport check_complete_monotonicity(const GridSpec& grid, int n_max, const EvalConfig& cfg,
                                               Execution exec = Execution::parallel);
VerificationReport check_alternating_differences(const GridSpec& grid, int n_max, double h, const EvalConfig& cfg,
                                                 Execution exec = Execution::parallel);
VerificationReport cross_check_vs_oracle(const GridSpec& grid, const EvalConfig& cfg,
                                         Execution exec = Execution::parallel);

/// sigma over a grid; the unit the benchmark and determinism tests exercise.
std::vector<RemainderEval> evaluate_sigma_grid(std::span<const double> xs, const EvalConfig& cfg, Execution exec);

}  // namespace stirling
