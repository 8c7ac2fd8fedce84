#include <gtest/gtest.h>

#include <cmath>

#include "stirling/errors.hpp"
#include "stirling/grid.hpp"
#include "stirling/verify.hpp"

using namespace stirling;

namespace {

// A report's verdict must be recomputable from its records alone.
void expect_consistent(const VerificationReport& r) {
  VerificationReport copy = r;
  copy.passed = !r.passed;
  copy.worst_margin = 12345;
  summarize(copy);
  EXPECT_EQ(copy.passed, r.passed);
  EXPECT_EQ(copy.status, r.status);
  EXPECT_EQ(copy.worst_margin, r.worst_margin);
  EXPECT_EQ(r.passed, r.worst_margin > 0);
  bool on_grid = false;
  for (const auto& p : r.details) on_grid = on_grid || p.x == r.worst_location;
  EXPECT_TRUE(on_grid);
}

bool same(const VerificationReport& a, const VerificationReport& b) {
  if (a.details.size() != b.details.size() || a.passed != b.passed || a.worst_margin != b.worst_margin ||
      a.worst_location != b.worst_location)
    return false;
  for (std::size_t i = 0; i < a.details.size(); ++i) {
    const auto &p = a.details[i], &q = b.details[i];
    if (p.x != q.x || p.n != q.n || p.value != q.value || p.bound != q.bound || p.margin != q.margin ||
        p.status != q.status)
      return false;
  }
  return true;
}

}  // namespace

TEST(Grid, Abscissae) {
  const auto xs = abscissae({1e-2, 1e2, 50, GridScale::log});
  ASSERT_EQ(xs.size(), 50u);
  EXPECT_EQ(xs.front(), 1e-2);
  EXPECT_EQ(xs.back(), 1e2);
  for (std::size_t i = 1; i < xs.size(); ++i) EXPECT_GT(xs[i], xs[i - 1]);
  const auto lin = abscissae({1, 3, 3, GridScale::linear});
  EXPECT_EQ(lin, (std::vector<double>{1, 2, 3}));
}

TEST(Grid, InvalidSpecs) {
  EXPECT_THROW(abscissae({1, 1, 5, GridScale::log}), DomainError);
  EXPECT_THROW(abscissae({2, 1, 5, GridScale::log}), DomainError);
  EXPECT_THROW(abscissae({0, 1, 5, GridScale::linear}), DomainError);
  EXPECT_THROW(abscissae({1, 2, 1, GridScale::log}), DomainError);
  EXPECT_THROW(abscissae({1, std::nextafter(1.0, 2.0), 5, GridScale::linear}), DomainError);
  const std::vector<double> bad{1, 3, 2};
  EXPECT_THROW(require_strictly_increasing(bad), DomainError);
}

TEST(Grid, MapIndicesRethrowsFirstError) {
  try {
    map_indices<int>(
        10,
        [](std::size_t i) -> int {
          if (i == 3 || i == 7) throw std::runtime_error("bad " + std::to_string(i));
          return static_cast<int>(i);
        },
        Execution::parallel);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "bad 3");
  }
}

TEST(Envelope, DefaultGrid) {
  const auto r = check_envelope(GridSpec{}, EvalConfig{});
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.status, CheckStatus::pass);
  EXPECT_EQ(r.details.size(), 50u);
  expect_consistent(r);
}

TEST(SigmaIncreasing, SmallGrid) {
  const std::vector<double> xs{0.5, 1, 2};
  const auto r = check_sigma_increasing(xs, EvalConfig{});
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.details[0].value, 0.9205, 1e-4);
  EXPECT_NEAR(r.details[1].value, 0.97274, 1e-5);
  EXPECT_NEAR(r.details[2].value, 0.99217, 1e-5);
  EXPECT_FALSE(r.details[2].margin.has_value());
  expect_consistent(r);
}

TEST(SigmaIncreasing, UnresolvableSpacingIsInconclusive) {
  const auto r = check_sigma_increasing(GridSpec{1, 1 + 1e-15, 2, GridScale::log}, EvalConfig{});
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.status, CheckStatus::inconclusive);
  expect_consistent(r);
}

TEST(SigmaIncreasing, DefaultGridAgreesWithLambda) {
  const auto s = check_sigma_increasing(GridSpec{}, EvalConfig{});
  const auto l = check_lambda_decreasing(GridSpec{}, EvalConfig{});
  EXPECT_TRUE(s.passed);
  EXPECT_TRUE(l.passed);
  expect_consistent(s);
  expect_consistent(l);
}

TEST(LambdaDecreasing, Examples) {
  const std::vector<double> two{0.5, 1};
  const auto r = check_lambda_decreasing(two, EvalConfig{});
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.details[0].value, 0.16582, 1e-5);
  EXPECT_NEAR(r.details[1].value, 0.08444, 1e-5);

  const std::vector<double> decades{1, 10, 100};
  const auto d = check_lambda_decreasing(decades, EvalConfig{});
  EXPECT_TRUE(d.passed);
  EXPECT_GT(*d.details[0].margin, *d.details[1].margin);
  EXPECT_NEAR(*d.details[1].margin, 1.0 / 120 - 1.0 / 1200, 2e-4);

  EXPECT_THROW(check_lambda_decreasing(GridSpec{2, 1, 5, GridScale::log}, EvalConfig{}), DomainError);
}

TEST(CompleteMonotonicity, Examples) {
  const auto r = check_complete_monotonicity(GridSpec{0.5, 50, 20, GridScale::log}, 8, EvalConfig{});
  EXPECT_TRUE(r.passed);
  ASSERT_EQ(r.details.size(), 9u * 20u);
  EXPECT_EQ(*r.details[0].n, 0);
  EXPECT_EQ(*r.details[20].n, 1);
  EXPECT_EQ(r.details[20].x, 0.5);
  expect_consistent(r);

  const std::vector<double> one{1.0};
  const auto z = check_complete_monotonicity(one, 0, EvalConfig{});
  EXPECT_NEAR(*z.details[0].margin, 0.0272624, 1e-6);

  EXPECT_THROW(check_complete_monotonicity(one, 9, EvalConfig{}), DomainError);
  EXPECT_THROW(check_complete_monotonicity(one, -1, EvalConfig{}), DomainError);
}

TEST(CompleteMonotonicity, ConsistentWithSigmaIncreasing) {
  const GridSpec g{0.05, 500, 15, GridScale::log};
  const auto cm = check_complete_monotonicity(g, 1, EvalConfig{});
  const auto inc = check_sigma_increasing(g, EvalConfig{});
  bool first_derivative_ok = true;
  for (const auto& p : cm.details)
    if (*p.n == 1) first_derivative_ok = first_derivative_ok && *p.status == CheckStatus::pass;
  EXPECT_EQ(first_derivative_ok, inc.passed);
}

TEST(AlternatingDifferences, ExponentialSelfTest) {
  const std::vector<double> xs{0.5, 1, 2, 4};
  const BoundedFunction f = [](double x) {
    return BoundedValue{std::exp(-x), 2 * std::numeric_limits<double>::epsilon() * std::exp(-x)};
  };
  const auto r = check_alternating_differences(xs, 6, 0.3, f, "exp");
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.check_name, "exp");
  const double h = 0.3;
  for (const auto& p : r.details)
    if (*p.n == 1) {
      EXPECT_NEAR(p.value, std::exp(-p.x) * (1 - std::exp(-h)), 1e-15);
    }
  expect_consistent(r);
}

TEST(AlternatingDifferences, ThetaSecondDifference) {
  const std::vector<double> xs{1, 2, 5};
  const auto r = check_alternating_differences(xs, 2, 0.1, EvalConfig{});
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.status, CheckStatus::pass);
}

TEST(AlternatingDifferences, TinyStepIsInconclusiveNotFail) {
  const std::vector<double> xs{1, 2};
  const auto r = check_alternating_differences(xs, 2, 1e-6, EvalConfig{});
  EXPECT_EQ(r.status, CheckStatus::inconclusive);
  for (const auto& p : r.details) EXPECT_NE(*p.status, CheckStatus::fail);
}

TEST(AlternatingDifferences, RejectsBadInput) {
  const std::vector<double> xs{1, 2};
  EXPECT_THROW(check_alternating_differences(xs, 7, 0.1, EvalConfig{}), DomainError);
  EXPECT_THROW(check_alternating_differences(xs, 2, 0.0, EvalConfig{}), DomainError);
  EXPECT_THROW(check_alternating_differences(xs, 2, -0.1, EvalConfig{}), DomainError);
}

TEST(AlternatingDifferences, ReportsGenuineFailure) {
  const std::vector<double> xs{1, 2};
  const BoundedFunction rising = [](double x) { return BoundedValue{x, 1e-15}; };
  const auto r = check_alternating_differences(xs, 1, 0.5, rising, "rising");
  EXPECT_EQ(r.status, CheckStatus::fail);
  EXPECT_FALSE(r.passed);
}

TEST(Oracle, CrossCheck) {
  const auto r = cross_check_vs_oracle(GridSpec{1e-2, 1e3, 50, GridScale::log}, EvalConfig{});
  EXPECT_TRUE(r.passed);
  for (const auto& p : r.details) EXPECT_LE(p.value, 2e-10);
  expect_consistent(r);
}

TEST(Determinism, ParallelMatchesSerialBitwise) {
  const auto xs = abscissae({1e-2, 1e3, 40, GridScale::log});
  const EvalConfig cfg;
  const auto a = evaluate_sigma_grid(xs, cfg, Execution::serial);
  const auto b = evaluate_sigma_grid(xs, cfg, Execution::parallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x, xs[i]);
    EXPECT_EQ(a[i].sigma, b[i].sigma);
    EXPECT_EQ(a[i].accuracy, b[i].accuracy);
    EXPECT_EQ(a[i].method, b[i].method);
  }
  EXPECT_TRUE(same(check_complete_monotonicity(xs, 4, cfg, Execution::serial),
                   check_complete_monotonicity(xs, 4, cfg, Execution::parallel)));
  EXPECT_TRUE(same(check_envelope(xs, cfg, Execution::serial), check_envelope(xs, cfg, Execution::parallel)));
}
