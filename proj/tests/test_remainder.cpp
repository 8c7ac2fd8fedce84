#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reference_values.hpp"
#include "stirling/errors.hpp"
#include "stirling/oracle.hpp"
#include "stirling/remainder.hpp"

using namespace stirling;

TEST(Sigma, Anchors) {
  const EvalConfig cfg;
  const double sigma1 = 12 - 6 * std::log(2 * std::numbers::pi);
  EXPECT_NEAR(sigma(1.0, cfg).sigma, sigma1, 1e-11);
  EXPECT_NEAR(sigma(1.0, cfg).sigma, ref::sigma_1, 1e-11);
  EXPECT_NEAR(sigma(2.0, cfg).sigma, ref::sigma_2, 1e-10);
  EXPECT_NEAR(sigma(0.5, cfg).sigma, ref::sigma_05, 1e-10);
  EXPECT_NEAR(sigma(0.01, cfg).sigma, ref::sigma_001, 1e-10);
  EXPECT_NEAR(sigma(4.0, cfg).sigma, ref::sigma_4, 1e-10);
  EXPECT_NEAR(sigma(1000.0, cfg).sigma, ref::sigma_1000, 1e-10);
}

TEST(Sigma, AccuracyIsHonest) {
  const EvalConfig cfg;
  for (double x : {0.01, 0.5, 1.0, 2.0, 4.0, 1000.0}) {
    const RemainderEval r = sigma(x, cfg);
    EXPECT_LE(r.accuracy, cfg.tol);
    EXPECT_LE(std::abs(r.sigma - sigma_ref(x).value), r.accuracy + sigma_ref(x).bound) << "x = " << x;
  }
}

TEST(Sigma, MethodSelection) {
  EXPECT_EQ(sigma(0.5).method, Method::adaptive);
  EXPECT_EQ(sigma(1.0).method, Method::gauss_laguerre);
  EvalConfig forced;
  forced.method = MethodChoice::adaptive;
  const RemainderEval a = sigma(5.0, forced);
  EXPECT_EQ(a.method, Method::adaptive);
  EXPECT_NEAR(a.sigma, sigma(5.0).sigma, 2e-10);
  EXPECT_EQ(to_string(Method::gauss_laguerre), "gauss_laguerre");
  EXPECT_EQ(to_string(Method::adaptive), "adaptive");
}

TEST(Sigma, OrderingOfAnchors) {
  EXPECT_LT(sigma(0.5).sigma, sigma(1.0).sigma);
  EXPECT_LT(sigma(1.0).sigma, sigma(2.0).sigma);
}

TEST(Sigma, LimitBehaviour) {
  const RemainderEval small = sigma(1e-3);
  EXPECT_GT(small.sigma, 0.0);
  EXPECT_LT(small.sigma, 1.0);
  EXPECT_GT(sigma(1e3).sigma, 0.999);
}

TEST(Sigma, DomainErrors) {
  EXPECT_THROW(sigma(0.0), DomainError);
  EXPECT_THROW(sigma(-1.0), DomainError);
  EXPECT_THROW(sigma(NAN), DomainError);
  EXPECT_THROW(sigma(INFINITY), DomainError);
  EXPECT_THROW(lambda_fn(-2.0), DomainError);
  EXPECT_THROW(ln_gamma_binet(0.0), DomainError);
}

TEST(Sigma, ConfigValidation) {
  EvalConfig cfg;
  cfg.tol = 1e-20;
  EXPECT_THROW(sigma(1.0, cfg), DomainError);
  cfg = {};
  cfg.tol = NAN;
  EXPECT_THROW(validate(cfg), DomainError);
  cfg = {};
  cfg.gl_order = 0;
  EXPECT_THROW(validate(cfg), DomainError);
  cfg = {};
  cfg.max_panels = 0;
  EXPECT_THROW(validate(cfg), DomainError);
  EXPECT_NO_THROW(validate(EvalConfig{}));
}

TEST(Sigma, AccuracyFailureCarriesBestValue) {
  EvalConfig cfg;
  cfg.tol = kMinTolerance;
  cfg.max_panels = 10;
  cfg.method = MethodChoice::adaptive;
  try {
    sigma(0.3, cfg);
    FAIL() << "expected AccuracyError";
  } catch (const AccuracyError& e) {
    EXPECT_GT(e.achieved_bound(), kMinTolerance);
    EXPECT_LE(std::abs(e.best_value() - sigma_ref(0.3).value), e.achieved_bound());
  }
}

TEST(Lambda, Anchors) {
  EXPECT_NEAR(lambda_fn(1.0), std::exp(1.0) / std::sqrt(2 * std::numbers::pi) - 1, 1e-11);
  EXPECT_NEAR(lambda_fn(1.0), ref::lambda_1, 1e-11);
  EXPECT_NEAR(lambda_fn(0.5), ref::lambda_05, 1e-10);
  const double big = lambda_fn(1e4);
  EXPECT_GT(big, 0.0);
  EXPECT_LT(big, 1.01 / 12e4);
  EXPECT_NEAR(big, ref::lambda_1e4, 1e-14);
}

TEST(ThetaDeriv, Anchors) {
  const EvalConfig cfg;
  EXPECT_NEAR(theta_deriv(0, 1.0, cfg).value, 1 - ref::sigma_1, 1e-10);
  const double xs[2] = {0.5, 2.0};
  for (int n = 0; n <= 4; ++n)
    for (int i = 0; i < 2; ++i) {
      const double want = ref::theta_deriv[n][i];
      const ScalarEval d = theta_deriv(n, xs[i], cfg);
      EXPECT_LE(d.accuracy, cfg.tol * std::abs(want) * 1.0001) << "n = " << n;
      EXPECT_NEAR(d.value, want, d.accuracy + 1e-15) << "n = " << n << ", x = " << xs[i];
    }
}

TEST(ThetaDeriv, FirstDerivativeVsCentralDifference) {
  const double h = 1e-4;
  const double fd = (theta_deriv(0, 2 + h).value - theta_deriv(0, 2 - h).value) / (2 * h);
  EXPECT_NEAR(theta_deriv(1, 2.0).value, fd, 1e-7);
}

TEST(ThetaDeriv, SignsUpToEight) {
  for (double x : {0.5, 1.0, 5.0, 20.0})
    for (int n = 0; n <= 8; ++n) {
      const ScalarEval d = theta_deriv(n, x);
      const double signed_value = (n % 2 == 0 ? 1 : -1) * d.value;
      EXPECT_GT(signed_value - d.accuracy, 0.0) << "n = " << n << ", x = " << x;
    }
}

TEST(ThetaDeriv, OrderLimits) {
  EXPECT_THROW(theta_deriv(-1, 1.0), DomainError);
  EXPECT_THROW(theta_deriv(9, 1.0), DomainError);
  EvalConfig cfg;
  cfg.max_deriv_order = 3;
  EXPECT_THROW(theta_deriv(4, 1.0, cfg), DomainError);
  EXPECT_THROW(theta_deriv(1, 0.0), DomainError);
}

TEST(ThetaDeriv, AccuracyFailureCarriesBestValue) {
  EvalConfig cfg;
  cfg.tol = kMinTolerance;
  cfg.max_panels = 3;
  try {
    theta_deriv(2, 0.05, cfg);
    FAIL() << "expected AccuracyError";
  } catch (const AccuracyError& e) {
    EXPECT_GT(e.achieved_bound(), 0.0);
    EXPECT_GT(e.best_value(), 0.0);
  }
}

TEST(LnGamma, Anchors) {
  const ScalarEval one = ln_gamma_binet(1.0);
  EXPECT_NEAR(one.value, 0.0, 1e-12);
  EXPECT_NEAR(ln_gamma_binet(4.0).value, ref::ln_24, 1e-10);
  EXPECT_NEAR(ln_gamma_binet(0.5).value, std::log(std::sqrt(std::numbers::pi) / 2), 1e-10);
  EXPECT_NEAR(ln_gamma_binet(0.5).value, ref::lngamma_15, 1e-10);
}

TEST(Identities, RandomPoints) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lx(-2.0, 3.0);
  const EvalConfig cfg;
  for (int i = 0; i < 40; ++i) {
    const double x = std::pow(10.0, lx(rng));
    const RemainderEval r = sigma(x, cfg);
    EXPECT_NEAR(r.sigma, 12 * x * r.h, 4 * std::numeric_limits<double>::epsilon() * r.sigma) << x;
    EXPECT_NEAR(r.lambda, std::expm1(r.h), 4 * std::numeric_limits<double>::epsilon() * r.lambda) << x;
    EXPECT_EQ(r.theta, 1 - r.sigma) << x;
    EXPECT_NEAR(1 - r.sigma, theta_deriv(0, x, cfg).value, 2 * cfg.tol) << x;
    EXPECT_EQ(r.x, x);
  }
}

TEST(Identities, DerivativeConsistency) {
  for (double x : {1.0, 2.0, 10.0})
    for (int n = 1; n <= 4; ++n) {
      const double h = 1e-4 * x;
      const double fd = (theta_deriv(n - 1, x + h).value - theta_deriv(n - 1, x - h).value) / (2 * h);
      const double d = theta_deriv(n, x).value;
      EXPECT_LE(std::abs(d - fd), 1e-5 * std::abs(d)) << "n = " << n << ", x = " << x;
    }
}

TEST(Determinism, RepeatedCallsAreBitwiseEqual) {
  for (double x : {0.02, 0.7, 3.0, 800.0}) {
    const RemainderEval a = sigma(x);
    const RemainderEval b = sigma(x);
    EXPECT_EQ(a.sigma, b.sigma);
    EXPECT_EQ(a.accuracy, b.accuracy);
  }
}
