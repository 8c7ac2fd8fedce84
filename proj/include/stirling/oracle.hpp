#pragma once

// Reference ln Gamma built on Spouge's approximation, fully independent of the
// Binet kernels and the quadrature code (separate library, no shared code).
//
//   Gamma(w+1) = (w+a)^{w+1/2} e^{-(w+a)} [ c_0 + sum_{k=1}^{a-1} c_k/(w+k) + eps_a(w) ]
//   c_0 = sqrt(2 pi),  c_k = (-1)^{k-1}/(k-1)! (a-k)^{k-1/2} e^{a-k}
//
// with relative error |eps_a| <= a^{-1/2} (2 pi)^{-(a+1/2)} for Re w >= 0.
// Coefficients come from the closed formula on first use, and the whole
// evaluation runs in binary128 so that the cancellation in
// 12x (ln Gamma(x+1) - Stirling) costs nothing visible in double.

namespace stirling {

struct OracleValue {
  double value = 0.0;
  double bound = 0.0;  // a priori method bound (absolute)
};

inline constexpr int kSpougeParameter = 30;

/// Relative error bound of the Spouge sum for the chosen parameter.
double spouge_error_bound();

/// ln Gamma(z), z > 0. For z < 1 shifts with ln Gamma(z) = ln Gamma(z+1) - ln z.
OracleValue ln_gamma_ref(double z);

/// sigma(x) = 12 x (ln Gamma(x+1) - ln sqrt(2 pi x) - x ln x + x).
OracleValue sigma_ref(double x);

/// lambda(x) = expm1(sigma(x) / (12 x)).
OracleValue lambda_ref(double x);

}  // namespace stirling
