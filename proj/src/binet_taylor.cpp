#include "stirling/kernels.hpp"

#include <array>
#include <stdexcept>

namespace stirling {
namespace {

// b_n = B_n / n!, from t/(e^t - 1) = sum b_n t^n:
//   b_0 = 1,  sum_{k=0}^{n} b_k / (n+1-k)! = 0  for n >= 1.
// Terms in the recurrence are at most ~pi times the result, so long double
// carries it comfortably to n = 44.
constexpr int kMaxIndex = 2 * kBinetTaylorTerms + 4;

std::array<double, kBinetTaylorTerms + 2> build_coefficients() {
  std::array<long double, kMaxIndex + 2> inv_fact{};
  inv_fact[0] = 1.0L;
  for (int i = 1; i < kMaxIndex + 2; ++i) inv_fact[i] = inv_fact[i - 1] / static_cast<long double>(i);

  std::array<long double, kMaxIndex + 1> b{};
  b[0] = 1.0L;
  for (int n = 1; n <= kMaxIndex; ++n) {
    if (n >= 3 && n % 2 == 1) {
      b[n] = 0.0L;
      continue;
    }
    long double acc = 0.0L;
    for (int k = 0; k < n; ++k) acc += b[k] * inv_fact[n + 1 - k];
    b[n] = -acc;
  }

  std::array<double, kBinetTaylorTerms + 2> c{};
  for (int k = 0; k < kBinetTaylorTerms + 2; ++k) c[k] = static_cast<double>(b[2 * k + 2]);
  return c;
}

const std::array<double, kBinetTaylorTerms + 2>& coefficients() {
  static const auto table = build_coefficients();
  return table;
}

}  // namespace

double binet_taylor_coefficient(int k) {
  if (k < 0 || k >= kBinetTaylorTerms + 2) throw std::out_of_range("binet_taylor_coefficient: k out of range");
  return coefficients()[static_cast<std::size_t>(k)];
}

}  // namespace stirling
