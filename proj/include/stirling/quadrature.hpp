#pragma once

// Quadrature for Laplace-type integrals  int_0^inf g(t) e^{-x t} dt.
//
// Two routes:
//  * Gauss-Laguerre rules for the substituted form int_0^inf f(s) e^{-s} ds,
//    fast and spectrally accurate when f is analytic well away from [0, inf).
//  * A t-domain adaptive Gauss-Kronrod (7/15) integrator on [0, T] with an
//    analytic tail bound past T, for integrands whose singularities crowd the
//    real axis after substitution (small x).

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace stirling {

struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;    // strictly increasing, > 0
  std::vector<double> weights;  // > 0 unless below the double range (see gauss_laguerre)
};

inline constexpr int kMaxLaguerreOrder = 256;

/// Gauss-Laguerre rule for weight e^{-s} on [0, inf).
///
/// Nodes start from the eigenvalues of the Jacobi matrix of the Laguerre
/// recurrence and are polished by Newton on L_n; weights use
/// w_i = x_i / (n^2 L_{n-1}(x_i)^2) evaluated with a rescaled recurrence, which
/// keeps full relative accuracy even for the tiny trailing weights. For orders
/// above ~180 the largest weights fall below the smallest subnormal and are
/// stored as 0.
QuadratureRule gauss_laguerre(int order);

/// Process-wide immutable cache of rules, built once per order on first use.
const QuadratureRule& cached_gauss_laguerre(int order);

/// sum_i w_i f(s_i). Throws EvaluationError naming the node if f is not finite there.
double integrate_laguerre(const std::function<double(double)>& f, const QuadratureRule& rule);

/// Majorant |g(t)| <= coeff * t^power, valid for all t > 0. Used for the tail
/// int_T^inf |g(t)| e^{-xt} dt past the truncation point.
struct Envelope {
  double coeff = 1.0;
  int power = 0;
};

/// Upper bound on coeff * int_T^inf t^power e^{-xt} dt.
double envelope_tail(const Envelope& env, double x, double cutoff);

struct PanelResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels_used = 0;
  double cutoff = 0.0;  // T
};

/// Adaptive evaluation of int_0^inf g(t) e^{-x t} dt.
///
/// T is the first point at which the envelope tail drops to tol/2; [0, T] is
/// split into geometrically growing panels, then the panel with the largest
/// |K15 - G7| is bisected until the summed estimate plus tail is <= tol.
/// Throws AccuracyError (carrying the best value) if max_panels is reached first.
PanelResult integrate_adaptive(const std::function<double(double)>& g, double x, double tol, int max_panels,
                               const Envelope& envelope);

}  // namespace stirling
