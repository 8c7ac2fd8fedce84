#include "stirling/grid.hpp"

#include <cmath>
#include <string>

#include "stirling/errors.hpp"
#include "real_text.hpp"

namespace stirling {

std::vector<double> abscissae(const GridSpec& grid) {
  if (!std::isfinite(grid.lo) || !std::isfinite(grid.hi) || !(grid.lo > 0.0))
    throw DomainError("grid: lo must be finite and > 0");
  if (!(grid.hi > grid.lo)) throw DomainError("grid: hi must exceed lo");
  if (grid.count < 2) throw DomainError("grid: count must be >= 2, got " + std::to_string(grid.count));

  const auto n = static_cast<std::size_t>(grid.count);
  std::vector<double> xs(n);
  const double last = static_cast<double>(n - 1);
  if (grid.scale == GridScale::log) {
    const double a = std::log(grid.lo);
    const double b = std::log(grid.hi);
    for (std::size_t i = 0; i < n; ++i) xs[i] = std::exp(a + (b - a) * (static_cast<double>(i) / last));
  } else {
    for (std::size_t i = 0; i < n; ++i) xs[i] = grid.lo + (grid.hi - grid.lo) * (static_cast<double>(i) / last);
  }
  xs.front() = grid.lo;
  xs.back() = grid.hi;
  require_strictly_increasing(xs);
  return xs;
}

void require_strictly_increasing(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("grid: no abscissae");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !(xs[i] > 0.0))
      throw DomainError("grid: abscissae must be finite and > 0, got " + detail::real_text(xs[i]));
    if (i > 0 && !(xs[i] > xs[i - 1]))
      throw DomainError("grid: abscissae not strictly increasing at index " + std::to_string(i) +
                        " (spacing below double resolution?)");
  }
}

}  // namespace stirling
