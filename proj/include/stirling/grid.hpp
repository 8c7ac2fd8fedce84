#pragma once

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

namespace stirling {

enum class GridScale { log, linear };

struct GridSpec {
  double lo = 1e-2;
  double hi = 1e2;
  int count = 50;
  GridScale scale = GridScale::log;
};

/// Abscissae of the grid, endpoints exact. Throws DomainError when lo <= 0,
/// hi <= lo, count < 2, or adjacent points collapse in double precision.
std::vector<double> abscissae(const GridSpec& grid);

/// Throws DomainError unless xs is non-empty, positive, finite and strictly increasing.
void require_strictly_increasing(std::span<const double> xs);

enum class Execution { serial, parallel };

/// Evaluates f(i) for i in [0, count) into a vector in index order. The
/// parallel path is an OpenMP loop when built with STIRLING_HAVE_OPENMP and
/// gives the same results as the serial one: every slot is computed by the
/// same deterministic f. The first exception in index order is rethrown.
template <typename R, typename F>
std::vector<R> map_indices(std::size_t count, F&& f, Execution exec) {
  std::vector<R> out(count);
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
  if (exec == Execution::parallel) {
#ifdef STIRLING_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace stirling
