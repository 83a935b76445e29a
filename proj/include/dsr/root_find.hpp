#ifndef DSR_ROOT_FIND_HPP
#define DSR_ROOT_FIND_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace dsr {

/// Bracketing failed: no sign change could be established for the requested
/// branch. Carries the last bracket tried in the message.
struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The iteration budget was exhausted before the step converged. Carries the
/// last bracket in the message.
struct NoConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RootOptions {
  int max_iterations = 100;
};

/// Safeguarded Newton on a bracket [lo, hi] with f(lo) and f(hi) of opposite
/// sign. The Newton step is accepted only while it stays inside the current
/// bracket and shrinks fast enough; otherwise the step is a bisection. The
/// functor returns the pair (f, df).
template <class F>
double safeguarded_newton(F&& fdf, double lo, double hi,
                          const RootOptions& opt = {}) {
  auto [flo, dflo] = fdf(lo);
  auto [fhi, dfhi] = fdf(hi);
  (void)dflo;
  (void)dfhi;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw BracketError("safeguarded_newton: no sign change on [" +
                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  // Orient so that f(xl) < 0 < f(xh).
  double xl = lo, xh = hi;
  if (flo > 0.0) std::swap(xl, xh);

  double rts = 0.5 * (lo + hi);
  double dxold = std::abs(hi - lo);
  double dx = dxold;
  auto [f, df] = fdf(rts);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < opt.max_iterations; ++it) {
    const bool newton_escapes =
        ((rts - xh) * df - f) * ((rts - xl) * df - f) > 0.0;
    const bool newton_slow = std::abs(2.0 * f) > std::abs(dxold * df);
    if (newton_escapes || newton_slow || df == 0.0) {
      dxold = dx;
      dx = 0.5 * (xh - xl);
      rts = xl + dx;
      if (xl == rts) return rts;
    } else {
      dxold = dx;
      dx = f / df;
      const double tmp = rts;
      rts -= dx;
      if (tmp == rts) return rts;
    }
    if (std::abs(dx) < 4.0 * eps * std::max(std::abs(rts), 1e-300)) return rts;
    std::tie(f, df) = fdf(rts);
    if (f == 0.0) return rts;
    if (f < 0.0) {
      xl = rts;
    } else {
      xh = rts;
    }
  }
  throw NoConvergenceError(
      "safeguarded_newton: not converged after " +
      std::to_string(opt.max_iterations) + " iterations, last bracket [" +
      std::to_string(std::min(xl, xh)) + ", " +
      std::to_string(std::max(xl, xh)) + "]");
}

}  // namespace dsr

#endif  // DSR_ROOT_FIND_HPP
