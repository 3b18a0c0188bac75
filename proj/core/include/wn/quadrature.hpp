#pragma once

#include <cstddef>
#include <functional>

namespace wn {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;  // running error estimate, not a hard bound
  bool converged = false;
  std::size_t evals = 0;
};

/// Adaptive Gauss-Kronrod (15|7) integration of f over [a, b].
/// Splits the worst panel until the summed error estimate meets
/// abs_tol + rel_tol * |integral| or the panel budget runs out.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_panels = 2000);

}  // namespace wn
