#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "wn/errors.hpp"

namespace wn {

/// Metric the deviation constant is measured in (the space the
/// convolving function is drawn from).
enum class Metric { L1, Linf };

inline const char* metric_name(Metric p) { return p == Metric::L1 ? "1" : "inf"; }

/// Oracle operations reject smoothness exponents below this; the
/// integral-comparison truncation bound degenerates as r -> 1.
inline constexpr double kRMinOracle = 1.05;

/// Hard cap on kernel truncation indices.
inline constexpr std::int64_t kTruncationCap = std::int64_t{1} << 31;

/// Parameter triple (r, beta, n) plus metric selector.
///
/// The kernel sum_{k} k^{-r} cos(kt - beta*pi/2) depends on beta only
/// through beta mod 4, so the reduced value is stored alongside the
/// original (kept for reporting).
struct ClassParams {
  double r;
  double beta;       // as given
  double beta_mod4;  // reduced into [0, 4)
  std::int64_t n;
  Metric p;

  ClassParams(double r_, double beta_, std::int64_t n_, Metric p_ = Metric::L1)
      : r(r_), beta(beta_), beta_mod4(reduce_beta(beta_)), n(n_), p(p_) {
    if (!std::isfinite(r_) || !std::isfinite(beta_)) {
      throw domain_error("ClassParams: r and beta must be finite");
    }
    if (n_ < 1) {
      throw domain_error("ClassParams: n must be >= 1 (got " + std::to_string(n_) + ")");
    }
  }

  /// Phase offset beta*pi/2 in radians, computed from the reduced beta.
  double phase() const { return beta_mod4 * std::numbers::pi / 2.0; }

  static double reduce_beta(double b) {
    double m = std::fmod(b, 4.0);
    if (m < 0.0) m += 4.0;
    return m;
  }
};

inline void require_oracle_r(double r) {
  if (!(r >= kRMinOracle)) {
    throw domain_error("r must be >= " + std::to_string(kRMinOracle) +
                       " for kernel/oracle operations (got " + std::to_string(r) + ")");
  }
}

inline void require_estimator_r(double r) {
  if (!(r > 2.0)) {
    throw domain_error("r must be > 2 for this estimator (got " + std::to_string(r) + ")");
  }
}

}  // namespace wn
