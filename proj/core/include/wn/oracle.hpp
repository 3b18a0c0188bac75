#pragma once

#include "wn/kernels.hpp"
#include "wn/params.hpp"

namespace wn {

enum class OracleMethod { supnorm_oracle, l1_oracle };

inline const char* method_name(OracleMethod m) {
  return m == OracleMethod::supnorm_oracle ? "supnorm_oracle" : "l1_oracle";
}

/// Ground-truth deviation constant in normalized form: value = n^r E_n with a
/// certified enclosure half-width and the log-space absolute value
/// ln E_n = ln(value) - r ln(n).
struct NormalizedDeviation {
  double value;
  double half_width;
  double log_absolute;
  OracleMethod method;
};

struct MaxResult {
  double t_star;
  double value;
  double certificate;
};

struct L1Result {
  double value;
  double certificate;
};

/// Certified global maximum of |g_m| over one period: scan on a uniform grid
/// driven by certified modulus-of-continuity bounds, safeguarded Newton at the
/// top candidates, then branch-and-bound elimination of everything else.
/// Deterministic; ties resolved toward the smallest t.
MaxResult global_max_abs(const TailKernel& kernel, double rel_tol);

/// Certified integral of |g_m| over one period: sign changes located on the
/// scan grid and bisected, each constant-sign piece integrated through the
/// exact termwise antiderivative, with dip-mass and truncation certificates.
L1Result l1_norm(const TailKernel& kernel, double rel_tol);

/// Exact deviation constant by dual-norm reduction:
///   p = L1  -> (1/pi) sup_t |g(t)|      (requires r >= 1.05)
///   p = Linf-> (1/pi) Int |g(t)| dt     (requires r >= 1; the integral
///                                        oracle extends below 1.05 because
///                                        its certificates never need an
///                                        absolutely summable tail)
/// rel_tol must lie in [1e-12, 1e-2]; the returned half_width satisfies
/// half_width <= rel_tol * value or an accuracy_error is thrown with the best
/// enclosure obtained.
NormalizedDeviation exact_deviation(const ClassParams& params, double rel_tol = 1e-9);

}  // namespace wn
