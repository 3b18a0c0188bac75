#pragma once

#include <cstdint>

#include "wn/errors.hpp"

namespace wn {

/// Arguments of the Hurwitz zeta function zeta(s, a) = sum_{k>=0} (a+k)^{-s}.
/// Real arguments only; requires s > 1 and a > 0.
struct ZetaArgs {
  double s;
  double a;
};

/// zeta(s, a) by direct summation plus Euler-Maclaurin tail correction.
/// Relative error <= 1e-12 on s in [1.05, 400], a in [1, 1e6].
double hurwitz_zeta(const ZetaArgs& args);

/// S(r, n) = n^r * zeta(r, n) = sum_{k>=n} (n/k)^r, computed entirely in
/// scaled form (no n^r intermediate). Satisfies the integral-comparison
/// bracket n/(r-1) < S < 1 + n/(r-1) for r > 1.
double hurwitz_zeta_scaled(double r, std::int64_t n);

/// zeta(s, a) via the Mellin-type integral
///   (1/Gamma(s)) Int_0^inf t^{s-1} e^{-at} / (1 - e^{-t}) dt
/// evaluated by adaptive quadrature; agrees with hurwitz_zeta to
/// max(tol, 1e-9) relative.
double hurwitz_zeta_integral(const ZetaArgs& args, double tol);

/// Scaled integral form a^s * zeta(s, a) for integer shift a = n, i.e.
///   (1/Gamma(s)) Int_0^inf u^{s-1} e^{-u} / (1 - e^{-u/n}) du.
/// Shared core of hurwitz_zeta_integral; exposed for overflow-safe use.
double hurwitz_zeta_integral_scaled(double s, std::int64_t n, double tol);

/// Complete elliptic integral of the first kind,
///   K(q) = Int_0^{pi/2} dt / sqrt(1 - q^2 sin^2 t),
/// via the arithmetic-geometric mean. Requires 0 <= q < 1.
double elliptic_k(double q);

/// ln Gamma(x) for x > 0 via the Stirling series with argument-raising
/// recursion for small x. Relative error <= 1e-13.
double log_gamma(double x);

}  // namespace wn
