#pragma once

#include <cstdint>
#include <optional>

#include "wn/params.hpp"

namespace wn {

/// Asymptotic regime of the remainder scale delta_{r,n}, split by the
/// relation between r and n. Boundaries r = n+1 and r = n^2 belong to the
/// lower-named regime; n = 1 always classifies as N1.
enum class Regime { N1, SmallR, MidR, LargeR };

const char* regime_name(Regime regime);

enum class Theorem {
  Thm1,
  Thm1Sharp,
  Thm3,
  ZetaBracket,
  IntegralForm,
  StechkinPinf,
  TelyakovskiiPinf,
  KolmogorovPinf,
};

const char* theorem_name(Theorem theorem);

/// One closed-form estimate of the normalized deviation n^r E_n: principal
/// term, remainder scale delta (the factor multiplying the bounded quantity),
/// regime label where applicable, and bracket endpoints where the estimate
/// carries explicit interval bounds.
struct EstimateBreakdown {
  double principal = 0.0;
  double delta = 0.0;
  std::optional<Regime> regime;
  std::optional<double> bracket_lo;
  std::optional<double> bracket_hi;
  Theorem theorem = Theorem::Thm3;
};

/// n^r E_n = (n/r)(1/pi + theta (1/(r-2) + r/n)) with |theta| < 2/pi.
/// principal = (n/r)/pi, delta = (n/r)(1/(r-2) + r/n), bracket endpoints
/// principal -+ (2/pi) delta. Requires r > 2.
EstimateBreakdown estimate_thm1(const ClassParams& params);

/// Sharper two-parameter bracket
///   n^r E_n = (1/pi)((n/r)(1 + theta4/(r-2)) + theta3),
/// theta3 in [-1,2], theta4 in (-2,1). Requires r > 2.
EstimateBreakdown estimate_thm1_sharp(const ClassParams& params);

/// Regime classification, total on {r > 2, n >= 1}.
Regime classify_regime(double r, std::int64_t n);

/// n^r E_n = 1/(pi(1 - e^{-r/n})) + O(1) delta_{r,n} with
///   delta_{r,1} = e^{-r},
///   delta_{r,n} = n/(r(r-2))       for 2 < r <= n+1,
///               = (r/n^2) e^{-r/n} for n+1 < r <= n^2,
///               = (1+1/n)^{-r}     for r > n^2 (log-space evaluated).
EstimateBreakdown estimate_thm3(const ClassParams& params);

/// Hurwitz-zeta bracket of the normalized deviation:
///   lo = (S(r,n) - R_scaled)/pi, hi = S(r,n)/pi,
/// where R_scaled = n^r R_{r,n} is evaluated through two algebraically equal
/// representations (shift n+1 and shift n) that must agree.
struct ZetaBracket {
  double lo;
  double hi;
  double r_scaled;
};

ZetaBracket zeta_form_bracket(const ClassParams& params);

/// The bracket's upper endpoint in integral form:
/// (1/pi)(1/Gamma(r)) Int_0^inf u^{r-1} e^{-u}/(1 - e^{-u/n}) du,
/// which equals S(r,n)/pi. Requires r > 2.
double integral_form_value(const ClassParams& params, double tol);

/// Historical uniform-metric estimate (8/pi^2) K(e^{-r/n}) with remainder
/// scale 1/r. Requires r >= 1.
EstimateBreakdown estimate_stechkin_pinf(const ClassParams& params);

/// Historical uniform-metric estimate
/// (4/pi^2) ln(n/min{n, r+1}) + (2/(pi r))|sin(beta pi/2)|, remainder scale 1.
/// Requires r > 0.
EstimateBreakdown estimate_telyakovskii_pinf(const ClassParams& params);

/// Historical uniform-metric principal term (4/pi^2) ln n, remainder scale 1.
/// Requires n >= 2.
EstimateBreakdown estimate_kolmogorov_pinf(const ClassParams& params);

}  // namespace wn
