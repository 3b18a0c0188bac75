#include "wn/estimators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wn/special.hpp"

namespace wn {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

const char* regime_name(Regime regime) {
  switch (regime) {
    case Regime::N1: return "N1";
    case Regime::SmallR: return "SmallR";
    case Regime::MidR: return "MidR";
    default: return "LargeR";
  }
}

const char* theorem_name(Theorem theorem) {
  switch (theorem) {
    case Theorem::Thm1: return "thm1";
    case Theorem::Thm1Sharp: return "thm1_sharp";
    case Theorem::Thm3: return "thm3";
    case Theorem::ZetaBracket: return "zeta";
    case Theorem::IntegralForm: return "integral";
    case Theorem::StechkinPinf: return "stechkin";
    case Theorem::TelyakovskiiPinf: return "telyakovskii";
    default: return "kolmogorov";
  }
}

EstimateBreakdown estimate_thm1(const ClassParams& params) {
  require_estimator_r(params.r);
  const double r = params.r;
  const double n = static_cast<double>(params.n);

  EstimateBreakdown out;
  out.theorem = Theorem::Thm1;
  out.principal = n / (r * kPi);
  out.delta = (n / r) * (1.0 / (r - 2.0) + r / n);
  const double half = (2.0 / kPi) * out.delta;
  out.bracket_lo = out.principal - half;
  out.bracket_hi = out.principal + half;
  out.regime = classify_regime(r, params.n);
  return out;
}

EstimateBreakdown estimate_thm1_sharp(const ClassParams& params) {
  require_estimator_r(params.r);
  const double r = params.r;
  const double n = static_cast<double>(params.n);

  EstimateBreakdown out;
  out.theorem = Theorem::Thm1Sharp;
  out.principal = n / (r * kPi);
  out.bracket_lo = (1.0 / kPi) * ((n / r) * (1.0 - 2.0 / (r - 2.0)) - 1.0);
  out.bracket_hi = (1.0 / kPi) * ((n / r) * (1.0 + 1.0 / (r - 2.0)) + 2.0);
  out.delta = 0.5 * (*out.bracket_hi - *out.bracket_lo);
  out.regime = classify_regime(r, params.n);
  return out;
}

Regime classify_regime(double r, std::int64_t n) {
  if (!(r > 2.0)) throw domain_error("classify_regime requires r > 2");
  if (n < 1) throw domain_error("classify_regime requires n >= 1");
  if (n == 1) return Regime::N1;
  const double nd = static_cast<double>(n);
  if (r <= nd + 1.0) return Regime::SmallR;
  if (r <= nd * nd) return Regime::MidR;
  return Regime::LargeR;
}

EstimateBreakdown estimate_thm3(const ClassParams& params) {
  require_estimator_r(params.r);
  const double r = params.r;
  const double n = static_cast<double>(params.n);

  EstimateBreakdown out;
  out.theorem = Theorem::Thm3;
  out.regime = classify_regime(r, params.n);
  out.principal = 1.0 / (kPi * (-std::expm1(-r / n)));
  switch (*out.regime) {
    case Regime::N1: out.delta = std::exp(-r); break;
    case Regime::SmallR: out.delta = n / (r * (r - 2.0)); break;
    case Regime::MidR: out.delta = (r / (n * n)) * std::exp(-r / n); break;
    case Regime::LargeR: out.delta = std::exp(-r * std::log1p(1.0 / n)); break;
  }
  return out;
}

ZetaBracket zeta_form_bracket(const ClassParams& params) {
  require_estimator_r(params.r);
  const double r = params.r;
  const std::int64_t n = params.n;
  const double nd = static_cast<double>(n);

  const double s_rn = hurwitz_zeta_scaled(r, n);

  // n^r R with R = (1/n) zeta(r-1, n+1) - zeta(r, n+1): written through the
  // scaled values at shift n+1, the n^r factor becomes (n/(n+1))^{r-1} and
  // (n/(n+1))^r, both overflow-safe.
  const double ratio_rm1 = std::exp(-(r - 1.0) * std::log1p(1.0 / nd));
  const double ratio_r = std::exp(-r * std::log1p(1.0 / nd));
  const double rep_shifted =
      ratio_rm1 * hurwitz_zeta_scaled(r - 1.0, n + 1) - ratio_r * hurwitz_zeta_scaled(r, n + 1);

  // Same quantity through shift n: (1/n) n^r zeta(r-1,n) - n^r zeta(r,n)
  // = S(r-1,n) - S(r,n).
  const double rep_plain = hurwitz_zeta_scaled(r - 1.0, n) - s_rn;

  const double scale = std::max({std::abs(rep_plain), std::abs(rep_shifted), 1e-300});
  if (std::abs(rep_plain - rep_shifted) > 1e-9 * scale) {
    throw consistency_error(
        "zeta_form_bracket: the two remainder representations disagree (" +
        std::to_string(rep_plain) + " vs " + std::to_string(rep_shifted) + ")");
  }

  ZetaBracket out;
  out.r_scaled = rep_plain;
  out.hi = s_rn / kPi;
  out.lo = (s_rn - out.r_scaled) / kPi;
  return out;
}

double integral_form_value(const ClassParams& params, double tol) {
  require_estimator_r(params.r);
  return hurwitz_zeta_integral_scaled(params.r, params.n, tol) / kPi;
}

EstimateBreakdown estimate_stechkin_pinf(const ClassParams& params) {
  if (!(params.r >= 1.0)) throw domain_error("estimate_stechkin_pinf requires r >= 1");
  const double q = std::exp(-params.r / static_cast<double>(params.n));

  EstimateBreakdown out;
  out.theorem = Theorem::StechkinPinf;
  out.principal = 8.0 / (kPi * kPi) * elliptic_k(q);
  out.delta = 1.0 / params.r;
  return out;
}

EstimateBreakdown estimate_telyakovskii_pinf(const ClassParams& params) {
  if (!(params.r > 0.0)) throw domain_error("estimate_telyakovskii_pinf requires r > 0");
  const double r = params.r;
  const double n = static_cast<double>(params.n);

  EstimateBreakdown out;
  out.theorem = Theorem::TelyakovskiiPinf;
  out.principal = 4.0 / (kPi * kPi) * std::log(n / std::min(n, r + 1.0)) +
                  2.0 / (kPi * r) * std::abs(std::sin(params.beta * kPi / 2.0));
  out.delta = 1.0;
  return out;
}

EstimateBreakdown estimate_kolmogorov_pinf(const ClassParams& params) {
  if (!(params.r > 0.0)) throw domain_error("estimate_kolmogorov_pinf requires r > 0");
  if (params.n < 2) {
    throw domain_error("estimate_kolmogorov_pinf requires n >= 2 (ln 1 degenerates)");
  }

  EstimateBreakdown out;
  out.theorem = Theorem::KolmogorovPinf;
  out.principal = 4.0 / (kPi * kPi) * std::log(static_cast<double>(params.n));
  out.delta = 1.0;
  return out;
}

}  // namespace wn
