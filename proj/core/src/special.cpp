#include "wn/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wn/params.hpp"
#include "wn/quadrature.hpp"
#include "wn/summation.hpp"

namespace wn {
namespace {

// B_{2j} / (2j)! for j = 1..8.
constexpr double kBern[8] = {
    8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,
    -8.2671957671957672e-07, 2.0876756987868099e-08,  -5.2841901386874932e-10,
    1.3382536530684679e-11,  -3.3896802963225829e-13};

void check_zeta_domain(double s, double a) {
  if (!(s > 1.0)) throw domain_error("hurwitz zeta requires s > 1");
  if (!(a > 0.0)) throw domain_error("hurwitz zeta requires a > 0");
}

// Euler-Maclaurin evaluation of sum_{k>=0} base(a+k)^{-s} where each term is
// produced by `power_term(x) ~ x^{-s}` (possibly carrying an external scale).
// The direct sum runs until a+k >= max(15, 2s), which keeps the Bernoulli
// correction series safely decaying at order J=8.
template <typename PowerTerm>
double euler_maclaurin(double s, double a, PowerTerm power_term) {
  const double cutoff = std::max(15.0, 2.0 * s);
  std::int64_t num_direct = 0;
  if (a < cutoff) num_direct = static_cast<std::int64_t>(std::ceil(cutoff - a));

  NeumaierSum direct;
  for (std::int64_t k = 0; k < num_direct; ++k) {
    direct.add(power_term(a + static_cast<double>(k)));
  }

  const double apn = a + static_cast<double>(num_direct);
  const double f = power_term(apn);  // (a+N)^{-s}, scaled like the terms
  NeumaierSum tail;
  tail.add(f * apn / (s - 1.0));
  tail.add(0.5 * f);
  double rising = s;        // s (s+1) ... (s+2j-2)
  double decay = f / apn;   // f * apn^{-(2j-1)}
  for (int j = 0; j < 8; ++j) {
    tail.add(kBern[j] * rising * decay);
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    decay /= apn * apn;
  }
  return direct.value() + tail.value();
}

}  // namespace

double hurwitz_zeta(const ZetaArgs& args) {
  check_zeta_domain(args.s, args.a);
  const double s = args.s;
  return euler_maclaurin(s, args.a, [s](double x) { return std::pow(x, -s); });
}

double hurwitz_zeta_scaled(double r, std::int64_t n) {
  if (!(r >= kRMinOracle)) {
    throw domain_error("hurwitz_zeta_scaled requires r >= 1.05");
  }
  if (n < 1) throw domain_error("hurwitz_zeta_scaled requires n >= 1");
  const double nd = static_cast<double>(n);
  // Terms (n/x)^r = exp(-r log(x/n)); every factor stays O(1).
  return euler_maclaurin(r, nd, [r, nd](double x) { return std::pow(nd / x, r); });
}

double hurwitz_zeta_integral_scaled(double s, std::int64_t n, double tol) {
  if (!(s >= kRMinOracle)) {
    throw domain_error("hurwitz_zeta_integral requires s >= 1.05");
  }
  if (n < 1) throw domain_error("hurwitz_zeta_integral requires shift >= 1");
  if (!(tol > 0.0)) tol = 1e-12;
  const double a = static_cast<double>(n);
  const double lg = log_gamma(s);

  // Integrand of (1/Gamma(s)) Int u^{s-1} e^{-u} / (1 - e^{-u/a}) du, u = a t.
  const auto h = [s, a, lg](double u) -> double {
    if (u <= 0.0) return 0.0;
    const double density = std::exp((s - 1.0) * std::log(u) - u - lg);
    return density / (-std::expm1(-u / a));
  };

  const double quad_tol = std::max(std::min(tol, 1e-9) * 0.1, 1e-14);

  // Near u = 0 the integrand behaves like a u^{s-2}; substitute u = v^p with
  // p large enough that the transformed integrand vanishes at 0.
  const double mode = std::max(s - 1.0, 1.0);
  const double u_split = std::min(1.0, mode);
  int p = 1;
  if (s < 2.5) p = std::min(64, static_cast<int>(std::ceil(2.0 / (s - 1.0))));
  const auto h_sub = [&h, p](double v) -> double {
    const double u = std::pow(v, p);
    return h(u) * p * std::pow(v, p - 1);
  };

  double total = 0.0, err = 0.0;
  bool ok = true;

  QuadResult q0 = integrate_adaptive(h_sub, 0.0, std::pow(u_split, 1.0 / p), quad_tol, quad_tol);
  total += q0.value;
  err += q0.abs_error;
  ok = ok && q0.converged;

  // Split at the mode and at u = a (the t = 1 point of the unscaled form),
  // then extend in doubling panels until contributions vanish.
  double lo = u_split;
  double segment_end = std::max(mode, u_split) + 10.0 * std::sqrt(s) + 10.0;
  const double far = std::max(a, segment_end);
  for (int round = 0; round < 200; ++round) {
    QuadResult q = integrate_adaptive(h, lo, segment_end, quad_tol, quad_tol);
    total += q.value;
    err += q.abs_error;
    ok = ok && q.converged;
    const bool past_far = segment_end >= far;
    if (past_far && std::abs(q.value) <= 0.25 * quad_tol * std::max(1.0, std::abs(total))) break;
    lo = segment_end;
    segment_end = past_far ? 2.0 * segment_end : std::min(2.0 * segment_end, far);
    if (lo >= 1e12) break;
  }

  if (!ok || err > 10.0 * std::max(tol, 1e-9) * std::abs(total)) {
    throw accuracy_error("hurwitz_zeta_integral: quadrature did not converge to tolerance",
                         total, err);
  }
  return total;
}

double hurwitz_zeta_integral(const ZetaArgs& args, double tol) {
  check_zeta_domain(args.s, args.a);
  if (!(args.s >= kRMinOracle)) {
    throw domain_error("hurwitz_zeta_integral requires s >= 1.05");
  }
  // Integer shifts share the scaled core; general shifts integrate directly.
  const double a_round = std::round(args.a);
  if (std::abs(args.a - a_round) < 1e-12 && a_round >= 1.0 && a_round <= 9e15) {
    const double scaled =
        hurwitz_zeta_integral_scaled(args.s, static_cast<std::int64_t>(a_round), tol);
    return scaled * std::exp(-args.s * std::log(args.a));
  }

  const double s = args.s, a = args.a;
  const double lg = log_gamma(s);
  const auto h = [s, a, lg](double t) -> double {
    if (t <= 0.0) return 0.0;
    const double density = std::exp((s - 1.0) * std::log(t) - a * t - lg);
    return density / (-std::expm1(-t));
  };
  const double quad_tol = std::max(std::min(tol, 1e-9) * 0.1, 1e-14);
  const double mode = std::max((s - 1.0) / a, 1e-3);
  int p = 1;
  if (s < 2.5) p = std::min(64, static_cast<int>(std::ceil(2.0 / (s - 1.0))));
  const double t0 = std::min(1.0, mode);
  const auto h_sub = [&h, p](double v) -> double {
    const double t = std::pow(v, p);
    return h(t) * p * std::pow(v, p - 1);
  };

  double total = 0.0, err = 0.0;
  bool ok = true;
  QuadResult q0 = integrate_adaptive(h_sub, 0.0, std::pow(t0, 1.0 / p), quad_tol, quad_tol);
  total += q0.value;
  err += q0.abs_error;
  ok = ok && q0.converged;

  double lo = t0;
  double hi = std::max({1.0, 2.0 * mode, t0}) + (10.0 * std::sqrt(s) + 10.0) / a;
  for (int round = 0; round < 200; ++round) {
    QuadResult q = integrate_adaptive(h, lo, hi, quad_tol, quad_tol);
    total += q.value;
    err += q.abs_error;
    ok = ok && q.converged;
    if (std::abs(q.value) <= 0.25 * quad_tol * std::max(1.0, std::abs(total))) break;
    lo = hi;
    hi *= 2.0;
    if (lo >= 1e12) break;
  }
  if (!ok || err > 10.0 * std::max(tol, 1e-9) * std::abs(total)) {
    throw accuracy_error("hurwitz_zeta_integral: quadrature did not converge to tolerance",
                         total, err);
  }
  return total;
}

double elliptic_k(double q) {
  if (!(q >= 0.0) || q >= 1.0) {
    throw domain_error("elliptic_k requires 0 <= q < 1");
  }
  double a = 1.0;
  double g = std::sqrt((1.0 - q) * (1.0 + q));
  for (int i = 0; i < 64 && std::abs(a - g) > 1e-17 * a; ++i) {
    const double an = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw domain_error("log_gamma requires x > 0");

  // Raise the argument until the Stirling series converges fast.
  double shift = 0.0;
  double y = x;
  while (y < 12.0) {
    shift += std::log(y);
    y += 1.0;
  }

  // Stirling coefficients B_{2j} / (2j (2j-1)).
  static constexpr double c[8] = {
      1.0 / 12.0,   -1.0 / 360.0,     1.0 / 1260.0,   -1.0 / 1680.0,
      1.0 / 1188.0, -691.0 / 360360.0, 7.0 / 1092.0,  -3617.0 / 122400.0};
  const double inv2 = 1.0 / (y * y);
  double series = 0.0;
  double pw = 1.0 / y;
  for (int j = 0; j < 8; ++j) {
    series += c[j] * pw;
    pw *= inv2;
  }
  const double half_log_2pi = 0.91893853320467274178;
  return (y - 0.5) * std::log(y) - y + half_log_2pi + series - shift;
}

}  // namespace wn
