#include "wn/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wn/summation.hpp"

namespace wn::series {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Rotor for cos/sin(k t - phi) with an exactly split phase: k*t is computed
// as hi + lo via FMA (exact because k < 2^53), the large part goes through
// libm argument reduction and the residual becomes a small extra rotation.
struct Rotor {
  double re, im;

  Rotor(std::int64_t k, double t, double phi) {
    const double kd = static_cast<double>(k);
    const double hi = kd * t;
    const double lo = std::fma(kd, t, -hi);
    // two-sum of hi and -phi
    const double s = hi - phi;
    const double bb = hi - s;
    const double err = (hi - (s + bb)) + (bb - phi);
    const double delta = err + lo;  // |delta| stays far below 1
    const double c0 = std::cos(s), s0 = std::sin(s);
    const double cd = 1.0 - 0.5 * delta * delta;
    const double sd = delta * (1.0 - delta * delta / 6.0);
    re = c0 * cd - s0 * sd;
    im = s0 * cd + c0 * sd;
  }

  void step(double wr, double wi) {
    const double nr = re * wr - im * wi;
    im = re * wi + im * wr;
    re = nr;
  }
};

}  // namespace

EvalResult tail_sum(double r, std::int64_t n, double phi, std::int64_t k_hi, double t,
                    int order) {
  EvalResult out;
  if (k_hi < n) return out;

  const double nd = static_cast<double>(n);
  const double wr = std::cos(t), wi = std::sin(t);
  const bool static_phase = (t == 0.0);  // rotor constant; skip the step

  NeumaierSum acc, abs_acc;

  std::int64_t k0 = n;
  while (k0 <= k_hi) {
    std::int64_t blk = std::max<std::int64_t>(16, k0 >> 12);
    blk = std::min(blk, static_cast<std::int64_t>(2048));
    blk = std::min(blk, k_hi - k0 + 1);

    const double kc = static_cast<double>(k0) + 0.5 * static_cast<double>(blk - 1);
    const double a0 = std::exp(-r * std::log(kc / nd));
    const double c1 = -r / kc;
    const double c2 = 0.5 * r / (kc * kc);
    const double c3 = -r / (3.0 * kc * kc * kc);
    // The 5-term exp() Taylor needs |dy| small; fall back to exact exp when
    // the block would stretch it.
    const bool exact_amp = std::abs(c1) * 0.5 * static_cast<double>(blk) > 0.004;

    Rotor z(k0, t, phi);
    for (std::int64_t j = 0; j < blk; ++j) {
      const double kd = static_cast<double>(k0 + j);
      double a;
      if (exact_amp) {
        a = std::exp(-r * std::log(kd / nd));
      } else {
        const double d = kd - kc;
        const double dy = ((c3 * d + c2) * d + c1) * d;
        const double e =
            1.0 + dy * (1.0 + dy * (0.5 + dy * (1.0 / 6.0 + dy * (1.0 / 24.0))));
        a = a0 * e;
      }
      double term;
      switch (order) {
        case -1: term = a / kd * z.im; break;
        case 0: term = a * z.re; break;
        case 1: term = -a * kd * z.im; break;
        default: term = -a * kd * kd * z.re; break;
      }
      acc.add(term);
      abs_acc.add(std::abs(term));
      if (!static_phase) z.step(wr, wi);
    }
    k0 += blk;
  }

  out.value = acc.value();
  out.abs_sum = abs_acc.value();
  return out;
}

double uniform_tail_bound(double rho, std::int64_t n, std::int64_t k) {
  if (!(rho > 1.0)) return kInf;
  if (k < n) k = n - 1;  // bound on the whole series from n
  if (k < 1) return kInf;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return nd / (rho - 1.0) * std::pow(nd / kd, rho - 1.0);
}

double pointwise_tail_bound(double r, std::int64_t n, std::int64_t k, double t) {
  const double s = std::abs(std::sin(0.5 * dist_to_zero(t)));
  if (s == 0.0) return kInf;
  const double a = std::pow(static_cast<double>(n) / static_cast<double>(k + 1), r);
  return a / s;
}

double pointwise_tail_bound_integrated(double r, std::int64_t n, std::int64_t k, double t) {
  const double s = std::abs(std::sin(0.5 * dist_to_zero(t)));
  if (s == 0.0) return kInf;
  const double kd = static_cast<double>(k + 1);
  const double a = std::pow(static_cast<double>(n) / kd, r) / kd;
  return a / s;
}

double coeff_sum_bound(double r, std::int64_t n, std::int64_t k) {
  if (k < n) return 0.0;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  if (std::abs(r - 1.0) < 1e-12) return 1.0 + nd * std::log(kd / nd);
  return 1.0 + nd / (r - 1.0) * (1.0 - std::pow(nd / kd, r - 1.0));
}

double deriv_coeff_sum_bound(double r, std::int64_t n, std::int64_t k) {
  if (k < n) return 0.0;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  if (std::abs(r - 2.0) < 1e-12) return nd * (1.0 + nd * std::log(kd / nd));
  return nd * (1.0 + nd / (r - 2.0) * (1.0 - std::pow(nd / kd, r - 2.0)));
}

double deriv2_coeff_sum_bound(double r, std::int64_t n, std::int64_t k) {
  if (k < n) return 0.0;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  if (std::abs(r - 3.0) < 1e-12) return nd * nd * (1.0 + nd * std::log(kd / nd));
  return nd * nd * (1.0 + nd / (r - 3.0) * (1.0 - std::pow(nd / kd, r - 3.0)));
}

double pointwise_deriv2_tail_bound(double r, std::int64_t n, std::int64_t k, double t) {
  if (!(r > 2.0)) return kInf;
  const double s = std::abs(std::sin(0.5 * dist_to_zero(t)));
  if (s == 0.0) return kInf;
  const double kd = static_cast<double>(k + 1);
  return kd * kd * std::pow(static_cast<double>(n) / kd, r) / s;
}

double curvature_bound(double r, std::int64_t n, double d0) {
  double best = kInf;
  std::int64_t k = n;
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  for (int j = 0; j < 44; ++j) {
    double tail = n2 * uniform_tail_bound(r - 2.0, n, k);  // finite for r > 3
    if (d0 > 0.0) tail = std::min(tail, pointwise_deriv2_tail_bound(r, n, k, d0));
    best = std::min(best, deriv2_coeff_sum_bound(r, n, k) + tail);
    if (k > (std::int64_t{1} << 40)) break;
    k *= 2;
  }
  return best;
}

double oscillation_bound(double r, std::int64_t n, double width) {
  if (!(width > 0.0)) return 0.0;
  if (!(r > 1.0)) return kInf;
  double best = kInf;
  std::int64_t k = n;
  for (int j = 0; j < 44; ++j) {
    const double cand = width * deriv_coeff_sum_bound(r, n, k) + 2.0 * uniform_tail_bound(r, n, k);
    best = std::min(best, cand);
    if (k > (std::int64_t{1} << 40)) break;
    k *= 2;
  }
  // Any two values differ at most by twice the coefficient mass.
  if (r > 1.0 + 1e-12) {
    best = std::min(best, 2.0 * (coeff_sum_bound(r, n, std::int64_t{1} << 40) +
                                 uniform_tail_bound(r, n, std::int64_t{1} << 40)));
  }
  return best;
}

double dist_to_zero(double t) {
  const double d = std::remainder(t, kTwoPi);
  return std::abs(d);
}

}  // namespace wn::series
