#pragma once

#include <cstdint>

namespace wn::series {

/// Result of a trigonometric tail-series evaluation. `abs_sum` is the sum of
/// absolute accumulated terms and feeds the rounding envelope.
struct EvalResult {
  double value = 0.0;
  double abs_sum = 0.0;
};

/// Evaluates the truncated scaled tail series with coefficients
/// a_k = (n/k)^r for k = n..k_hi. The `order` selects t-derivatives of the
/// cosine series (and its antiderivative):
///   order -1:  sum a_k / k   * sin(k t - phi)
///   order  0:  sum a_k       * cos(k t - phi)
///   order  1: -sum a_k * k   * sin(k t - phi)
///   order  2: -sum a_k * k^2 * cos(k t - phi)
/// Implementation: blockwise complex rotor with exact phase splitting and a
/// cubic model of the log-amplitude, Neumaier-compensated accumulation.
EvalResult tail_sum(double r, std::int64_t n, double phi, std::int64_t k_hi, double t,
                    int order = 0);

/// Conservative envelope for the rounding error of tail_sum (phase drift,
/// amplitude interpolation, compensated summation).
inline double eval_round_bound(double abs_sum) { return abs_sum * 1e-12; }

/// Integral-comparison bound on sum_{k > K} (n/k)^rho. +inf when rho <= 1.
double uniform_tail_bound(double rho, std::int64_t n, std::int64_t k);

/// Abel summation bound |sum_{k > K} (n/k)^r e^{i(kt - phi)}| <=
/// (n/(K+1))^r / |sin(t/2)|, valid for any decreasing coefficient sequence.
double pointwise_tail_bound(double r, std::int64_t n, std::int64_t k, double t);

/// Same bound for the antiderivative series (coefficients (n/k)^r / k).
double pointwise_tail_bound_integrated(double r, std::int64_t n, std::int64_t k, double t);

/// Upper bound on the partial coefficient sum sum_{k=n}^{K} (n/k)^r.
double coeff_sum_bound(double r, std::int64_t n, std::int64_t k);

/// Upper bound on sum_{k=n}^{K} k (n/k)^r, a Lipschitz constant for the
/// K-truncated kernel.
double deriv_coeff_sum_bound(double r, std::int64_t n, std::int64_t k);

/// Upper bound on sum_{k=n}^{K} k^2 (n/k)^r, a curvature constant for the
/// K-truncated kernel.
double deriv2_coeff_sum_bound(double r, std::int64_t n, std::int64_t k);

/// Abel bound on the second-derivative tail
/// |sum_{k > K} k^2 (n/k)^r e^{i(kt - phi)}| <= (K+1)^2 (n/(K+1))^r / |sin(t/2)|.
/// Requires r > 2 (monotone coefficients); +inf otherwise.
double pointwise_deriv2_tail_bound(double r, std::int64_t n, std::int64_t k, double t);

/// Curvature bound sup |g''| over points at distance >= d0 from the 2pi
/// multiples, minimized over truncation levels. d0 = 0 is allowed when
/// r > 3 (the full curvature series converges).
double curvature_bound(double r, std::int64_t n, double d0);

/// Modulus-of-continuity bound: |g(x) - g(y)| <= oscillation_bound(|x-y|)
/// for the full tail kernel, minimized over truncation levels. Finite for
/// r > 1; +inf otherwise.
double oscillation_bound(double r, std::int64_t n, double width);

/// Distance from t to the nearest multiple of 2*pi.
double dist_to_zero(double t);

}  // namespace wn::series
