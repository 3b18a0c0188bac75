#pragma once

#include <cstdint>

#include "wn/params.hpp"

namespace wn {

/// Truncated remainder kernel of the Weyl-Nagy kernel family: the scaled
/// Fourier tail g(t) = sum_{k>=n} (n/k)^r cos(kt - beta*pi/2) cut at index m,
/// with eps_m a certified uniform bound on |g - g_m|.
struct TailKernel {
  ClassParams params;
  std::int64_t m;
  double eps_m;
};

/// Smallest truncation index of the form n*2^j whose integral-comparison
/// tail bound (n/(r-1)) (n/m)^{r-1} is below tol.
///
/// Throws domain_error for r below the oracle floor; resource_error (with
/// the achievable bound) when the index would exceed the 2^31 cap.
TailKernel truncation_index(const ClassParams& params, double tol);

/// g_m(t), the truncated scaled tail, by compensated summation.
double eval_scaled_tail(const TailKernel& kernel, double t);

/// Termwise t-derivative of g_m, order in {1, 2}. Requires r - order >= 1.05
/// so the differentiated series keeps a certified tail bound.
double eval_scaled_tail_deriv(const TailKernel& kernel, double t, int order);

/// Certified bound on the discarded derivative tail
/// sum_{k>m} k^order (n/k)^r, i.e. the eps of eval_scaled_tail_deriv.
double deriv_truncation_bound(const TailKernel& kernel, int order);

/// Poisson kernel sum_{k>=1} q^k cos(kt - beta*pi/2) in closed form,
/// Re( e^{-i beta pi/2} q e^{it} / (1 - q e^{it}) ). Requires 0 < q < 1.
double eval_poisson_kernel(double q, double beta, double t);

/// Unnormalized kernel value B(t) = sum_{k=1}^{m} k^{-r} cos(kt - beta*pi/2),
/// truncated with the same certified policy (plotting/reporting helper).
double weyl_nagy_kernel_value(const ClassParams& params, double t, double tol = 1e-8);

}  // namespace wn
