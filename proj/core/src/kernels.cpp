#include "wn/kernels.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "wn/series.hpp"

namespace wn {
namespace {

std::int64_t doubling_index(double r, std::int64_t n, double tol, double* bound_out) {
  std::int64_t m = n;
  double bound = series::uniform_tail_bound(r, n, m);
  while (!(bound < tol)) {
    if (m > kTruncationCap / 2) {
      *bound_out = bound;
      return -1;
    }
    m *= 2;
    bound = series::uniform_tail_bound(r, n, m);
  }
  *bound_out = bound;
  return m;
}

}  // namespace

TailKernel truncation_index(const ClassParams& params, double tol) {
  require_oracle_r(params.r);
  if (!(tol > 0.0)) throw domain_error("truncation_index requires tol > 0");

  double bound = 0.0;
  const std::int64_t m = doubling_index(params.r, params.n, tol, &bound);
  if (m < 0) {
    throw resource_error(
        "truncation_index: required index exceeds the 2^31 cap; achievable bound " +
            std::to_string(bound),
        bound);
  }
  return TailKernel{params, m, bound};
}

double eval_scaled_tail(const TailKernel& kernel, double t) {
  return series::tail_sum(kernel.params.r, kernel.params.n, kernel.params.phase(), kernel.m, t,
                          0)
      .value;
}

double eval_scaled_tail_deriv(const TailKernel& kernel, double t, int order) {
  if (order != 1 && order != 2) {
    throw domain_error("eval_scaled_tail_deriv: order must be 1 or 2");
  }
  if (!(kernel.params.r - order >= kRMinOracle)) {
    throw domain_error("eval_scaled_tail_deriv requires r - order >= 1.05");
  }
  return series::tail_sum(kernel.params.r, kernel.params.n, kernel.params.phase(), kernel.m, t,
                          order)
      .value;
}

double deriv_truncation_bound(const TailKernel& kernel, int order) {
  if (order != 1 && order != 2) {
    throw domain_error("deriv_truncation_bound: order must be 1 or 2");
  }
  // sum_{k>m} k^order (n/k)^r = n^order sum_{k>m} (n/k)^{r-order}
  const double n_pow = std::pow(static_cast<double>(kernel.params.n), order);
  return n_pow * series::uniform_tail_bound(kernel.params.r - order, kernel.params.n, kernel.m);
}

double eval_poisson_kernel(double q, double beta, double t) {
  if (!(q > 0.0 && q < 1.0)) {
    throw domain_error("eval_poisson_kernel requires 0 < q < 1");
  }
  const double phi = ClassParams::reduce_beta(beta) * std::numbers::pi / 2.0;
  const std::complex<double> w = q * std::complex<double>(std::cos(t), std::sin(t));
  const std::complex<double> s = w / (1.0 - w);
  return std::cos(phi) * s.real() + std::sin(phi) * s.imag();
}

double weyl_nagy_kernel_value(const ClassParams& params, double t, double tol) {
  require_oracle_r(params.r);
  if (!(tol > 0.0)) throw domain_error("weyl_nagy_kernel_value requires tol > 0");

  double bound = 0.0;
  const std::int64_t m = doubling_index(params.r, 1, tol, &bound);
  if (m < 0) {
    throw resource_error(
        "weyl_nagy_kernel_value: truncation index exceeds the 2^31 cap; achievable bound " +
            std::to_string(bound),
        bound);
  }
  return series::tail_sum(params.r, 1, params.phase(), m, t, 0).value;
}

}  // namespace wn
