#pragma once

#include <cmath>

namespace wn {

/// Neumaier-compensated accumulator. Like Kahan summation but the
/// correction also captures the case |addend| > |sum|, so the running
/// error stays near machine epsilon even for sums over millions of
/// terms of mixed magnitude.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

}  // namespace wn
