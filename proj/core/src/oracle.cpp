#include "wn/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "wn/series.hpp"
#include "wn/special.hpp"
#include "wn/summation.hpp"

namespace wn {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::mutex g_fft_mutex;

struct Spec {
  double r;
  std::int64_t n;
  double phi;
};

Spec make_spec(const ClassParams& p) { return Spec{p.r, p.n, p.phase()}; }

// ---------------------------------------------------------------------------
// coefficient streaming (blockwise log-amplitude model, as in tail_sum)

template <typename Fn>
void for_each_coeff(double r, std::int64_t n, std::int64_t k_hi, Fn&& fn) {
  const double nd = static_cast<double>(n);
  std::int64_t k0 = n;
  while (k0 <= k_hi) {
    std::int64_t blk = std::max<std::int64_t>(16, k0 >> 12);
    blk = std::min({blk, static_cast<std::int64_t>(4096), k_hi - k0 + 1});
    const double kc = static_cast<double>(k0) + 0.5 * static_cast<double>(blk - 1);
    const double a0 = std::exp(-r * std::log(kc / nd));
    const double c1 = -r / kc;
    const double c2 = 0.5 * r / (kc * kc);
    const double c3 = -r / (3.0 * kc * kc * kc);
    const bool exact_amp = std::abs(c1) * 0.5 * static_cast<double>(blk) > 0.004;
    for (std::int64_t j = 0; j < blk; ++j) {
      const std::int64_t k = k0 + j;
      double a;
      if (exact_amp) {
        a = std::exp(-r * std::log(static_cast<double>(k) / nd));
      } else {
        const double d = static_cast<double>(k) - kc;
        const double dy = ((c3 * d + c2) * d + c1) * d;
        a = a0 * (1.0 + dy * (1.0 + dy * (0.5 + dy * (1.0 / 6.0 + dy * (1.0 / 24.0)))));
      }
      fn(k, a);
    }
    k0 += blk;
  }
}

// ---------------------------------------------------------------------------
// uniform scan via FFT

struct Scan {
  std::int64_t grid = 0;  // number of points, power of two
  double h = 0.0;         // 2pi / grid
  std::int64_t k_s = 0;   // scan truncation
  double mass = 0.0;      // bound on sum |a_k|, k <= k_s (rounding envelope)
  std::vector<double> vals;

  double t_at(std::int64_t i) const { return static_cast<double>(i) * h; }
};

Scan make_scan(const Spec& spec, std::int64_t k_s, std::int64_t grid) {
  Scan scan;
  scan.grid = grid;
  scan.h = kTwoPi / static_cast<double>(grid);
  scan.k_s = k_s;
  scan.mass = series::coeff_sum_bound(spec.r, spec.n, k_s);

  std::vector<std::complex<double>> buf(static_cast<std::size_t>(grid), {0.0, 0.0});
  for_each_coeff(spec.r, spec.n, k_s, [&](std::int64_t k, double a) {
    buf[static_cast<std::size_t>(k % grid)] += a;
  });

  {
    std::lock_guard<std::mutex> lock(g_fft_mutex);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(grid),
                                      reinterpret_cast<fftw_complex*>(buf.data()),
                                      reinterpret_cast<fftw_complex*>(buf.data()),
                                      FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }

  const double c = std::cos(spec.phi), s = std::sin(spec.phi);
  scan.vals.resize(static_cast<std::size_t>(grid));
  for (std::int64_t i = 0; i < grid; ++i) {
    const auto& x = buf[static_cast<std::size_t>(i)];
    scan.vals[static_cast<std::size_t>(i)] = c * x.real() + s * x.imag();
  }
  return scan;
}

// Slack of a scan value against the infinite series: tail beyond k_s plus
// FFT/summation rounding.
double scan_slack(const Spec& spec, const Scan& scan, std::int64_t i) {
  const double tail =
      std::min(series::uniform_tail_bound(spec.r, spec.n, scan.k_s),
               series::pointwise_tail_bound(spec.r, spec.n, scan.k_s, scan.t_at(i)));
  return tail + 3e-12 * scan.mass;
}

// ---------------------------------------------------------------------------
// adaptive single-point evaluation against the infinite series

struct PointEval {
  double value = 0.0;
  double slack = 0.0;  // certified |g(t) - value| bound
  std::int64_t work = 0;
};

double point_bound(const Spec& spec, std::int64_t k, double t) {
  return std::min(series::uniform_tail_bound(spec.r, spec.n, k),
                  series::pointwise_tail_bound(spec.r, spec.n, k, t));
}

// When allow_skip is set and even work_cap terms cannot reach the budget, no
// evaluation happens (slack = +inf); callers fall back to interval bounds.
PointEval eval_point(const Spec& spec, double t, double budget, std::int64_t work_cap,
                     bool allow_skip = false) {
  std::int64_t k = spec.n;
  double bound = point_bound(spec, k, t);
  while (bound > 0.9 * budget && k < work_cap && k < kTruncationCap) {
    k = std::min({k * 2, work_cap, kTruncationCap});
    bound = point_bound(spec, k, t);
  }
  if (allow_skip && bound > budget) return PointEval{0.0, kInf, 0};
  const auto ev = series::tail_sum(spec.r, spec.n, spec.phi, k, t, 0);
  return PointEval{ev.value, bound + series::eval_round_bound(ev.abs_sum), k};
}

// ---------------------------------------------------------------------------
// segment bounds

// Oscillation over a width-w window whose distance to the nearest 2pi
// multiple is d0.
double osc_cell(const Spec& spec, double w, double d0) {
  double best = series::oscillation_bound(spec.r, spec.n, w);
  if (d0 > 0.0) {
    std::int64_t k = spec.n;
    for (int j = 0; j < 40; ++j) {
      const double cand = w * series::deriv_coeff_sum_bound(spec.r, spec.n, k) +
                          2.0 * series::pointwise_tail_bound(spec.r, spec.n, k, d0);
      best = std::min(best, cand);
      if (k > (std::int64_t{1} << 36)) break;
      k *= 2;
    }
  }
  return best;
}

// Segments live in [0, 2pi].
double seg_dist_to_zero(double a, double b) {
  if (a <= 0.0 || b >= kTwoPi) return 0.0;
  return std::min(series::dist_to_zero(a), series::dist_to_zero(b));
}

double seg_far_from_zero(double a, double b) {
  if (a <= kPi && b >= kPi) return kPi;
  return std::max(series::dist_to_zero(a), series::dist_to_zero(b));
}

// ---------------------------------------------------------------------------
// certified global maximum of |g|

struct SupCoreResult {
  double t_star = 0.0;
  double value = 0.0;
  double cert = kInf;
  bool certified = false;
};

// Safeguarded Newton on s*g' within [seed - hw, seed + hw]; returns the seed
// when no derivative sign bracket exists (e.g. the apex at t = 0).
double polish_max(const Spec& spec, double seed, double hw, double sign, std::int64_t k) {
  const auto d1 = [&](double x) {
    return sign * series::tail_sum(spec.r, spec.n, spec.phi, k, x, 1).value;
  };
  const auto d2 = [&](double x) {
    return sign * series::tail_sum(spec.r, spec.n, spec.phi, k, x, 2).value;
  };
  double a = seed - hw, b = seed + hw;
  if (!(d1(a) > 0.0) || !(d1(b) < 0.0)) return seed;
  double x = seed;
  for (int it = 0; it < 60 && b - a > 1e-14; ++it) {
    const double g1 = d1(x);
    if (g1 > 0.0) a = x; else b = x;
    const double g2 = d2(x);
    double next = (g2 < 0.0) ? x - g1 / g2 : std::numeric_limits<double>::quiet_NaN();
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    x = next;
  }
  return x;
}

SupCoreResult sup_core(const Spec& spec, double rel_tol) {
  SupCoreResult out;
  const double s_mass = hurwitz_zeta_scaled(spec.r, spec.n);
  const double v_floor = std::sqrt(0.5) * 0.999;  // Parseval: sup^2 >= (1/2) sum a_k^2

  // --- pre-scan value estimate
  double v_est = v_floor;
  {
    const std::int64_t k0 = std::min<std::int64_t>(spec.n * 64, spec.n + (1 << 16));
    Scan pre = make_scan(spec, k0, 4096);
    double mx = 0.0;
    for (double v : pre.vals) mx = std::max(mx, std::abs(v));
    v_est = std::max(v_floor,
                     mx - series::uniform_tail_bound(spec.r, spec.n, k0) - 3e-12 * pre.mass);
  }
  double tol_abs = rel_tol * v_est * 0.9;

  // --- full scan
  std::int64_t grid = 4096;
  while (grid < (1 << 22) &&
         (grid < 8 * spec.n ||
          osc_cell(spec, kPi / static_cast<double>(grid), 0.0) > 0.02 * v_est)) {
    grid *= 2;
  }
  std::int64_t k_s = spec.n;
  while (k_s < (1 << 22) && series::uniform_tail_bound(spec.r, spec.n, k_s) >
                                std::max(1e-4 * v_est, 0.45 * tol_abs)) {
    k_s *= 2;
  }
  const Scan scan = make_scan(spec, k_s, grid);
  const double eps_s = series::uniform_tail_bound(spec.r, spec.n, k_s) + 3e-12 * scan.mass;

  double scan_max = 0.0;
  for (double v : scan.vals) scan_max = std::max(scan_max, std::abs(v));
  const double v_lb = std::max(v_floor, scan_max - eps_s);
  v_est = std::max(v_est, v_lb);
  tol_abs = rel_tol * v_est * 0.9;

  // --- candidates: top local maxima of |g| on the grid, plus the apex
  std::vector<std::int64_t> cand_idx;
  for (std::int64_t i = 0; i < grid; ++i) {
    const double v = std::abs(scan.vals[static_cast<std::size_t>(i)]);
    const double prev = std::abs(scan.vals[static_cast<std::size_t>((i + grid - 1) % grid)]);
    const double next = std::abs(scan.vals[static_cast<std::size_t>((i + 1) % grid)]);
    if (v >= prev && v >= next) cand_idx.push_back(i);
  }
  std::sort(cand_idx.begin(), cand_idx.end(), [&](std::int64_t a, std::int64_t b) {
    const double va = std::abs(scan.vals[static_cast<std::size_t>(a)]);
    const double vb = std::abs(scan.vals[static_cast<std::size_t>(b)]);
    if (va != vb) return va > vb;
    return a < b;
  });
  if (cand_idx.size() > 8) cand_idx.resize(8);
  if (std::find(cand_idx.begin(), cand_idx.end(), std::int64_t{0}) == cand_idx.end()) {
    cand_idx.push_back(0);
  }

  std::int64_t work_used = 0;
  const std::int64_t work_budget = std::int64_t{6} << 30;

  struct Candidate {
    double t;
    double value_up;
  };
  std::vector<Candidate> cands;
  const std::int64_t k_polish1 = std::min<std::int64_t>(k_s, std::max<std::int64_t>(4096, 8 * spec.n));
  const std::int64_t k_polish2 =
      std::min<std::int64_t>(1 << 22, std::max<std::int64_t>(k_s, 64 * spec.n));
  for (std::int64_t idx : cand_idx) {
    const double t0 = scan.t_at(idx);
    const double s = scan.vals[static_cast<std::size_t>(idx)] >= 0.0 ? 1.0 : -1.0;
    double t = polish_max(spec, t0, scan.h, s, k_polish1);
    t = polish_max(spec, t, scan.h / 32.0, s, k_polish2);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    const PointEval pe = eval_point(spec, t, 0.1 * tol_abs, 1 << 22);
    work_used += pe.work;
    cands.push_back({t, std::abs(pe.value) + pe.slack});
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.value_up != b.value_up) return a.value_up > b.value_up;
    return a.t < b.t;
  });

  // --- champion measurement
  double t_star = cands.front().t;
  PointEval champ = eval_point(spec, t_star, 0.15 * tol_abs, kTruncationCap);
  work_used += champ.work;
  double v_meas = std::abs(champ.value);
  double v_low = v_meas - champ.slack;
  double theta = v_low + 0.75 * tol_abs;

  // apex value bound from the closed-form coefficient mass (upper bound only;
  // the reported value always comes from summation)
  const double v0_up = s_mass * std::abs(std::cos(spec.phi)) + 3e-12 * s_mass;

  // --- branch-and-bound elimination over [0, 2pi]
  struct Seg {
    double a, b;
    double va_up, vb_up;
  };
  const double mass_ub = s_mass * (1.0 + 3e-12);  // |g| <= sum a_k everywhere
  const auto seg_ub = [&](const Seg& seg) {
    const double w = seg.b - seg.a;
    const double d0 = seg_dist_to_zero(seg.a, seg.b);
    // linear (modulus-of-continuity) and quadratic (curvature) interior
    // bounds; the quadratic one makes elimination near a maximum converge
    // with a constant number of live segments per level.
    const double gap = std::min(osc_cell(spec, 0.5 * w, d0),
                                0.125 * w * w * series::curvature_bound(spec.r, spec.n, d0));
    double ub = std::max(seg.va_up, seg.vb_up) + gap;
    ub = std::min(ub, v0_up + osc_cell(spec, seg_far_from_zero(seg.a, seg.b), 0.0));
    return std::min(ub, mass_ub);
  };

  std::vector<Seg> survivors;
  {
    const double half_osc0 = osc_cell(spec, 0.5 * scan.h, 0.0);
    for (std::int64_t i = 0; i < grid; ++i) {
      const double va =
          std::abs(scan.vals[static_cast<std::size_t>(i)]) + scan_slack(spec, scan, i);
      const double vb = std::abs(scan.vals[static_cast<std::size_t>((i + 1) % grid)]) +
                        scan_slack(spec, scan, (i + 1) % grid);
      if (std::max(va, vb) + half_osc0 <= theta) continue;
      Seg seg{scan.t_at(i), scan.t_at(i) + scan.h, va, vb};
      if (seg_ub(seg) <= theta) continue;
      survivors.push_back(seg);
    }
  }

  const bool debug = std::getenv("WN_SUP_DEBUG") != nullptr;
  if (debug) {
    std::fprintf(stderr,
                 "[sup] S=%.12g v_est=%.12g scan_max=%.12g grid=%lld k_s=%lld eps_s=%.3g "
                 "v0_up=%.12g t*=%.17g v_meas=%.12g theta=%.12g init_segs=%zu\n",
                 s_mass, v_est, scan_max, static_cast<long long>(grid),
                 static_cast<long long>(k_s), eps_s, v0_up, t_star, v_meas, theta,
                 survivors.size());
    for (const auto& c : cands) {
      std::fprintf(stderr, "[sup] cand t=%.17g value_up=%.12g\n", c.t, c.value_up);
    }
  }
  bool bb_ok = true;
  int promotions = 0;
  for (int round = 0; round < 250 && !survivors.empty(); ++round) {
    if (debug) {
      double worst = 0.0, wa = 0.0, wb = 0.0;
      for (const Seg& s : survivors) {
        if (seg_ub(s) > worst) { worst = seg_ub(s); wa = s.a; wb = s.b; }
      }
      std::fprintf(stderr,
                   "[bb] round=%d segs=%zu theta=%.12g vmeas=%.12g worst_ub=%.12g "
                   "at [%.17g,%.17g] w=%.3g work=%lld\n",
                   round, survivors.size(), theta, v_meas, worst, wa, wb, wb - wa,
                   static_cast<long long>(work_used));
    }
    if (work_used > work_budget || survivors.size() > 200000) {
      bb_ok = false;
      break;
    }
    // Endpoint values inherited from the scan carry its coarse slack; refresh
    // the ones that block elimination.
    const auto refine = [&](double t, double v_stored, double budget) {
      if (v_stored <= theta) return v_stored;
      const PointEval q = eval_point(spec, t, budget, 1 << 24, /*allow_skip=*/true);
      work_used += q.work;
      if (!std::isfinite(q.slack)) return v_stored;
      return std::min(v_stored, std::abs(q.value) + q.slack);
    };

    std::vector<Seg> next;
    for (Seg& seg : survivors) {
      const double over = seg_ub(seg) - theta;
      if (over <= 0.0) continue;
      // Evaluations only need enough accuracy to decide the test against
      // theta; far-from-threshold segments get cheap coarse evaluations.
      const double budget = std::max(0.05 * tol_abs, 0.2 * over);
      seg.va_up = refine(seg.a, seg.va_up, budget);
      seg.vb_up = refine(seg.b, seg.vb_up, budget);
      if (seg_ub(seg) <= theta) continue;
      const double mid = 0.5 * (seg.a + seg.b);
      if (mid <= seg.a || mid >= seg.b) {
        bb_ok = false;
        next.push_back(seg);
        continue;
      }
      const PointEval pe = eval_point(spec, mid, budget, 1 << 24, /*allow_skip=*/true);
      work_used += pe.work;
      double vm_up = std::abs(pe.value) + pe.slack;
      if (!std::isfinite(vm_up)) {
        // no affordable evaluation at the midpoint: fall back to interval
        // bounds (parent endpoints, apex-centred bound, coefficient mass)
        const double w = seg.b - seg.a;
        vm_up = std::max(seg.va_up, seg.vb_up) +
                osc_cell(spec, 0.5 * w, seg_dist_to_zero(seg.a, seg.b));
        vm_up = std::min(vm_up, v0_up + osc_cell(spec, series::dist_to_zero(mid), 0.0));
        vm_up = std::min(vm_up, mass_ub);
      }

      // promotion: midpoint beats the current champion
      if (promotions < 16 && std::isfinite(pe.slack) &&
          std::abs(pe.value) - pe.slack > v_low + 0.05 * tol_abs) {
        ++promotions;
        const double s = pe.value >= 0.0 ? 1.0 : -1.0;
        double t = polish_max(spec, mid, 0.5 * (seg.b - seg.a), s, k_polish2);
        if (t < 0.0) t += kTwoPi;
        if (t >= kTwoPi) t -= kTwoPi;
        const PointEval pc = eval_point(spec, t, 0.15 * tol_abs, kTruncationCap);
        work_used += pc.work;
        if (std::abs(pc.value) > v_meas) {
          t_star = t;
          champ = pc;
          v_meas = std::abs(pc.value);
          v_low = v_meas - pc.slack;
          theta = v_low + 0.75 * tol_abs;
        }
      }

      const Seg left{seg.a, mid, seg.va_up, vm_up};
      const Seg right{mid, seg.b, vm_up, seg.vb_up};
      if (seg_ub(left) > theta) next.push_back(left);
      if (seg_ub(right) > theta) next.push_back(right);
    }
    survivors.swap(next);
  }

  double v_up = theta;
  if (!survivors.empty()) {
    bb_ok = false;
    for (const Seg& seg : survivors) v_up = std::max(v_up, seg_ub(seg));
  }

  out.t_star = t_star;
  out.value = v_meas;
  out.cert = std::max(v_meas - v_low, v_up - v_meas);
  out.certified = bb_ok && out.cert <= rel_tol * v_meas;
  return out;
}

// ---------------------------------------------------------------------------
// certified L1 norm of g over one period

struct L1CoreResult {
  double value = 0.0;
  double cert = kInf;
  bool certified = false;
};

// Integrable envelope of |g| near the apex: for 0 < t <= delta <= 1/(2n),
// |g(t)| <= 1 + PS(1/t) + Abel tail with 1/sin(t/2) <= pi/t; integrated in
// closed form. Valid for r >= 1.
double near_zero_l1_bound(double r, std::int64_t n, double delta) {
  const double nd = static_cast<double>(n);
  if (std::abs(r - 1.0) < 1e-9) {
    return 2.0 * (delta + nd * delta * (std::log(1.0 / (nd * delta)) + 1.01) +
                  kPi * nd * delta);
  }
  const double nr_dr = std::exp(r * std::log(nd * delta));  // (n delta)^r
  return 2.0 * (delta + nd / (r - 1.0) * delta - 0.5 * nr_dr / ((r - 1.0) * r) +
                kPi * nr_dr / r);
}

double bisect_zero(const Spec& spec, std::int64_t k, double a, double b, double fa) {
  for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = series::tail_sum(spec.r, spec.n, spec.phi, k, m, 0).value;
    if ((fm >= 0.0) == (fa >= 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

L1CoreResult l1_core(const Spec& spec, double rel_tol) {
  L1CoreResult out;
  const double v_floor = kPi;  // Int |g| >= pi a_n = pi by orthogonality

  double v_est = v_floor;
  {
    const std::int64_t k0 = std::min<std::int64_t>(spec.n * 64, spec.n + (1 << 16));
    Scan pre = make_scan(spec, k0, 4096);
    double acc = 0.0;
    for (double v : pre.vals) acc += std::abs(v);
    v_est = std::max(v_floor, 0.8 * acc * pre.h);
  }

  double tol_int = rel_tol * v_est * 0.9;
  std::int64_t k_q = spec.n;

  for (int attempt = 0; attempt < 3; ++attempt) {
    // --- apex exclusion for small r (|g| may be unbounded near t = 0)
    double delta0 = 0.0;
    double near0 = 0.0;
    if (spec.r <= 2.05) {
      delta0 = std::min(0.5 / static_cast<double>(spec.n), 0.01);
      while (near_zero_l1_bound(spec.r, spec.n, delta0) > 0.2 * tol_int && delta0 > 1e-300) {
        delta0 *= 0.5;
      }
      near0 = near_zero_l1_bound(spec.r, spec.n, delta0);
    }

    // --- scan
    std::int64_t grid = 4096;
    while (grid < (1 << 21) &&
           (grid < 16 * spec.n ||
            osc_cell(spec, kPi / static_cast<double>(grid), std::max(delta0, 1e-9)) >
                0.02 * v_est)) {
      grid *= 2;
    }
    std::int64_t k_s = spec.n;
    while (k_s < (1 << 21) &&
           point_bound(spec, k_s, std::max(delta0, kTwoPi / static_cast<double>(grid))) >
               1e-4 * v_est) {
      k_s *= 2;
    }
    const Scan scan = make_scan(spec, k_s, grid);

    // --- sign changes outside the excluded apex
    const double lo_t = delta0, hi_t = kTwoPi - delta0;
    std::vector<double> boundaries;
    boundaries.push_back(lo_t);
    std::int64_t sign_changes = 0;
    for (std::int64_t i = 0; i < grid; ++i) {
      const double ta = scan.t_at(i);
      const double tb = ta + scan.h;
      if (tb <= lo_t || ta >= hi_t) continue;
      const double va = scan.vals[static_cast<std::size_t>(i)];
      const double vb = scan.vals[static_cast<std::size_t>((i + 1) % grid)];
      if ((va >= 0.0) != (vb >= 0.0)) {
        ++sign_changes;
        const double z = bisect_zero(spec, k_s, std::max(ta, lo_t), std::min(tb, hi_t), va);
        if (z > boundaries.back() + 1e-13 && z < hi_t - 1e-13) boundaries.push_back(z);
      }
    }
    boundaries.push_back(hi_t);
    if (sign_changes > std::int64_t{64} * kTruncationCap) {
      throw consistency_error("l1_norm: grid aliasing suspected (too many sign changes)");
    }
    const auto n_pieces = static_cast<double>(boundaries.size() - 1);

    // --- working truncation sized so the summed per-piece truncation bounds
    // meet their budget (bounds are cheap; no series evaluations here)
    const auto trunc_sum_at = [&](std::int64_t k) {
      const double uniform_piece =
          2.0 / static_cast<double>(spec.n) * series::uniform_tail_bound(spec.r + 1.0, spec.n, k);
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
        const double ptw =
            series::pointwise_tail_bound_integrated(spec.r, spec.n, k, boundaries[i]) +
            series::pointwise_tail_bound_integrated(spec.r, spec.n, k, boundaries[i + 1]);
        acc += std::min(uniform_piece, ptw);
      }
      return acc;
    };
    k_q = std::max(k_q, k_s);
    double trunc_total = trunc_sum_at(k_q);
    while (k_q < (std::int64_t{1} << 27) && trunc_total > 0.35 * tol_int) {
      k_q *= 2;
      trunc_total = trunc_sum_at(k_q);
    }

    // --- exact termwise integration of each constant-sign piece
    NeumaierSum total_abs;
    double round_total = 0.0;
    std::vector<double> anti(boundaries.size());
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
      const auto ev = series::tail_sum(spec.r, spec.n, spec.phi, k_q, boundaries[i], -1);
      anti[i] = ev.value;
      round_total += series::eval_round_bound(ev.abs_sum);
    }
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
      total_abs.add(std::abs(anti[i + 1] - anti[i]));
    }

    // --- dip certification: a same-sign cell may hide an excursion of the
    // opposite sign; bound its mass by oscillation minus endpoint margin.
    struct Cell {
      double a, b;
      double va_lo, vb_lo;  // |g| minus slack at the endpoints
    };
    const auto cell_mass = [&](const Cell& c) {
      const double depth = osc_cell(spec, c.b - c.a, seg_dist_to_zero(c.a, c.b)) -
                           std::min(c.va_lo, c.vb_lo);
      return depth <= 0.0 ? 0.0 : depth * (c.b - c.a);
    };
    std::vector<Cell> work;
    for (std::int64_t i = 0; i < grid; ++i) {
      const double ta = std::max(scan.t_at(i), lo_t);
      const double tb = std::min(scan.t_at(i) + scan.h, hi_t);
      if (tb <= ta) continue;
      const double va = std::max(
          0.0, std::abs(scan.vals[static_cast<std::size_t>(i)]) - scan_slack(spec, scan, i));
      const double vb =
          std::max(0.0, std::abs(scan.vals[static_cast<std::size_t>((i + 1) % grid)]) -
                            scan_slack(spec, scan, (i + 1) % grid));
      Cell c{ta, tb, va, vb};
      if (cell_mass(c) > 0.0) work.push_back(c);
    }
    const auto eval_abs_lo = [&](double t) {
      const PointEval pe =
          eval_point(spec, t, std::max(1e-3 * tol_int, 1e-14), 1 << 21, /*allow_skip=*/true);
      if (!std::isfinite(pe.slack)) return 0.0;
      return std::max(0.0, std::abs(pe.value) - pe.slack);
    };
    double dip_total = 0.0;
    for (int round = 0; round < 48; ++round) {
      double pending = 0.0;
      for (const Cell& c : work) pending += cell_mass(c);
      if (work.empty() || dip_total + pending <= 0.25 * tol_int) {
        dip_total += pending;
        work.clear();
        break;
      }
      std::vector<Cell> next;
      for (const Cell& c : work) {
        const double mass = cell_mass(c);
        if (mass <= 0.0) continue;
        const double w = c.b - c.a;
        if (mass <= 0.05 * tol_int / static_cast<double>(work.size()) || w <= 4e-13) {
          dip_total += mass;
          continue;
        }
        const double mid = 0.5 * (c.a + c.b);
        const double vm = eval_abs_lo(mid);
        next.push_back({c.a, mid, c.va_lo, vm});
        next.push_back({mid, c.b, vm, c.vb_lo});
      }
      work.swap(next);
    }
    for (const Cell& c : work) dip_total += cell_mass(c);

    // --- assemble the enclosure
    const double zero_slop =
        2e-13 * n_pieces * series::deriv_coeff_sum_bound(spec.r, spec.n, k_q);
    const double lo_val = total_abs.value() - trunc_total - round_total - zero_slop;
    const double hi_val = total_abs.value() + trunc_total + round_total + zero_slop +
                          2.0 * dip_total + near0;
    out.value = 0.5 * (lo_val + hi_val);
    out.cert = 0.5 * (hi_val - lo_val);
    out.certified = out.cert <= rel_tol * out.value;
    if (out.certified) return out;

    tol_int = rel_tol * std::max(v_floor, out.value - out.cert) * 0.9;
    k_q *= 4;
  }
  return out;
}

}  // namespace

MaxResult global_max_abs(const TailKernel& kernel, double rel_tol) {
  if (!(rel_tol >= 1e-12 && rel_tol <= 1e-2)) {
    throw domain_error("global_max_abs: rel_tol must lie in [1e-12, 1e-2]");
  }
  const SupCoreResult res = sup_core(make_spec(kernel.params), rel_tol);
  // sup_core certifies against the infinite tail; shifting the statement to
  // the finite g_m costs at most the kernel's uniform bound.
  return MaxResult{res.t_star, res.value, res.cert + kernel.eps_m};
}

L1Result l1_norm(const TailKernel& kernel, double rel_tol) {
  if (!(rel_tol >= 1e-12 && rel_tol <= 1e-2)) {
    throw domain_error("l1_norm: rel_tol must lie in [1e-12, 1e-2]");
  }
  const L1CoreResult res = l1_core(make_spec(kernel.params), rel_tol);

  // |Int|g| - Int|g_m|| <= Int|g - g_m|, optimized between the uniform bound
  // near the apex and the Abel bound elsewhere.
  const double t_unif = series::uniform_tail_bound(kernel.params.r, kernel.params.n, kernel.m);
  const double a_m = std::pow(
      static_cast<double>(kernel.params.n) / (static_cast<double>(kernel.m) + 1.0),
      kernel.params.r);
  double adjust = kTwoPi * t_unif;
  for (double delta = 1e-12; delta < 1.6; delta *= 2.0) {
    adjust = std::min(adjust,
                      2.0 * delta * t_unif - 4.0 * a_m * std::log(std::tan(0.25 * delta)));
  }
  return L1Result{res.value, res.cert + adjust};
}

NormalizedDeviation exact_deviation(const ClassParams& params, double rel_tol) {
  if (!(rel_tol >= 1e-12 && rel_tol <= 1e-2)) {
    throw domain_error("exact_deviation: rel_tol must lie in [1e-12, 1e-2]");
  }

  NormalizedDeviation out{};
  const Spec spec = make_spec(params);
  if (params.p == Metric::L1) {
    require_oracle_r(params.r);
    const SupCoreResult res = sup_core(spec, rel_tol);
    if (!res.certified) {
      throw accuracy_error("exact_deviation: sup-norm certificate wider than requested",
                           res.value / kPi, res.cert / kPi);
    }
    out.value = res.value / kPi;
    out.half_width = res.cert / kPi;
    out.method = OracleMethod::supnorm_oracle;
  } else {
    if (!(params.r >= 1.0)) {
      throw domain_error("exact_deviation: the integral oracle requires r >= 1");
    }
    const L1CoreResult res = l1_core(spec, rel_tol);
    if (!res.certified) {
      throw accuracy_error("exact_deviation: L1 certificate wider than requested",
                           res.value / kPi, res.cert / kPi);
    }
    out.value = res.value / kPi;
    out.half_width = res.cert / kPi;
    out.method = OracleMethod::l1_oracle;
  }
  out.log_absolute = std::log(out.value) - params.r * std::log(static_cast<double>(params.n));
  return out;
}

}  // namespace wn
