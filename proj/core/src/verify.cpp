#include "wn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wn/estimators.hpp"
#include "wn/format.hpp"
#include "wn/oracle.hpp"
#include "wn/rng.hpp"
#include "wn/special.hpp"

namespace wn {
namespace {

constexpr double kPi = std::numbers::pi;

std::string grid_to_string(const SweepGrid& grid) {
  std::ostringstream os;
  os << "r={";
  for (std::size_t i = 0; i < grid.r_values.size(); ++i) {
    if (i) os << ",";
    os << fmt17(grid.r_values[i]);
  }
  os << "};n={";
  for (std::size_t i = 0; i < grid.n_values.size(); ++i) {
    if (i) os << ",";
    os << grid.n_values[i];
  }
  os << "};beta={";
  for (std::size_t i = 0; i < grid.beta_values.size(); ++i) {
    if (i) os << ",";
    os << fmt17(grid.beta_values[i]);
  }
  os << "};p=" << metric_name(grid.p);
  return os.str();
}

void append_json_check(std::string& out, const Check& c) {
  out += "    {\"name\": \"" + c.name + "\", \"params\": {\"r\": " + fmt17(c.r) +
         ", \"beta\": " + fmt17(c.beta) + ", \"n\": " + std::to_string(c.n) +
         ", \"x\": " + fmt17(c.x) + "}, \"observed\": " + fmt17(c.observed) +
         ", \"bound_lo\": " + fmt17(c.bound_lo) + ", \"bound_hi\": " + fmt17(c.bound_hi) +
         ", \"pass\": " + (c.pass ? "true" : "false") +
         ", \"vacuous\": " + (c.vacuous ? "true" : "false") +
         ", \"errored\": " + (c.errored ? "true" : "false") + "}";
}

}  // namespace

SweepGrid smoke_grid() {
  SweepGrid g;
  g.r_values = {2.5, 3.0, 5.0, 10.0, 30.0};
  g.n_values = {1, 2, 5, 10, 50, 200};
  g.beta_values = {0.0, 0.5, 1.0, 1.5, 2.0, 3.3};
  g.p = Metric::L1;
  return g;
}

SweepGrid full_grid() {
  SweepGrid g;
  g.r_values = {2.2, 2.5, 3.0, 4.0, 5.0, 10.0, 20.0, 30.0, 60.0};
  g.n_values = {1, 2, 3, 5, 10, 20, 50, 100, 200, 500};
  g.beta_values = {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.3, 3.9};
  g.p = Metric::L1;
  return g;
}

SweepGrid constants_grid_thm3() {
  SweepGrid g;
  g.r_values = {2.5, 3.0, 4.0, 6.0, 10.0};
  g.n_values = {5, 10, 50, 200};
  g.beta_values = {0.0, 0.5, 1.0, 1.5};
  g.p = Metric::L1;
  return g;
}

SweepGrid constants_grid_stechkin() {
  SweepGrid g;
  g.r_values = {1.0, 2.0, 5.0, 10.0};
  g.n_values = {1, 5, 20};
  g.beta_values = {0.0, 1.0};
  g.p = Metric::Linf;
  return g;
}

void finalize_report(VerificationReport& report) {
  std::sort(report.checks.begin(), report.checks.end(), [](const Check& a, const Check& b) {
    if (a.r != b.r) return a.r < b.r;
    if (a.n != b.n) return a.n < b.n;
    if (a.beta != b.beta) return a.beta < b.beta;
    if (a.name != b.name) return a.name < b.name;
    return a.x < b.x;
  });
  report.total = static_cast<std::int64_t>(report.checks.size());
  report.passed = 0;
  for (const Check& c : report.checks) {
    if (c.pass) ++report.passed;
  }
}

void merge_report(VerificationReport& base, const VerificationReport& extra) {
  base.checks.insert(base.checks.end(), extra.checks.begin(), extra.checks.end());
  for (const auto& [k, v] : extra.max_empirical_constant) {
    base.max_empirical_constant[k] = v;
  }
}

std::string report_to_json(const VerificationReport& report) {
  std::string out;
  out += "{\n";
  out += "  \"meta\": {\"suite\": \"" + report.meta.suite +
         "\", \"seed\": " + std::to_string(report.meta.seed) +
         ", \"count\": " + std::to_string(report.meta.count) +
         ", \"rel_tol\": " + fmt17(report.meta.rel_tol) + ", \"grid\": \"" + report.meta.grid +
         "\", \"version\": \"" + report.meta.version + "\"},\n";
  out += "  \"checks\": [\n";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    append_json_check(out, report.checks[i]);
    out += (i + 1 < report.checks.size()) ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"summary\": {\"total\": " + std::to_string(report.total) +
         ", \"passed\": " + std::to_string(report.passed) +
         ", \"max_empirical_constant\": {";
  bool first = true;
  for (const auto& [k, v] : report.max_empirical_constant) {
    if (!first) out += ", ";
    first = false;
    out += "\"" + k + "\": " + fmt17(v);
  }
  out += "}}\n}\n";
  return out;
}

VerificationReport run_inequality_suite(std::uint64_t seed, std::int64_t count) {
  if (count < 1) throw domain_error("run_inequality_suite requires count >= 1");

  VerificationReport report;
  report.meta.suite = "inequalities";
  report.meta.seed = seed;
  report.meta.count = count;
  report.meta.grid = "r~U[2.05,60];n~logU{1..10000};x~logU[1e-3,700]";

  SplitMix64 rng(seed);
  const double slack = 1e-13;

  for (std::int64_t i = 0; i < count; ++i) {
    const double r = rng.uniform(2.05, 60.0);
    const std::int64_t n = rng.log_uniform_int(1, 10000);
    const double x = rng.log_uniform(1e-3, 700.0);
    const double nd = static_cast<double>(n);

    // Integral-comparison bracket for the scaled tail sum.
    {
      Check c;
      c.name = "scaled_tail_integral_bracket";
      c.r = r;
      c.n = n;
      c.x = x;
      c.bound_lo = nd / (r - 1.0);
      c.bound_hi = 1.0 + nd / (r - 1.0);
      c.observed = hurwitz_zeta_scaled(r, n);
      const double s = slack * std::max(1.0, c.observed);
      c.pass = (c.bound_lo - s < c.observed) && (c.observed < c.bound_hi + s);
      report.checks.push_back(c);
    }

    // e^{-r/n} <= (1+1/n)^{-r} <= e^{-r/(n+1)}.
    {
      Check c;
      c.name = "exp_pow_bracket";
      c.r = r;
      c.n = n;
      c.x = x;
      c.bound_lo = std::exp(-r / nd);
      c.bound_hi = std::exp(-r / (nd + 1.0));
      c.observed = std::exp(-r * std::log1p(1.0 / nd));
      const double s = slack * std::max(1.0, c.observed);
      c.pass = (c.bound_lo - s <= c.observed) && (c.observed <= c.bound_hi + s);
      report.checks.push_back(c);
    }

    // |1/(1-e^{-r/n'}) - 1| <= 2 e^{-r/n'} on the r >= n'^2 regime
    // (n' = max(1, min(n, floor(sqrt(r)))) keeps the draw in regime).
    {
      const std::int64_t n_regime =
          std::max<std::int64_t>(1, std::min(n, static_cast<std::int64_t>(std::sqrt(r))));
      const double xe = r / static_cast<double>(n_regime);
      Check c;
      c.name = "large_r_geometric_remainder";
      c.r = r;
      c.n = n_regime;
      c.x = x;
      c.observed = std::abs(1.0 / (-std::expm1(-xe)) - 1.0);
      c.bound_lo = 0.0;
      c.bound_hi = 2.0 * std::exp(-xe);
      c.pass = c.observed <= c.bound_hi + slack;
      report.checks.push_back(c);
    }

    // For 2 < r <= sqrt(n')+1: n'/(r(r-2)) >= (r-1)^2/(r(r-2)) > 1.
    {
      const auto n_regime = std::max(
          n, static_cast<std::int64_t>(std::ceil((r - 1.0) * (r - 1.0))));
      const double nr = static_cast<double>(n_regime);
      Check c;
      c.name = "small_r_delta_lower_bound";
      c.r = r;
      c.n = n_regime;
      c.x = x;
      c.observed = nr / (r * (r - 2.0));
      c.bound_lo = (r - 1.0) * (r - 1.0) / (r * (r - 2.0));
      c.bound_hi = c.observed;
      c.pass = (c.observed >= c.bound_lo - slack * c.observed) && (c.bound_lo > 1.0);
      report.checks.push_back(c);
    }

    // 0 < 1/(1-e^{-x}) - 1/x < 1 on (0, 700].
    {
      Check c;
      c.name = "principal_harmonic_gap";
      c.r = r;
      c.n = n;
      c.x = x;
      c.observed = 1.0 / (-std::expm1(-x)) - 1.0 / x;
      c.bound_lo = 0.0;
      c.bound_hi = 1.0;
      c.pass = (c.observed > c.bound_lo) && (c.observed < c.bound_hi);
      report.checks.push_back(c);
    }
  }

  finalize_report(report);
  return report;
}

VerificationReport bracket_conformance(const SweepGrid& grid, double rel_tol) {
  if (grid.r_values.empty() || grid.n_values.empty() || grid.beta_values.empty()) {
    throw domain_error("bracket_conformance requires a non-empty grid");
  }
  for (double r : grid.r_values) {
    if (!(r > 2.0)) throw domain_error("bracket_conformance requires all r > 2");
  }

  VerificationReport report;
  report.meta.suite = "brackets";
  report.meta.rel_tol = rel_tol;
  report.meta.grid = grid_to_string(grid);

  for (double r : grid.r_values) {
    for (std::int64_t n : grid.n_values) {
      const ZetaBracket zb = zeta_form_bracket(ClassParams(r, 0.0, n, Metric::L1));
      for (double beta : grid.beta_values) {
        const ClassParams params(r, beta, n, Metric::L1);
        double value = 0.0, half = 0.0;
        bool errored = false;
        try {
          const NormalizedDeviation dev = exact_deviation(params, rel_tol);
          value = dev.value;
          half = dev.half_width;
        } catch (const std::exception&) {
          errored = true;
        }

        {
          Check c;
          c.name = "zeta_bracket";
          c.r = r;
          c.beta = beta;
          c.n = n;
          c.observed = value;
          c.bound_lo = zb.lo;
          c.bound_hi = zb.hi;
          c.errored = errored;
          const double s = half + 1e-11 * std::abs(zb.hi);
          c.pass = !errored && (value >= zb.lo - s) && (value <= zb.hi + s);
          report.checks.push_back(c);
        }
        {
          const EstimateBreakdown t1 = estimate_thm1(params);
          Check c;
          c.name = "coarse_bracket";
          c.r = r;
          c.beta = beta;
          c.n = n;
          c.observed = value;
          c.bound_lo = *t1.bracket_lo;
          c.bound_hi = *t1.bracket_hi;
          c.errored = errored;
          const double halfwidth = 0.5 * (*t1.bracket_hi - *t1.bracket_lo);
          if (halfwidth >= t1.principal) {
            c.vacuous = true;
            c.pass = !errored;
          } else {
            c.pass = !errored && (value >= c.bound_lo - half) && (value <= c.bound_hi + half);
          }
          report.checks.push_back(c);
        }
        {
          const EstimateBreakdown ts = estimate_thm1_sharp(params);
          Check c;
          c.name = "sharp_bracket";
          c.r = r;
          c.beta = beta;
          c.n = n;
          c.observed = value;
          c.bound_lo = *ts.bracket_lo;
          c.bound_hi = *ts.bracket_hi;
          c.errored = errored;
          if (ts.delta >= ts.principal) {
            c.vacuous = true;
            c.pass = !errored;
          } else {
            c.pass = !errored && (value >= c.bound_lo - half) && (value <= c.bound_hi + half);
          }
          report.checks.push_back(c);
        }
      }
    }
  }

  finalize_report(report);
  return report;
}

double empirical_uniform_constant(const SweepGrid& grid, const std::string& theorem,
                                  double rel_tol) {
  if (grid.r_values.empty() || grid.n_values.empty() || grid.beta_values.empty()) {
    throw domain_error("empirical_uniform_constant requires a non-empty grid");
  }
  if (theorem != "thm3_p1" && theorem != "stechkin_pinf") {
    throw domain_error("empirical_uniform_constant: unknown theorem tag '" + theorem + "'");
  }

  double worst = 0.0;
  for (double r : grid.r_values) {
    for (std::int64_t n : grid.n_values) {
      for (double beta : grid.beta_values) {
        double principal = 0.0, delta = 0.0, value = 0.0;
        if (theorem == "thm3_p1") {
          const ClassParams params(r, beta, n, Metric::L1);
          const EstimateBreakdown t3 = estimate_thm3(params);
          principal = t3.principal;
          delta = t3.delta;
          value = exact_deviation(params, rel_tol).value;
        } else {
          const ClassParams params(r, beta, n, Metric::Linf);
          const EstimateBreakdown st = estimate_stechkin_pinf(params);
          principal = st.principal;
          delta = st.delta;
          value = exact_deviation(params, rel_tol).value;
        }
        worst = std::max(worst, std::abs(value - principal) / delta);
      }
    }
  }
  return worst;
}

}  // namespace wn
