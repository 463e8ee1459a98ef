#include "rqw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rqw/fullspace.hpp"
#include "rqw/polynomials.hpp"
#include "rqw/reduced.hpp"

namespace rqw {

namespace {

void check_h(int h, const char* where) {
  if (h < 3) {
    throw std::invalid_argument(std::string(where) + ": h must be >= 3, got " +
                                std::to_string(h));
  }
}

void check_ratio(double r, const char* where) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw std::invalid_argument(std::string(where) + ": ratio must lie in (0, 1]");
  }
}

// T_n(sqrt(1 - ratio) / gamma)^2 with gamma taken from the n-step grid.
double scaled_t2(int n, double epsilon, double ratio) {
  const GammaParams g = gamma_params(n, epsilon);
  const double t = chebyshev_t(n, std::sqrt(1.0 - ratio) * g.inv_gamma);
  return t * t;
}

}  // namespace

double closed_form_ph_one_side(int h, double epsilon, double ratio) {
  check_h(h, "closed_form_ph_one_side");
  check_ratio(ratio, "closed_form_ph_one_side");
  if (h % 2 == 1) return 1.0 - epsilon * scaled_t2(h, epsilon, ratio);
  return 1.0 - epsilon / 2.0 *
                   (scaled_t2(h + 1, epsilon, ratio) + scaled_t2(h - 1, epsilon, ratio));
}

double closed_form_ph_two_sides(int h, double epsilon, double ratio_l, double ratio_r) {
  check_h(h, "closed_form_ph_two_sides");
  check_ratio(ratio_l, "closed_form_ph_two_sides");
  check_ratio(ratio_r, "closed_form_ph_two_sides");
  const double e2 = epsilon * epsilon;
  if (h % 2 == 1) {
    return 1.0 - e2 * scaled_t2(h, epsilon, ratio_l) * scaled_t2(h, epsilon, ratio_r);
  }
  const double cross =
      scaled_t2(h + 1, epsilon, ratio_l) * scaled_t2(h - 1, epsilon, ratio_r) +
      scaled_t2(h + 1, epsilon, ratio_r) * scaled_t2(h - 1, epsilon, ratio_l);
  return 1.0 - e2 / 2.0 * cross;
}

double closed_form_ph(int h, double epsilon, int n_left, int n_right, int n_l, int n_r) {
  if (n_l > 0 && n_r > 0) {
    return closed_form_ph_two_sides(h, epsilon, double(n_l) / n_left, double(n_r) / n_right);
  }
  if (n_l > 0) return closed_form_ph_one_side(h, epsilon, double(n_l) / n_left);
  if (n_r > 0) return closed_form_ph_one_side(h, epsilon, double(n_r) / n_right);
  throw std::invalid_argument("closed_form_ph: no marked vertices");
}

RobustnessReport robustness_check(int n_left, int n_right, int n_l, int n_r, double epsilon,
                                  int h_max, ScheduleKind kind, double slack) {
  const auto scenario = MarkingScenario::from_counts(n_l, n_r);
  RobustnessReport report;
  report.bound = std::max(3, step_bound(n_left, n_right, scenario, epsilon));
  report.h_max = h_max;
  if (h_max < report.bound) {
    throw std::invalid_argument("robustness_check: h_max " + std::to_string(h_max) +
                                " is below the step bound " + std::to_string(report.bound));
  }
  report.floor = scenario.kind == MarkingKind::kTwoSides ? 1.0 - epsilon * epsilon
                                                         : 1.0 - epsilon;
  const ReducedModel model = ReducedModel::build(n_left, n_right, n_l, n_r);

  std::vector<double> osc;
  if (kind == ScheduleKind::kOscillatory) {
    for (const auto& [h, p] : run_reduced(model, oscillatory_schedule(h_max)).series.entries) {
      osc.push_back(p);
    }
  }
  for (int h = report.bound; h <= h_max; ++h) {
    const double p = kind == ScheduleKind::kRobust ? robust_probability(model, h, epsilon)
                                                   : osc[h];
    if (p < report.min_p) {
      report.min_p = p;
      report.argmin_h = h;
    }
    if (p < report.floor - slack) report.violations.push_back(h);
  }
  return report;
}

std::vector<ComparisonRow> compare_series(int n_left, int n_right, int n_l, int n_r,
                                          double epsilon, int h_max) {
  check_h(h_max, "compare_series");
  const ReducedModel model = ReducedModel::build(n_left, n_right, n_l, n_r);
  const auto osc = run_reduced(model, oscillatory_schedule(h_max)).series.entries;
  std::vector<ComparisonRow> rows;
  for (int h = 3; h <= h_max; ++h) {
    rows.push_back({h, robust_probability(model, h, epsilon), osc[h].second,
                    closed_form_ph(h, epsilon, n_left, n_right, n_l, n_r)});
  }
  return rows;
}

CalibrationResult calibrate_convention(double tolerance) {
  struct Case {
    int nl, nr, ml, mr;
  };
  const Case cases[] = {{5, 4, 1, 0}, {6, 3, 0, 2}, {4, 5, 2, 1}, {7, 6, 3, 2}};
  const double eps = 0.1;
  CalibrationResult out;
  for (BetaConvention c : {BetaConvention::kReflected, BetaConvention::kSwappedParity,
                           BetaConvention::kUnnegated}) {
    double worst = 0.0;
    for (const Case& k : cases) {
      const auto inst = BipartiteInstance::from_counts(k.nl, k.nr, k.ml, k.mr);
      for (int h = 3; h <= 9; ++h) {
        const double sim = run(inst, build_schedule(h, eps, c)).series.entries.back().second;
        worst = std::max(worst, std::abs(sim - closed_form_ph(h, eps, k.nl, k.nr, k.ml, k.mr)));
      }
    }
    out.errors.emplace_back(c, worst);
    if (!out.selected && worst <= tolerance) out.selected = c;
  }
  return out;
}

}  // namespace rqw
