#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rqw/schedule.hpp"

namespace rqw {

/// Success probability of the robust schedule when all marked vertices sit
/// on one side, as a function of the marked fraction ratio = n/N.
double closed_form_ph_one_side(int h, double epsilon, double ratio);

/// Same for marked vertices on both sides.
double closed_form_ph_two_sides(int h, double epsilon, double ratio_l, double ratio_r);

/// Dispatches on the counts: one side when exactly one count is nonzero.
double closed_form_ph(int h, double epsilon, int n_left, int n_right, int n_l, int n_r);

enum class ScheduleKind { kRobust, kOscillatory };

struct RobustnessReport {
  int bound = 0;          // step_bound for the counts
  int h_max = 0;
  double floor = 0.0;     // 1 - eps (one side) or 1 - eps^2 (two sides)
  double min_p = 1.0;
  int argmin_h = 0;
  std::vector<int> violations;  // h with P_h < floor - slack

  bool passed() const { return violations.empty(); }
};

/// Runs the selected schedule for every h in [step_bound, h_max] in the
/// reduced model and compares P_h against the floor with `slack`.
RobustnessReport robustness_check(int n_left, int n_right, int n_l, int n_r, double epsilon,
                                  int h_max, ScheduleKind kind = ScheduleKind::kRobust,
                                  double slack = 1e-9);

struct ComparisonRow {
  int h = 0;
  double p_robust = 0.0;
  double p_oscillatory = 0.0;
  double p_closed_form = 0.0;
};

/// One row per h = 3..h_max from reduced simulation and the closed form.
std::vector<ComparisonRow> compare_series(int n_left, int n_right, int n_l, int n_r,
                                          double epsilon, int h_max);

struct CalibrationResult {
  std::optional<BetaConvention> selected;  // empty when no convention matches
  std::vector<std::pair<BetaConvention, double>> errors;  // max |P_sim - P_closed|
};

/// Runs every beta convention through the full-space simulator on a few
/// small instances and picks the first one that reproduces the closed form
/// within `tolerance` for all of them.
CalibrationResult calibrate_convention(double tolerance = 1e-9);

}  // namespace rqw
