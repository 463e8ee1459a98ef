#include "rqw/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rqw {

std::string_view to_string(BetaConvention c) {
  switch (c) {
    case BetaConvention::kReflected:
      return "reflected";
    case BetaConvention::kSwappedParity:
      return "swapped-parity";
    case BetaConvention::kUnnegated:
      return "unnegated";
  }
  return "unknown";
}

std::optional<BetaConvention> parse_convention(std::string_view name) {
  if (name == "reflected") return BetaConvention::kReflected;
  if (name == "swapped-parity") return BetaConvention::kSwappedParity;
  if (name == "unnegated") return BetaConvention::kUnnegated;
  return std::nullopt;
}

namespace {

double coin_angle(int k, int grid, const GammaParams& g) {
  return filter_angle(k, grid, g.gamma);
}

void fill_betas(AngleSchedule& s) {
  const int h = s.h;
  auto alpha = [&](int k) { return s.alphas[k - 1]; };
  auto set_beta = [&](int j, double v) {
    if (j >= 1 && j <= h - 1) s.betas[j - 1] = v;
  };
  const bool odd = s.parity == Parity::kOdd;
  switch (s.convention) {
    case BetaConvention::kReflected:
      for (int j = 1; j <= h - 1; ++j) set_beta(j, -alpha(h + 1 - j));
      break;
    case BetaConvention::kSwappedParity:
      if (odd) {
        for (int k = 2; k <= h - 1; k += 2) set_beta(h + 2 - k, -alpha(k));
        for (int k = 3; k <= h; k += 2) set_beta(h - k, -alpha(k));
      } else {
        for (int j = 1; j <= h - 1; ++j) set_beta(j, -alpha(h + 1 - j));
      }
      break;
    case BetaConvention::kUnnegated:
      if (odd) {
        for (int j = 2; j <= h - 1; j += 2) set_beta(j, alpha(h + 2 - j));
        for (int j = 1; j <= h - 2; j += 2) set_beta(j, alpha(h - j));
      } else {
        for (int j = 1; j <= h - 1; ++j) set_beta(j, alpha(h + 1 - j));
      }
      break;
  }
}

}  // namespace

AngleSchedule build_schedule(int h, double epsilon, BetaConvention convention) {
  if (h < 3) {
    throw std::invalid_argument("build_schedule: h must be >= 3 (got " + std::to_string(h) +
                                ")");
  }
  AngleSchedule s;
  s.h = h;
  s.epsilon = epsilon;
  s.convention = convention;
  s.parity = (h % 2 == 1) ? Parity::kOdd : Parity::kEven;
  s.alphas.assign(h, 0.0);
  s.betas.assign(h, 0.0);

  if (s.parity == Parity::kOdd) {
    s.gamma = gamma_params(h, epsilon);
    for (int k = 2; k <= h; ++k) {
      const int m = (k % 2 == 0) ? k : k - 1;
      s.alphas[k - 1] = coin_angle(m, h, s.gamma);
    }
  } else {
    s.gamma = gamma_params(h + 1, epsilon);
    s.gamma_minus = gamma_params(h - 1, epsilon);
    for (int k = 2; k <= h; ++k) {
      s.alphas[k - 1] = (k % 2 == 0) ? coin_angle(k, h + 1, s.gamma)
                                     : coin_angle(k - 1, h - 1, *s.gamma_minus);
    }
  }
  fill_betas(s);
  return s;
}

AngleSchedule oscillatory_schedule(int h) {
  if (h < 1) {
    throw std::invalid_argument("oscillatory_schedule: h must be >= 1");
  }
  AngleSchedule s;
  s.h = h;
  s.epsilon = 1.0;
  s.parity = (h % 2 == 1) ? Parity::kOdd : Parity::kEven;
  s.oscillatory = true;
  s.alphas.assign(h, kPi);
  s.betas.assign(h, kPi);
  return s;
}

MarkingScenario MarkingScenario::from_counts(int n_l, int n_r) {
  MarkingScenario m;
  m.n_l = n_l;
  m.n_r = n_r;
  if (n_l > 0 && n_r > 0) {
    m.kind = MarkingKind::kTwoSides;
  } else if (n_l > 0 || n_r > 0) {
    m.kind = MarkingKind::kOneSide;
  } else {
    m.kind = MarkingKind::kUnknown;
  }
  return m;
}

double step_bound_real(int n_left, int n_right, const MarkingScenario& scenario,
                       double epsilon) {
  if (n_left < 1 || n_right < 1) {
    throw std::invalid_argument("step_bound: side sizes must be positive");
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("step_bound: epsilon must lie in (0, 1]");
  }
  const double factor = std::log(2.0 / std::sqrt(epsilon));
  const auto check_count = [](int n, int size) {
    if (n < 0 || n > size) {
      throw std::invalid_argument("step_bound: marked count outside [0, side size]");
    }
  };
  switch (scenario.kind) {
    case MarkingKind::kUnknown:
      return factor * std::max(std::sqrt(double(n_left)), std::sqrt(double(n_right))) + 1.0;
    case MarkingKind::kOneSide: {
      check_count(scenario.n_l, n_left);
      check_count(scenario.n_r, n_right);
      if ((scenario.n_l > 0) == (scenario.n_r > 0)) {
        throw std::invalid_argument(
            "step_bound: one-side marking needs exactly one nonzero marked count");
      }
      const double ratio = scenario.n_l > 0 ? double(n_left) / scenario.n_l
                                            : double(n_right) / scenario.n_r;
      return factor * std::sqrt(ratio) + 1.0;
    }
    case MarkingKind::kTwoSides: {
      check_count(scenario.n_l, n_left);
      check_count(scenario.n_r, n_right);
      if (scenario.n_l < 1 || scenario.n_r < 1) {
        throw std::invalid_argument("step_bound: two-sides marking needs n_l, n_r >= 1");
      }
      const double worst = std::max(std::sqrt(double(n_left) / scenario.n_l),
                                    std::sqrt(double(n_right) / scenario.n_r));
      return factor * worst + 1.0;
    }
  }
  throw std::invalid_argument("step_bound: unknown marking kind");
}

int step_bound(int n_left, int n_right, const MarkingScenario& scenario, double epsilon) {
  const double x = step_bound_real(n_left, n_right, scenario, epsilon);
  return std::max(1, static_cast<int>(std::ceil(x)));
}

}  // namespace rqw
