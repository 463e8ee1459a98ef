#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rqw/polynomials.hpp"

namespace rqw {

enum class Parity { kOdd, kEven };

/// How the oracle angles beta_j are derived from the coin angles alpha_k.
///
///  kReflected     beta_j = -alpha_{h+1-j} for j = 1..h-1, both parities.
///  kSwappedParity odd h: beta_j = -alpha_{h+2-j} (odd j >= 3),
///                 beta_j = -alpha_{h-j} (even j); even h as kReflected.
///  kUnnegated     odd h: beta_j = +alpha_{h+2-j} (even j),
///                 beta_j = +alpha_{h-j} (odd j); even h: beta_j = +alpha_{h+1-j}.
///
/// Only kReflected reproduces the closed-form success probability for every
/// h; the other two are kept so the difference stays checkable.
enum class BetaConvention { kReflected, kSwappedParity, kUnnegated };

std::string_view to_string(BetaConvention c);
std::optional<BetaConvention> parse_convention(std::string_view name);

inline constexpr BetaConvention kDefaultConvention = BetaConvention::kReflected;

/// Per-step coin and oracle angles, stored 1-based through alpha()/beta().
struct AngleSchedule {
  int h = 0;
  double epsilon = 1.0;
  Parity parity = Parity::kOdd;
  BetaConvention convention = kDefaultConvention;
  bool oscillatory = false;
  std::vector<double> alphas;  // alphas[k-1] is alpha_k
  std::vector<double> betas;   // betas[k-1] is beta_k
  // Odd h: gamma for h. Even h: gamma_1 for h+1 here, gamma_2 for h-1 below.
  GammaParams gamma;
  std::optional<GammaParams> gamma_minus;

  double alpha(int k) const { return alphas.at(k - 1); }
  double beta(int k) const { return betas.at(k - 1); }
};

/// Robust schedule for h >= 3 steps. alpha_1 and beta_h are free and set to 0.
AngleSchedule build_schedule(int h, double epsilon,
                             BetaConvention convention = kDefaultConvention);

/// The plain quantum walk search: every alpha_k = beta_k = pi.
AngleSchedule oscillatory_schedule(int h);

enum class MarkingKind { kOneSide, kTwoSides, kUnknown };

struct MarkingScenario {
  MarkingKind kind = MarkingKind::kUnknown;
  int n_l = 0;
  int n_r = 0;

  /// one-side when exactly one count is nonzero, two-sides when both are.
  static MarkingScenario from_counts(int n_l, int n_r);
};

/// Real-valued threshold ln(2/sqrt(eps)) * sqrt(...) + 1 before rounding up.
double step_bound_real(int n_left, int n_right, const MarkingScenario& scenario,
                       double epsilon);

/// Smallest integer h meeting the threshold for the given marking scenario.
int step_bound(int n_left, int n_right, const MarkingScenario& scenario, double epsilon);

}  // namespace rqw
