#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rqw/fullspace.hpp"
#include "rqw/schedule.hpp"

namespace rqw {

using ReducedMatrix = Eigen::MatrixXcd;
using ReducedVector = Eigen::VectorXcd;

/// Angles derived from a marked fraction n/N, with cos(omega) = 1 - 2n/N.
struct SideAngles {
  double omega = 0.0;
  double cos_omega = 1.0;
  double sin_omega = 0.0;
  double cos_half = 1.0;  // x = cos(omega/2) = sqrt(1 - n/N)
  double sin_half = 0.0;

  static SideAngles from_counts(int size, int marked);
};

/// Invariant subspace of the walk for a given set of marked counts.
///
/// dim 4 basis (one marked side): |us>, |su>, |sv>, |vs>.
/// dim 8 basis (both sides marked): |ut>, |us>, |tu>, |tv>, |vt>, |vs>, |su>, |sv>.
/// When only the right side is marked the sides are swapped (`mirrored`),
/// so n_l >= 1 always holds inside the model.
struct ReducedModel {
  int dim = 4;
  int n_left = 0;
  int n_right = 0;
  int n_l = 0;
  int n_r = 0;
  bool mirrored = false;
  SideAngles left;   // omega (dim 4) or omega_1 (dim 8)
  SideAngles right;  // omega_2, dim 8 only

  static ReducedModel build(int n_left, int n_right, int n_l, int n_r);
};

enum class OperatorKind { kS, kQ, kC, kR, kA };

struct ReducedOperator {
  OperatorKind kind = OperatorKind::kS;
  double parameter = 0.0;
  ReducedMatrix matrix;
};

ReducedVector reduced_initial_state(const ReducedModel& model);

/// (0,0,1,1)/sqrt2 for dim 4, (0,0,0,0,0,1,0,1)/sqrt2 for dim 8.
ReducedVector zero_bar(const ReducedModel& model);

ReducedOperator shift_op(const ReducedModel& model);
ReducedOperator oracle_op(const ReducedModel& model, double beta);
ReducedOperator coin_op(const ReducedModel& model, double alpha);
ReducedOperator rotation_r(const ReducedModel& model, double theta);
ReducedOperator mixer_a(const ReducedModel& model, double theta);

struct StepOperators {
  ReducedOperator shift;
  ReducedOperator coin;
  ReducedOperator oracle;
};

StepOperators reduced_step_operators(const ReducedModel& model, double alpha, double beta);

/// Basis indices whose label contains a marked class (u or t).
std::vector<int> success_indices(const ReducedModel& model);

double reduced_success_probability(const ReducedModel& model, const ReducedVector& state);

struct ReducedRun {
  ReducedVector state;
  SuccessSeries series;  // entry h = 0 is the initial state
};

/// Applies S C(alpha_k) Q(beta_k) for k = 1..h.
ReducedRun run_reduced(const ReducedModel& model, const AngleSchedule& schedule);

/// Final success probability for a robust schedule of exactly h steps.
double robust_probability(const ReducedModel& model, int h, double epsilon,
                          BetaConvention convention = kDefaultConvention);

struct IdentityCheck {
  std::string name;
  double max_deviation = 0.0;
  bool passed = true;
};

struct IdentityReport {
  int dim = 4;
  int trials = 0;
  double tolerance = 1e-10;
  std::vector<IdentityCheck> checks;

  bool passed() const;
  const IdentityCheck* find(const std::string& name) const;
};

/// Checks, for `trials` random angle draws:
///   C=ARA        C(a) = e^{-ia/2} A(pi/2) R(a) A(-pi/2)
///   QS=SR        Q(b) S = -e^{ib/2} S R(b)
///   A-conjugate  A(a+b) = R(b) A(a) R(-b)
///   RR=I         R(t) R(-t) = I
///   initial      |Psi_0> = A(pi/2) S A(pi/2) |0bar>
///   SBSBS        S B1 S B2 S = B2 S B1 for random A/R words of length <= 6
/// `coin_fault` is added to one coin entry; it exists so tests can check
/// that a broken coin is reported.
IdentityReport verify_identities(const ReducedModel& model, int trials, std::mt19937_64& rng,
                                 double coin_fault = 0.0);

/// The A/R product form of |Psi_h> built from Chebyshev phase sequences
/// anchored at pi/2:
///   odd h:  S P(zeta) R(alpha_1) S R(beta_h) P(zeta) |0bar>
///   even h: R(beta_h) P(phi) R(alpha_1) S P(psi) |0bar>
/// where P(seq) multiplies A(seq_1) first and A(seq_h) last, zeta uses the
/// h grid, psi the h+1 grid and phi the h-1 grid.
ReducedVector reduced_product_form(const ReducedModel& model, const AngleSchedule& schedule);

/// max_i |a_i e^{i phi} - b_i| minimised over the global phase phi
/// (phi aligned with <a|b>).
double global_phase_distance(const ReducedVector& a, const ReducedVector& b);

struct ReductionReport {
  double state_deviation = 0.0;        // direct product vs product form, up to global phase
  double probability_deviation = 0.0;  // |P(direct) - P(form)|
  bool stage_one_checked = false;      // dim 4, odd h
  double stage_one_deviation = 0.0;
  double tolerance = 1e-9;

  bool passed() const;
};

ReductionReport verify_reduction(const ReducedModel& model, const AngleSchedule& schedule);

}  // namespace rqw
