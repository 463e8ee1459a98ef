#include "rqw/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rqw/errors.hpp"
#include "rqw/polynomials.hpp"

namespace rqw {

namespace {

using C = std::complex<double>;
constexpr C kI{0.0, 1.0};

C phase(double theta) { return std::polar(1.0, theta); }

// Coin restricted to a 2x2 block: (1 - e^{-ia}) |s><s| - I with |s> written
// in the (marked, unmarked) neighbour basis.
Eigen::Matrix2cd coin_block(double alpha, const SideAngles& w) {
  const C f = 1.0 - phase(-alpha);
  Eigen::Matrix2cd m;
  m << f * (1.0 - w.cos_omega) / 2.0 - 1.0, f * w.sin_omega / 2.0,
      f * w.sin_omega / 2.0, f * (1.0 + w.cos_omega) / 2.0 - 1.0;
  return m;
}

Eigen::Matrix2cd mixer_block(double theta, const SideAngles& w) {
  Eigen::Matrix2cd m;
  m << w.cos_half, -kI * phase(theta) * w.sin_half,
      -kI * phase(-theta) * w.sin_half, w.cos_half;
  return m;
}

// dim 8: blocks (0,1),(2,3),(4,5),(6,7) act with omega_2, omega_1, omega_2, omega_1.
template <typename BlockFn>
ReducedMatrix block_diagonal8(const ReducedModel& m, BlockFn block) {
  ReducedMatrix out = ReducedMatrix::Zero(8, 8);
  const SideAngles* sides[4] = {&m.right, &m.left, &m.right, &m.left};
  for (int b = 0; b < 4; ++b) out.block<2, 2>(2 * b, 2 * b) = block(*sides[b]);
  return out;
}

double max_abs(const ReducedMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

SideAngles SideAngles::from_counts(int size, int marked) {
  if (size < 1 || marked < 0 || marked > size) {
    throw std::invalid_argument("SideAngles: marked count outside [0, size]");
  }
  SideAngles s;
  const double r = double(marked) / size;
  s.cos_omega = 1.0 - 2.0 * r;
  s.sin_omega = 2.0 * std::sqrt(double(marked) * double(size - marked)) / size;
  s.omega = std::atan2(s.sin_omega, s.cos_omega);
  s.cos_half = std::sqrt(1.0 - r);
  s.sin_half = std::sqrt(r);
  return s;
}

ReducedModel ReducedModel::build(int n_left, int n_right, int n_l, int n_r) {
  if (n_left < 1 || n_right < 1) {
    throw std::invalid_argument("ReducedModel: side sizes must be positive");
  }
  if (n_l < 0 || n_l > n_left || n_r < 0 || n_r > n_right) {
    throw std::invalid_argument("ReducedModel: marked counts out of range");
  }
  if (n_l == 0 && n_r == 0) {
    throw std::invalid_argument("ReducedModel: no marked vertices, nothing to search");
  }
  ReducedModel m;
  if (n_l == 0) {
    m.mirrored = true;
    std::swap(n_left, n_right);
    std::swap(n_l, n_r);
  }
  m.n_left = n_left;
  m.n_right = n_right;
  m.n_l = n_l;
  m.n_r = n_r;
  m.dim = (n_r == 0) ? 4 : 8;
  m.left = SideAngles::from_counts(n_left, n_l);
  if (m.dim == 8) m.right = SideAngles::from_counts(n_right, n_r);
  return m;
}

ReducedVector reduced_initial_state(const ReducedModel& m) {
  const double nl = m.n_l, nr = m.n_r, NL = m.n_left, NR = m.n_right;
  const double norm = std::sqrt(2.0 * NL * NR);
  ReducedVector v(m.dim);
  if (m.dim == 4) {
    const double marked = std::sqrt(nl * NR);
    const double rest = std::sqrt(NR * (NL - nl));
    v << marked, marked, rest, rest;
  } else {
    const double ut = std::sqrt(nl * nr);
    const double us = std::sqrt(nl * (NR - nr));
    const double tv = std::sqrt(nr * (NL - nl));
    const double vs = std::sqrt((NL - nl) * (NR - nr));
    v << ut, us, ut, tv, tv, vs, us, vs;
  }
  return v / norm;
}

ReducedVector zero_bar(const ReducedModel& m) {
  ReducedVector v = ReducedVector::Zero(m.dim);
  const double a = 1.0 / std::sqrt(2.0);
  if (m.dim == 4) {
    v(2) = a;
    v(3) = a;
  } else {
    v(5) = a;
    v(7) = a;
  }
  return v;
}

ReducedOperator shift_op(const ReducedModel& m) {
  ReducedMatrix s = ReducedMatrix::Zero(m.dim, m.dim);
  if (m.dim == 4) {
    const int perm[4] = {1, 0, 3, 2};
    for (int i = 0; i < 4; ++i) s(i, perm[i]) = 1.0;
  } else {
    const int perm[8] = {2, 6, 0, 4, 3, 7, 1, 5};
    for (int i = 0; i < 8; ++i) s(i, perm[i]) = 1.0;
  }
  return {OperatorKind::kS, 0.0, s};
}

ReducedOperator oracle_op(const ReducedModel& m, double beta) {
  ReducedMatrix q = ReducedMatrix::Identity(m.dim, m.dim);
  const int marked = (m.dim == 4) ? 1 : 4;
  for (int i = 0; i < marked; ++i) q(i, i) = phase(beta);
  return {OperatorKind::kQ, beta, q};
}

ReducedOperator coin_op(const ReducedModel& m, double alpha) {
  if (m.dim == 8) {
    return {OperatorKind::kC, alpha,
            block_diagonal8(m, [&](const SideAngles& w) { return coin_block(alpha, w); })};
  }
  ReducedMatrix c = ReducedMatrix::Zero(4, 4);
  c(0, 0) = -phase(-alpha);
  c(3, 3) = -phase(-alpha);
  c.block<2, 2>(1, 1) = coin_block(alpha, m.left);
  return {OperatorKind::kC, alpha, c};
}

ReducedOperator rotation_r(const ReducedModel& m, double theta) {
  ReducedMatrix r = ReducedMatrix::Zero(m.dim, m.dim);
  if (m.dim == 4) {
    r(0, 0) = -phase(-theta / 2);
    r(1, 1) = -phase(theta / 2);
    r(2, 2) = -phase(-theta / 2);
    r(3, 3) = -phase(-theta / 2);
  } else {
    for (int i = 0; i < 8; ++i) r(i, i) = -phase((i % 2 == 0 ? theta : -theta) / 2);
  }
  return {OperatorKind::kR, theta, r};
}

ReducedOperator mixer_a(const ReducedModel& m, double theta) {
  if (m.dim == 8) {
    return {OperatorKind::kA, theta,
            block_diagonal8(m, [&](const SideAngles& w) { return mixer_block(theta, w); })};
  }
  ReducedMatrix a = ReducedMatrix::Identity(4, 4);
  a.block<2, 2>(1, 1) = mixer_block(theta, m.left);
  return {OperatorKind::kA, theta, a};
}

StepOperators reduced_step_operators(const ReducedModel& m, double alpha, double beta) {
  return {shift_op(m), coin_op(m, alpha), oracle_op(m, beta)};
}

std::vector<int> success_indices(const ReducedModel& m) {
  if (m.dim == 4) return {0, 1};
  return {0, 1, 2, 3, 4, 6};
}

double reduced_success_probability(const ReducedModel& m, const ReducedVector& state) {
  double p = 0.0;
  for (int i : success_indices(m)) p += std::norm(state(i));
  return p;
}

ReducedRun run_reduced(const ReducedModel& m, const AngleSchedule& schedule) {
  ReducedRun out{reduced_initial_state(m), {}};
  out.series.method = schedule.oscillatory ? SeriesMethod::kOscillatory : SeriesMethod::kRobust;
  out.series.entries.emplace_back(0, reduced_success_probability(m, out.state));
  const ReducedMatrix s = shift_op(m).matrix;
  for (int k = 1; k <= schedule.h; ++k) {
    const ReducedMatrix step =
        s * coin_op(m, schedule.alpha(k)).matrix * oracle_op(m, schedule.beta(k)).matrix;
    out.state = step * out.state;
    const double norm = out.state.squaredNorm();
    if (std::abs(norm - 1.0) > 1e-10) {
      throw InvariantError("run_reduced: state norm drifted to " + std::to_string(norm) +
                           " at step " + std::to_string(k));
    }
    out.series.entries.emplace_back(k, reduced_success_probability(m, out.state));
  }
  return out;
}

double robust_probability(const ReducedModel& m, int h, double epsilon,
                          BetaConvention convention) {
  return run_reduced(m, build_schedule(h, epsilon, convention)).series.entries.back().second;
}

bool IdentityReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

const IdentityCheck* IdentityReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

IdentityReport verify_identities(const ReducedModel& m, int trials, std::mt19937_64& rng,
                                 double coin_fault) {
  if (trials < 1) {
    throw std::invalid_argument("verify_identities: trials must be >= 1");
  }
  std::uniform_real_distribution<double> angle(-2.0 * kPi, 2.0 * kPi);
  std::uniform_int_distribution<int> word_length(0, 6);
  std::bernoulli_distribution pick_a(0.5);

  const int n = m.dim;
  const ReducedMatrix id = ReducedMatrix::Identity(n, n);
  const ReducedMatrix s = shift_op(m).matrix;
  const ReducedMatrix a_plus = mixer_a(m, kPi / 2).matrix;
  const ReducedMatrix a_minus = mixer_a(m, -kPi / 2).matrix;

  auto random_word = [&]() {
    ReducedMatrix w = id;
    const int len = word_length(rng);
    for (int i = 0; i < len; ++i) {
      const bool use_a = pick_a(rng);
      const double t = angle(rng);
      w = w * (use_a ? mixer_a(m, t).matrix : rotation_r(m, t).matrix);
    }
    return w;
  };

  double d_coin = 0.0, d_qs = 0.0, d_conj = 0.0, d_rr = 0.0, d_words = 0.0;
  for (int t = 0; t < trials; ++t) {
    const double a = angle(rng);
    const double b = angle(rng);
    ReducedMatrix c = coin_op(m, a).matrix;
    c(1, 1) += coin_fault;
    d_coin = std::max(d_coin, max_abs(c - phase(-a / 2) * a_plus * rotation_r(m, a).matrix *
                                              a_minus));
    d_qs = std::max(d_qs, max_abs(oracle_op(m, b).matrix * s +
                                  phase(b / 2) * s * rotation_r(m, b).matrix));
    d_conj = std::max(d_conj, max_abs(mixer_a(m, a + b).matrix -
                                      rotation_r(m, b).matrix * mixer_a(m, a).matrix *
                                          rotation_r(m, -b).matrix));
    d_rr = std::max(d_rr, max_abs(rotation_r(m, a).matrix * rotation_r(m, -a).matrix - id));
    const ReducedMatrix b1 = random_word();
    const ReducedMatrix b2 = random_word();
    d_words = std::max(d_words, max_abs(s * b1 * s * b2 * s - b2 * s * b1));
  }
  const double d_init =
      (reduced_initial_state(m) - a_plus * s * a_plus * zero_bar(m)).cwiseAbs().maxCoeff();

  IdentityReport report;
  report.dim = n;
  report.trials = trials;
  auto add = [&](const char* name, double d) {
    report.checks.push_back({name, d, d <= report.tolerance});
  };
  add("C=ARA", d_coin);
  add("QS=SR", d_qs);
  add("A-conjugate", d_conj);
  add("RR=I", d_rr);
  add("initial", d_init);
  add("SBSBS", d_words);
  return report;
}

namespace {

// Multiplies A(values[0]) first, A(values[h-1]) last.
ReducedMatrix mixer_product(const ReducedModel& m, const PhaseSequence& seq) {
  ReducedMatrix p = ReducedMatrix::Identity(m.dim, m.dim);
  for (double v : seq.values) p = mixer_a(m, v).matrix * p;
  return p;
}

}  // namespace

ReducedVector reduced_product_form(const ReducedModel& m, const AngleSchedule& schedule) {
  if (schedule.oscillatory) {
    throw std::invalid_argument("reduced_product_form: needs a robust schedule");
  }
  const int h = schedule.h;
  const double eps = schedule.epsilon;
  const double anchor = kPi / 2;
  const ReducedMatrix s = shift_op(m).matrix;
  const ReducedMatrix r_alpha1 = rotation_r(m, schedule.alpha(1)).matrix;
  const ReducedMatrix r_beta_h = rotation_r(m, schedule.beta(h)).matrix;
  if (h % 2 == 1) {
    const ReducedMatrix p = mixer_product(m, chebyshev_phase_sequence(h, eps, anchor));
    return s * p * r_alpha1 * s * r_beta_h * p * zero_bar(m);
  }
  const ReducedMatrix psi = mixer_product(m, chebyshev_phase_sequence(h + 1, eps, anchor));
  const ReducedMatrix phi = mixer_product(m, chebyshev_phase_sequence(h - 1, eps, anchor));
  return r_beta_h * phi * r_alpha1 * s * psi * zero_bar(m);
}

double global_phase_distance(const ReducedVector& a, const ReducedVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("global_phase_distance: dimension mismatch");
  }
  const C overlap = a.dot(b);  // <a|b>
  const C align = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : C{1.0, 0.0};
  return (a * align - b).cwiseAbs().maxCoeff();
}

bool ReductionReport::passed() const {
  return state_deviation <= tolerance && probability_deviation <= tolerance &&
         (!stage_one_checked || stage_one_deviation <= tolerance);
}

ReductionReport verify_reduction(const ReducedModel& m, const AngleSchedule& schedule) {
  const ReducedVector direct = run_reduced(m, schedule).state;
  const ReducedVector form = reduced_product_form(m, schedule);
  ReductionReport r;
  r.state_deviation = global_phase_distance(form, direct);
  r.probability_deviation =
      std::abs(reduced_success_probability(m, direct) - reduced_success_probability(m, form));

  if (m.dim == 4 && schedule.h % 2 == 1) {
    // First stage: the A product on |0bar> leaves |us> empty and |vs> at
    // 1/sqrt2, while |sv> carries the normalised Chebyshev value.
    const int h = schedule.h;
    const auto seq = chebyshev_phase_sequence(h, schedule.epsilon, kPi / 2);
    const ReducedVector stage = mixer_product(m, seq) * zero_bar(m);
    const GammaParams g = gamma_params(h, schedule.epsilon);
    const double cheb = std::abs(chebyshev_t(h, m.left.cos_half * g.inv_gamma) /
                                 chebyshev_t(h, g.inv_gamma));
    const double root2 = std::sqrt(2.0);
    r.stage_one_checked = true;
    r.stage_one_deviation = std::max({std::abs(stage(0)), std::abs(std::abs(stage(3)) * root2 - 1.0),
                                      std::abs(std::abs(stage(2)) * root2 - cheb)});
  }
  return r;
}

}  // namespace rqw
