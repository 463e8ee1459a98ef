#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "rqw/analysis.hpp"
#include "rqw/fullspace.hpp"
#include "rqw/polynomials.hpp"
#include "rqw/reduced.hpp"

using namespace rqw;

namespace {

StateVector random_state(int nl, int nr, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  StateVector s(nl, nr);
  for (auto& a : s.amplitudes()) a = {g(rng), g(rng)};
  const double n = std::sqrt(s.squared_norm());
  for (auto& a : s.amplitudes()) a /= n;
  return s;
}

}  // namespace

TEST(Property, QuasiChebyshevGrid) {
  double worst = 0.0;
  for (int h = 3; h <= 51; h += 2) {
    for (double eps : {0.01, 0.1, 0.5, 1.0}) {
      const GammaParams g = gamma_params(h, eps);
      const PhaseSequence seq = chebyshev_phase_sequence(h, eps);
      const double denom = chebyshev_t(h, g.inv_gamma);
      for (int i = 0; i <= 100; ++i) {
        const double x = -1.0 + 0.02 * i;
        const auto a = quasi_chebyshev(h, x, seq);
        worst = std::max(worst, std::abs(a - chebyshev_t(h, x * g.inv_gamma) / denom));
      }
    }
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(Property, ClosedFormBounded) {
  for (int h = 3; h <= 60; ++h) {
    for (double eps : {0.01, 0.1, 0.5, 1.0}) {
      const GammaParams g = gamma_params(h, eps);
      const double top = chebyshev_t(h, g.inv_gamma);
      EXPECT_NEAR(top, 1.0 / std::sqrt(eps), 1e-9 / std::sqrt(eps));
      for (double x = -1.0; x <= 1.0; x += 0.01) {
        const double t = chebyshev_t(h, x * g.inv_gamma);
        EXPECT_LE(std::abs(t), top * (1 + 1e-12));
        // eps T_h^2(x/gamma) <= eps whenever |x/gamma| <= 1
        if (std::abs(x * g.inv_gamma) <= 1.0) EXPECT_LE(eps * t * t, eps + 1e-12);
      }
    }
  }
}

TEST(Property, FullSpaceOperatorsUnitary) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> a(-7, 7);
  std::uniform_int_distribution<int> sz(1, 12);
  for (int t = 0; t < 100; ++t) {
    const int nl = sz(rng), nr = sz(rng);
    const auto inst = BipartiteInstance::from_counts(nl, nr, std::min(nl, 2), std::min(nr, 1));
    const auto s = random_state(nl, nr, rng);
    const double ang = a(rng);
    EXPECT_NEAR(apply_shift(s).squared_norm(), 1.0, 1e-12);
    EXPECT_NEAR(apply_coin(s, ang).squared_norm(), 1.0, 1e-12);
    EXPECT_NEAR(apply_oracle(s, ang, inst).squared_norm(), 1.0, 1e-12);
    const auto back = apply_oracle(apply_oracle(s, ang, inst), -ang, inst);
    const auto twice = apply_shift(apply_shift(s));
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_LE(std::abs(back[i] - s[i]), 1e-12);
      EXPECT_EQ(twice[i], s[i]);
    }
  }
}

TEST(Property, PermutationEquivariance) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const int nl = 3 + t % 5, nr = 2 + t % 7;
    const int ml = 1 + t % nl, mr = t % 3 == 0 ? 0 : 1 + t % nr;
    const auto base = BipartiteInstance::from_counts(nl, nr, ml, mr);
    std::vector<int> pl(nl), pr(nr);
    std::iota(pl.begin(), pl.end(), 0);
    std::iota(pr.begin(), pr.end(), 0);
    std::shuffle(pl.begin(), pl.end(), rng);
    std::shuffle(pr.begin(), pr.end(), rng);
    BipartiteInstance moved{nl, nr, {}, {}};
    for (int u : base.marked_left) moved.marked_left.push_back(pl[u]);
    for (int v : base.marked_right) moved.marked_right.push_back(pr[v]);
    for (const AngleSchedule& s : {build_schedule(7, 0.1), build_schedule(8, 0.3),
                                   oscillatory_schedule(9)}) {
      const auto a = run(base, s).series.entries;
      const auto b = run(moved, s).series.entries;
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i].second, b[i].second, 1e-12);
    }
  }
}

TEST(Property, FullEqualsReducedSampled) {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> sz(1, 50);
  int checked = 0;
  while (checked < 40) {
    const int nl = sz(rng), nr = sz(rng);
    if (nl * nr > 2500) continue;
    const int ml = std::uniform_int_distribution<int>(0, nl)(rng);
    const int mr = std::uniform_int_distribution<int>(0, nr)(rng);
    if (ml + mr == 0) continue;
    const auto inst = BipartiteInstance::from_counts(nl, nr, ml, mr);
    const auto m = ReducedModel::build(nl, nr, ml, mr);
    for (const AngleSchedule& s : {build_schedule(3 + checked % 10, 0.1),
                                   oscillatory_schedule(12)}) {
      const auto a = run(inst, s).series.entries;
      const auto b = run_reduced(m, s).series.entries;
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a[i].second, b[i].second, 1e-10) << nl << 'x' << nr << ' ' << ml << ',' << mr;
      }
    }
    ++checked;
  }
}

TEST(Property, ClosedFormEquivalenceGrid) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> sz(2, 50);
  int points = 0;
  double worst = 0.0;
  for (int h = 3; h <= 20; ++h) {
    for (double eps : {0.05, 0.1, 0.5, 1.0}) {
      // left only, right only, both sides
      for (int kind = 0; kind < 3; ++kind) {
        const int nl = sz(rng), nr = sz(rng);
        const int ml = kind == 1 ? 0 : std::uniform_int_distribution<int>(1, nl)(rng);
        const int mr = kind == 0 ? 0 : std::uniform_int_distribution<int>(1, nr)(rng);
        const double sim = robust_probability(ReducedModel::build(nl, nr, ml, mr), h, eps);
        worst = std::max(worst, std::abs(sim - closed_form_ph(h, eps, nl, nr, ml, mr)));
        ++points;
      }
    }
  }
  EXPECT_GE(points, 200);
  EXPECT_LE(worst, 1e-9);
}

TEST(Property, FloorBeyondBound) {
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<int> sz(2, 400);
  for (int t = 0; t < 30; ++t) {
    const int nl = sz(rng), nr = sz(rng);
    const int ml = std::uniform_int_distribution<int>(1, std::max(1, nl / 4))(rng);
    const int mr = t % 2 ? std::uniform_int_distribution<int>(1, std::max(1, nr / 4))(rng) : 0;
    for (double eps : {0.05, 0.2}) {
      const int bound = std::max(3, step_bound(nl, nr, MarkingScenario::from_counts(ml, mr), eps));
      const auto rep = robustness_check(nl, nr, ml, mr, eps, bound + 40);
      EXPECT_TRUE(rep.passed()) << nl << 'x' << nr << ' ' << ml << ',' << mr << " eps " << eps
                                << " min " << rep.min_p << " at " << rep.argmin_h;
    }
  }
}
