#include "rqw/polynomials.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rqw {

GammaParams gamma_params(int h, double epsilon) {
  if (h < 1) {
    throw std::invalid_argument("gamma_params: h must be >= 1, got " + std::to_string(h));
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("gamma_params: epsilon must lie in (0, 1]");
  }
  GammaParams p;
  p.epsilon = epsilon;
  p.h = h;
  if (epsilon == 1.0) {
    return p;
  }
  // cos(arccos(1/sqrt(eps))/h) with an argument above 1 is cosh(arccosh(.)/h).
  p.inv_gamma = std::cosh(std::acosh(1.0 / std::sqrt(epsilon)) / h);
  p.gamma = 1.0 / p.inv_gamma;
  return p;
}

double chebyshev_t(int n, double x) {
  if (n < 0) {
    throw std::invalid_argument("chebyshev_t: negative degree");
  }
  if (n == 0) return 1.0;
  if (n == 1) return x;
  if (std::abs(x) <= 1.0) {
    return std::cos(n * std::acos(x));
  }
  if (x > 1.0) {
    return std::cosh(n * std::acosh(x));
  }
  const double mag = std::cosh(n * std::acosh(-x));
  return (n % 2 == 0) ? mag : -mag;
}

double arccot(double x) { return kPi / 2.0 - std::atan(x); }

PhaseSequence PhaseSequence::from_diffs(std::vector<double> diffs, double anchor) {
  PhaseSequence seq;
  seq.h = static_cast<int>(diffs.size()) + 1;
  seq.values.reserve(diffs.size() + 1);
  seq.values.push_back(anchor);
  for (double d : diffs) {
    seq.values.push_back(seq.values.back() + d);
  }
  seq.diffs = std::move(diffs);
  return seq;
}

double filter_angle(int k, int grid, double gamma) {
  const double scale = std::sqrt(1.0 - gamma * gamma);
  // tan(k pi / grid) is treated as +-inf past 1e15.
  const double t = std::tan(k * kPi / grid);
  if (std::abs(t) > 1e15) {
    if (scale == 0.0) return kPi;
    return (t > 0.0) ? 0.0 : 2.0 * kPi;
  }
  return 2.0 * arccot(t * scale);
}

PhaseSequence chebyshev_phase_sequence(int h, double epsilon, double anchor) {
  if (h < 2) {
    throw std::invalid_argument("chebyshev_phase_sequence: h must be >= 2");
  }
  const GammaParams g = gamma_params(h, epsilon);
  std::vector<double> diffs;
  diffs.reserve(h - 1);
  for (int k = 1; k <= h - 1; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    diffs.push_back(sign * kPi - filter_angle(k, h, g.gamma));
  }
  return PhaseSequence::from_diffs(std::move(diffs), anchor);
}

std::complex<double> quasi_chebyshev(int h, double x, const PhaseSequence& phases) {
  if (h < 3 || h % 2 == 0) {
    throw std::invalid_argument("quasi_chebyshev: h must be an odd integer >= 3, got " +
                                std::to_string(h));
  }
  if (phases.h != h || static_cast<int>(phases.values.size()) != h) {
    throw std::invalid_argument("quasi_chebyshev: phase sequence length does not match h");
  }
  using C = std::complex<double>;
  C prev{1.0, 0.0};
  C cur{x, 0.0};
  for (int k = 2; k <= h; ++k) {
    const double d = phases.values[k - 1] - phases.values[k - 2];
    const C w = std::polar(1.0, -d);
    const C next = x * (1.0 + w) * cur - w * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace rqw
