#pragma once

#include <complex>
#include <vector>

namespace rqw {

inline constexpr double kPi = 3.14159265358979323846;

/// Scaling parameter of the bounded Chebyshev filter for a given step count.
///
/// `gamma` is 1/cosh(arccosh(1/sqrt(eps)) / h), so that T_h(1/gamma) equals
/// 1/sqrt(eps). Everything is evaluated in real hyperbolic form.
struct GammaParams {
  double epsilon = 1.0;
  int h = 1;
  double gamma = 1.0;
  double inv_gamma = 1.0;
};

GammaParams gamma_params(int h, double epsilon);

/// Chebyshev polynomial of the first kind, T_n(x), for any real x.
double chebyshev_t(int n, double x);

/// arccot with range (0, pi); continuous through x = 0 and finite at +-inf.
double arccot(double x);

/// 2 arccot(tan(k pi / grid) sqrt(1 - gamma^2)), in [0, 2 pi].
double filter_angle(int k, int grid, double gamma);

/// A sequence of h phases together with their h-1 consecutive differences.
struct PhaseSequence {
  int h = 0;
  std::vector<double> diffs;   // diffs[k] = values[k+1] - values[k]
  std::vector<double> values;  // values[0] is the anchor

  static PhaseSequence from_diffs(std::vector<double> diffs, double anchor = 0.0);
};

/// Phase sequence whose quasi-Chebyshev recurrence collapses to
/// T_h(x/gamma)/T_h(1/gamma). The k-th difference (k = 1..h-1) is
/// (-1)^k pi - 2 arccot(tan(k pi/h) sqrt(1 - gamma^2)).
PhaseSequence chebyshev_phase_sequence(int h, double epsilon, double anchor = 0.0);

/// Evaluates the complex three-term recurrence
///   a_k = x (1 + e^{-i d}) a_{k-1} - e^{-i d} a_{k-2},  d = values[k-1] - values[k-2],
/// with a_0 = 1, a_1 = x, and returns a_h. Requires odd h >= 3.
std::complex<double> quasi_chebyshev(int h, double x, const PhaseSequence& phases);

}  // namespace rqw
