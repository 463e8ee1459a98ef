#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "rqw/schedule.hpp"

namespace rqw {

using Complex = std::complex<double>;

/// Complete bipartite graph K_{N_l,N_r} with explicit marked vertex ids per side.
struct BipartiteInstance {
  int n_left = 0;
  int n_right = 0;
  std::vector<int> marked_left;   // ids in [0, n_left)
  std::vector<int> marked_right;  // ids in [0, n_right)

  /// Marks vertices 0..n_l-1 on the left and 0..n_r-1 on the right.
  static BipartiteInstance from_counts(int n_left, int n_right, int n_l, int n_r);

  int count_left() const { return static_cast<int>(marked_left.size()); }
  int count_right() const { return static_cast<int>(marked_right.size()); }
  std::size_t arc_count() const { return 2 * std::size_t(n_left) * std::size_t(n_right); }

  /// Throws std::invalid_argument on out-of-range or duplicate ids.
  void validate() const;
};

/// Amplitudes over the directed arcs of K_{N_l,N_r}.
///
/// Arc (u, v) with u on the left has index u * N_r + v; arc (u, v) with u on
/// the right has index N_l * N_r + u * N_l + v.
class StateVector {
 public:
  StateVector(int n_left, int n_right);

  int n_left() const { return n_left_; }
  int n_right() const { return n_right_; }
  std::size_t size() const { return amps_.size(); }

  std::size_t left_arc(int u, int v) const { return std::size_t(u) * n_right_ + v; }
  std::size_t right_arc(int u, int v) const {
    return std::size_t(n_left_) * n_right_ + std::size_t(u) * n_left_ + v;
  }

  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  std::vector<Complex>& amplitudes() { return amps_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }

  double squared_norm() const;

 private:
  int n_left_;
  int n_right_;
  std::vector<Complex> amps_;
};

enum class SeriesMethod { kRobust, kOscillatory, kClosedForm };

struct SuccessSeries {
  SeriesMethod method = SeriesMethod::kRobust;
  std::vector<std::pair<int, double>> entries;  // (h, P_h), h strictly increasing
};

StateVector initial_state(const BipartiteInstance& instance);

/// Flip-flop shift: (u, v) -> (v, u).
StateVector apply_shift(StateVector state);

/// Per-vertex coin (1 - e^{-i alpha}) |s_u><s_u| - I.
StateVector apply_coin(StateVector state, double alpha);

/// Phase e^{i beta} on every arc leaving a marked vertex.
StateVector apply_oracle(StateVector state, double beta, const BipartiteInstance& instance);

/// Probability that the two-register measurement returns a marked vertex:
/// sum of |amp(u, v)|^2 over arcs with u or v marked.
double success_probability(const StateVector& state, const BipartiteInstance& instance);

struct FullRun {
  StateVector state;
  SuccessSeries series;  // entry h = 0 is the initial state, then one per step
};

/// Applies S C(alpha_k) Q(beta_k) for k = 1..h. Throws InvariantError when
/// the norm drifts by more than 1e-10.
FullRun run(const BipartiteInstance& instance, const AngleSchedule& schedule);

namespace dense {

/// Row-major dense complex matrix, used only by the reference simulator.
struct Matrix {
  std::size_t dim = 0;
  std::vector<Complex> data;

  explicit Matrix(std::size_t n) : dim(n), data(n * n) {}
  Complex& operator()(std::size_t r, std::size_t c) { return data[r * dim + c]; }
  Complex operator()(std::size_t r, std::size_t c) const { return data[r * dim + c]; }
};

/// Reference operators built entry by entry from their definitions over an
/// explicit arc list. Independent of the structured kernels above.
Matrix shift_matrix(const BipartiteInstance& instance);
Matrix coin_matrix(const BipartiteInstance& instance, double alpha);
Matrix oracle_matrix(const BipartiteInstance& instance, double beta);

std::vector<Complex> multiply(const Matrix& m, const std::vector<Complex>& v);

/// Naive dense-matrix simulation; limited to 2 N_l N_r <= 512.
SuccessSeries run_dense(const BipartiteInstance& instance, const AngleSchedule& schedule);

inline constexpr std::size_t kMaxDenseArcs = 512;

}  // namespace dense

}  // namespace rqw
