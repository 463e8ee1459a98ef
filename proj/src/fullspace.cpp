#include "rqw/fullspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rqw/errors.hpp"

namespace rqw {

BipartiteInstance BipartiteInstance::from_counts(int n_left, int n_right, int n_l, int n_r) {
  if (n_l < 0 || n_l > n_left || n_r < 0 || n_r > n_right) {
    throw std::invalid_argument("BipartiteInstance: marked counts out of range");
  }
  BipartiteInstance inst;
  inst.n_left = n_left;
  inst.n_right = n_right;
  for (int i = 0; i < n_l; ++i) inst.marked_left.push_back(i);
  for (int i = 0; i < n_r; ++i) inst.marked_right.push_back(i);
  inst.validate();
  return inst;
}

void BipartiteInstance::validate() const {
  if (n_left < 1 || n_right < 1) {
    throw std::invalid_argument("BipartiteInstance: side sizes must be positive");
  }
  auto check = [](const std::vector<int>& ids, int size, const char* side) {
    std::vector<int> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument(std::string("BipartiteInstance: duplicate marked id on ") +
                                  side);
    }
    for (int id : ids) {
      if (id < 0 || id >= size) {
        throw std::invalid_argument(std::string("BipartiteInstance: marked id out of range on ") +
                                    side + ": " + std::to_string(id));
      }
    }
  };
  check(marked_left, n_left, "left");
  check(marked_right, n_right, "right");
}

StateVector::StateVector(int n_left, int n_right)
    : n_left_(n_left), n_right_(n_right), amps_(2 * std::size_t(n_left) * n_right) {}

double StateVector::squared_norm() const {
  double s = 0.0;
  for (const Complex& a : amps_) s += std::norm(a);
  return s;
}

namespace {

std::vector<char> mask(const std::vector<int>& ids, int size) {
  std::vector<char> m(size, 0);
  for (int id : ids) m[id] = 1;
  return m;
}

}  // namespace

StateVector initial_state(const BipartiteInstance& instance) {
  instance.validate();
  StateVector s(instance.n_left, instance.n_right);
  const Complex amp{1.0 / std::sqrt(double(s.size())), 0.0};
  std::fill(s.amplitudes().begin(), s.amplitudes().end(), amp);
  return s;
}

StateVector apply_shift(StateVector state) {
  const int nl = state.n_left();
  const int nr = state.n_right();
  for (int u = 0; u < nl; ++u) {
    for (int v = 0; v < nr; ++v) {
      std::swap(state[state.left_arc(u, v)], state[state.right_arc(v, u)]);
    }
  }
  return state;
}

namespace {

// Applies (1 - e^{-i alpha}) |s><s| - I to `count` contiguous coin amplitudes.
void coin_block(Complex* amps, int count, Complex factor) {
  Complex mean{0.0, 0.0};
  for (int i = 0; i < count; ++i) mean += amps[i];
  mean /= double(count);
  const Complex shared = factor * mean;
  for (int i = 0; i < count; ++i) amps[i] = shared - amps[i];
}

}  // namespace

StateVector apply_coin(StateVector state, double alpha) {
  const Complex factor = 1.0 - std::polar(1.0, -alpha);
  const int nl = state.n_left();
  const int nr = state.n_right();
  Complex* data = state.amplitudes().data();
  for (int u = 0; u < nl; ++u) coin_block(data + state.left_arc(u, 0), nr, factor);
  for (int u = 0; u < nr; ++u) coin_block(data + state.right_arc(u, 0), nl, factor);
  return state;
}

StateVector apply_oracle(StateVector state, double beta, const BipartiteInstance& instance) {
  const Complex phase = std::polar(1.0, beta);
  const int nl = state.n_left();
  const int nr = state.n_right();
  for (int u : instance.marked_left) {
    for (int v = 0; v < nr; ++v) state[state.left_arc(u, v)] *= phase;
  }
  for (int u : instance.marked_right) {
    for (int v = 0; v < nl; ++v) state[state.right_arc(u, v)] *= phase;
  }
  return state;
}

double success_probability(const StateVector& state, const BipartiteInstance& instance) {
  const int nl = state.n_left();
  const int nr = state.n_right();
  const auto left = mask(instance.marked_left, nl);
  const auto right = mask(instance.marked_right, nr);
  double p = 0.0;
  for (int u = 0; u < nl; ++u) {
    for (int v = 0; v < nr; ++v) {
      if (left[u] || right[v]) {
        p += std::norm(state[state.left_arc(u, v)]) + std::norm(state[state.right_arc(v, u)]);
      }
    }
  }
  return p;
}

FullRun run(const BipartiteInstance& instance, const AngleSchedule& schedule) {
  FullRun out{initial_state(instance), {}};
  out.series.method = schedule.oscillatory ? SeriesMethod::kOscillatory : SeriesMethod::kRobust;
  out.series.entries.emplace_back(0, success_probability(out.state, instance));
  for (int k = 1; k <= schedule.h; ++k) {
    out.state = apply_oracle(std::move(out.state), schedule.beta(k), instance);
    out.state = apply_coin(std::move(out.state), schedule.alpha(k));
    out.state = apply_shift(std::move(out.state));
    const double norm = out.state.squared_norm();
    if (std::abs(norm - 1.0) > 1e-10) {
      throw InvariantError("run: state norm drifted to " + std::to_string(norm) + " at step " +
                           std::to_string(k));
    }
    out.series.entries.emplace_back(k, success_probability(out.state, instance));
  }
  return out;
}

namespace dense {

namespace {

// Directed arc between global vertex ids; left vertices are 0..N_l-1,
// right vertices N_l..N_l+N_r-1.
struct Arc {
  int from;
  int to;
};

std::vector<Arc> enumerate_arcs(const BipartiteInstance& inst) {
  const int total = inst.n_left + inst.n_right;
  auto is_left = [&](int g) { return g < inst.n_left; };
  std::vector<Arc> arcs;
  for (int a = 0; a < total; ++a) {
    for (int b = 0; b < total; ++b) {
      if (is_left(a) != is_left(b)) arcs.push_back({a, b});
    }
  }
  return arcs;
}

std::vector<char> marked_global(const BipartiteInstance& inst) {
  std::vector<char> m(inst.n_left + inst.n_right, 0);
  for (int id : inst.marked_left) m[id] = 1;
  for (int id : inst.marked_right) m[inst.n_left + id] = 1;
  return m;
}

int degree(const BipartiteInstance& inst, int g) {
  return g < inst.n_left ? inst.n_right : inst.n_left;
}

}  // namespace

Matrix shift_matrix(const BipartiteInstance& instance) {
  const auto arcs = enumerate_arcs(instance);
  Matrix m(arcs.size());
  for (std::size_t r = 0; r < arcs.size(); ++r) {
    for (std::size_t c = 0; c < arcs.size(); ++c) {
      if (arcs[r].from == arcs[c].to && arcs[r].to == arcs[c].from) m(r, c) = 1.0;
    }
  }
  return m;
}

Matrix coin_matrix(const BipartiteInstance& instance, double alpha) {
  const auto arcs = enumerate_arcs(instance);
  const Complex factor = Complex{1.0, 0.0} - std::exp(Complex{0.0, -alpha});
  Matrix m(arcs.size());
  for (std::size_t r = 0; r < arcs.size(); ++r) {
    for (std::size_t c = 0; c < arcs.size(); ++c) {
      if (arcs[r].from != arcs[c].from) continue;
      Complex entry = factor / double(degree(instance, arcs[r].from));
      if (arcs[r].to == arcs[c].to) entry -= 1.0;
      m(r, c) = entry;
    }
  }
  return m;
}

Matrix oracle_matrix(const BipartiteInstance& instance, double beta) {
  const auto arcs = enumerate_arcs(instance);
  const auto marked = marked_global(instance);
  Matrix m(arcs.size());
  for (std::size_t r = 0; r < arcs.size(); ++r) {
    m(r, r) = marked[arcs[r].from] ? std::exp(Complex{0.0, beta}) : Complex{1.0, 0.0};
  }
  return m;
}

std::vector<Complex> multiply(const Matrix& m, const std::vector<Complex>& v) {
  if (v.size() != m.dim) {
    throw std::invalid_argument("dense::multiply: dimension mismatch");
  }
  // Plain real arithmetic keeps the inner loop free of complex-NaN handling.
  std::vector<Complex> out(m.dim);
  for (std::size_t r = 0; r < m.dim; ++r) {
    double re = 0.0;
    double im = 0.0;
    const Complex* row = m.data.data() + r * m.dim;
    for (std::size_t c = 0; c < m.dim; ++c) {
      const double ar = row[c].real(), ai = row[c].imag();
      const double br = v[c].real(), bi = v[c].imag();
      re += ar * br - ai * bi;
      im += ar * bi + ai * br;
    }
    out[r] = {re, im};
  }
  return out;
}

SuccessSeries run_dense(const BipartiteInstance& instance, const AngleSchedule& schedule) {
  instance.validate();
  const auto arcs = enumerate_arcs(instance);
  if (arcs.size() > kMaxDenseArcs) {
    throw std::invalid_argument("run_dense: instance too large for the dense reference");
  }
  const auto marked = marked_global(instance);
  auto probability = [&](const std::vector<Complex>& psi) {
    double p = 0.0;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (marked[arcs[i].from] || marked[arcs[i].to]) p += std::norm(psi[i]);
    }
    return p;
  };

  std::vector<Complex> psi(arcs.size(), Complex{1.0 / std::sqrt(double(arcs.size())), 0.0});
  SuccessSeries series;
  series.method = schedule.oscillatory ? SeriesMethod::kOscillatory : SeriesMethod::kRobust;
  series.entries.emplace_back(0, probability(psi));
  const Matrix shift = shift_matrix(instance);
  for (int k = 1; k <= schedule.h; ++k) {
    psi = multiply(oracle_matrix(instance, schedule.beta(k)), psi);
    psi = multiply(coin_matrix(instance, schedule.alpha(k)), psi);
    psi = multiply(shift, psi);
    series.entries.emplace_back(k, probability(psi));
  }
  return series;
}

}  // namespace dense

}  // namespace rqw
