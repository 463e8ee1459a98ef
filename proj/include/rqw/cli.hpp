#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rqw::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

enum class Mode { kRobust, kOscillatory, kBoth };
enum class Engine { kReduced, kFull, kAuto };

struct RunConfig {
  int nl = 0;
  int nr = 0;
  int ml = 0;
  int mr = 0;
  std::vector<int> marked_left;   // explicit ids; overrides ml when non-empty
  std::vector<int> marked_right;  // explicit ids; overrides mr when non-empty
  double epsilon = 0.1;
  int h_max = 100;
  Mode mode = Mode::kBoth;
  Engine engine = Engine::kAuto;
  std::string convention = "auto";  // reflected | swapped-parity | unnegated | auto
  std::uint64_t seed = 42;
  std::string out;  // empty: stdout
};

/// The auto engine picks the full-space simulator up to this many arcs.
inline constexpr long kAutoFullArcLimit = 20000;

/// Builds the sweep CSV. Throws std::invalid_argument on a bad config and
/// InvariantError when a simulation breaks an invariant.
std::string sweep_csv(const RunConfig& config);

struct SuiteResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_deviation <= tolerance; }
};

/// Identity, reduction, oracle and closed-form suites with a seeded source.
/// `coin_fault` perturbs the reduced coin inside the identity checks.
std::vector<SuiteResult> verification_suites(int trials, std::uint64_t seed,
                                             double coin_fault = 0.0);

/// Entry point shared by the executable and the tests. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rqw::cli
