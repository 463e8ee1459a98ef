#include "rqw/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rqw/analysis.hpp"
#include "rqw/errors.hpp"
#include "rqw/fullspace.hpp"
#include "rqw/reduced.hpp"
#include "rqw/schedule.hpp"

namespace rqw::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

BetaConvention resolve_convention(const std::string& name) {
  if (name == "auto") {
    const CalibrationResult cal = calibrate_convention();
    if (!cal.selected) {
      throw InvariantError("convention calibration: no beta convention matches the closed form");
    }
    return *cal.selected;
  }
  const auto parsed = parse_convention(name);
  require(parsed.has_value(), "unknown convention '" + name + "'");
  return *parsed;
}

BipartiteInstance make_instance(const RunConfig& c) {
  require(c.nl >= 1 && c.nr >= 1, "--nl and --nr must be positive");
  auto check_ids = [](const std::vector<int>& ids, int m, const char* flag) {
    require(ids.empty() || m == 0 || m == int(ids.size()),
            std::string(flag) + " disagrees with the number of explicit marked ids");
  };
  check_ids(c.marked_left, c.ml, "--ml");
  check_ids(c.marked_right, c.mr, "--mr");
  BipartiteInstance inst;
  if (c.marked_left.empty() && c.marked_right.empty()) {
    inst = BipartiteInstance::from_counts(c.nl, c.nr, c.ml, c.mr);
  } else {
    inst.n_left = c.nl;
    inst.n_right = c.nr;
    inst.marked_left = c.marked_left;
    inst.marked_right = c.marked_right;
    if (inst.marked_left.empty()) {
      for (int i = 0; i < c.ml; ++i) inst.marked_left.push_back(i);
    }
    if (inst.marked_right.empty()) {
      for (int i = 0; i < c.mr; ++i) inst.marked_right.push_back(i);
    }
    inst.validate();
  }
  require(inst.count_left() + inst.count_right() > 0, "no marked vertices: nothing to search");
  return inst;
}

}  // namespace

std::string sweep_csv(const RunConfig& c) {
  require(c.epsilon > 0.0 && c.epsilon <= 1.0, "--epsilon must lie in (0, 1]");
  require(c.h_max >= 1, "--hmax must be >= 1");
  const BipartiteInstance inst = make_instance(c);
  const int n_l = inst.count_left();
  const int n_r = inst.count_right();
  const BetaConvention convention = resolve_convention(c.convention);
  const bool full = c.engine == Engine::kFull ||
                    (c.engine == Engine::kAuto && long(inst.arc_count()) <= kAutoFullArcLimit);
  const bool want_robust = c.mode != Mode::kOscillatory;
  const bool want_osc = c.mode != Mode::kRobust;

  const int bound = step_bound(c.nl, c.nr, MarkingScenario::from_counts(n_l, n_r), c.epsilon);
  const double floor = 1.0 - c.epsilon;

  std::optional<ReducedModel> model;
  if (!full) model = ReducedModel::build(c.nl, c.nr, n_l, n_r);

  std::vector<std::optional<double>> robust(c.h_max + 1), osc(c.h_max + 1), closed(c.h_max + 1);
  if (want_osc) {
    const AngleSchedule s = oscillatory_schedule(c.h_max);
    const SuccessSeries series = full ? run(inst, s).series : run_reduced(*model, s).series;
    for (const auto& [h, p] : series.entries) {
      if (h >= 1) osc[h] = p;
    }
  }
  for (int h = 3; h <= c.h_max; ++h) {
    closed[h] = closed_form_ph(h, c.epsilon, c.nl, c.nr, n_l, n_r);
    if (!want_robust) continue;
    const AngleSchedule s = build_schedule(h, c.epsilon, convention);
    robust[h] = full ? run(inst, s).series.entries.back().second
                     : run_reduced(*model, s).series.entries.back().second;
  }

  auto cell = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
  std::ostringstream csv;
  csv << "# convention=" << to_string(convention) << '\n';
  csv << "h,p_robust,p_oscillatory,p_closed_form,bound_h,floor\n";
  for (int h = 1; h <= c.h_max; ++h) {
    csv << h << ',' << cell(robust[h]) << ',' << cell(osc[h]) << ',' << cell(closed[h]) << ','
        << bound << ',' << fmt(floor) << '\n';
  }
  return csv.str();
}

std::vector<SuiteResult> verification_suites(int trials, std::uint64_t seed, double coin_fault) {
  if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<SuiteResult> results;

  // Operator identities in both subspace dimensions.
  const ReducedModel models[] = {ReducedModel::build(20, 7, 3, 0),
                                 ReducedModel::build(600, 1000, 10, 0),
                                 ReducedModel::build(9, 11, 2, 3),
                                 ReducedModel::build(600, 1000, 10, 5)};
  std::map<std::string, double> identity_max;
  double identity_tol = 0.0;
  for (const ReducedModel& m : models) {
    const IdentityReport rep = verify_identities(m, trials, rng, coin_fault);
    identity_tol = rep.tolerance;
    for (const IdentityCheck& ch : rep.checks) {
      const std::string key = "identity dim" + std::to_string(m.dim) + " " + ch.name;
      identity_max[key] = std::max(identity_max[key], ch.max_deviation);
    }
  }
  for (const auto& [name, dev] : identity_max) results.push_back({name, dev, identity_tol});

  // Product forms against the step-by-step product.
  double red_state = 0.0, red_prob = 0.0, red_stage = 0.0;
  for (const ReducedModel& m : {models[0], models[2]}) {
    for (int h = 3; h <= 9; ++h) {
      for (double eps : {0.1, 0.5}) {
        const ReductionReport rep = verify_reduction(m, build_schedule(h, eps));
        red_state = std::max(red_state, rep.state_deviation);
        red_prob = std::max(red_prob, rep.probability_deviation);
        if (rep.stage_one_checked) red_stage = std::max(red_stage, rep.stage_one_deviation);
      }
    }
  }
  results.push_back({"reduction state", red_state, 1e-9});
  results.push_back({"reduction probability", red_prob, 1e-9});
  results.push_back({"reduction stage-one", red_stage, 1e-9});

  // Structured vs dense vs reduced on small graphs.
  struct Small {
    int nl, nr, ml, mr;
  };
  const Small smalls[] = {{2, 2, 1, 0}, {3, 2, 1, 1}, {4, 4, 2, 0}, {4, 3, 1, 2}, {2, 5, 0, 3}};
  double d_dense = 0.0, d_reduced = 0.0;
  for (const Small& s : smalls) {
    const auto inst = BipartiteInstance::from_counts(s.nl, s.nr, s.ml, s.mr);
    const auto model = ReducedModel::build(s.nl, s.nr, s.ml, s.mr);
    std::vector<AngleSchedule> schedules = {oscillatory_schedule(8)};
    for (int h = 3; h <= 8; ++h) schedules.push_back(build_schedule(h, 0.1));
    for (const AngleSchedule& sch : schedules) {
      const auto a = run(inst, sch).series.entries;
      const auto b = dense::run_dense(inst, sch).entries;
      const auto r = run_reduced(model, sch).series.entries;
      for (std::size_t i = 0; i < a.size(); ++i) {
        d_dense = std::max(d_dense, std::abs(a[i].second - b[i].second));
        d_reduced = std::max(d_reduced, std::abs(a[i].second - r[i].second));
      }
    }
  }
  results.push_back({"oracle structured-vs-dense", d_dense, 1e-10});
  results.push_back({"oracle structured-vs-reduced", d_reduced, 1e-10});

  // Closed form against random small instances.
  std::uniform_int_distribution<int> size(2, 50);
  std::uniform_int_distribution<int> hdist(3, 20);
  const double eps_choices[] = {0.05, 0.1, 0.5, 1.0};
  double d_closed = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int nl = size(rng), nr = size(rng);
    const int ml = std::uniform_int_distribution<int>(1, nl)(rng);
    const int mr = (t % 2 == 0) ? 0 : std::uniform_int_distribution<int>(1, nr)(rng);
    const double eps = eps_choices[t % 4];
    const int h = hdist(rng);
    const double sim = robust_probability(ReducedModel::build(nl, nr, ml, mr), h, eps);
    d_closed = std::max(d_closed, std::abs(sim - closed_form_ph(h, eps, nl, nr, ml, mr)));
  }
  results.push_back({"closed-form", d_closed, 1e-9});
  return results;
}

namespace {

Mode parse_mode(const std::string& s) {
  if (s == "robust") return Mode::kRobust;
  if (s == "oscillatory") return Mode::kOscillatory;
  return Mode::kBoth;
}

Engine parse_engine(const std::string& s) {
  if (s == "reduced") return Engine::kReduced;
  if (s == "full") return Engine::kFull;
  return Engine::kAuto;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const std::string csv = sweep_csv(cfg);
  if (cfg.out.empty()) {
    out << csv;
    return kOk;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file " + cfg.out);
  f << csv;
  return kOk;
}

int cmd_verify(int trials, std::uint64_t seed, double fault, std::ostream& out,
               std::ostream& err) {
  const auto results = verification_suites(trials, seed, fault);
  std::vector<std::string> failed;
  for (const SuiteResult& r : results) {
    char line[160];
    std::snprintf(line, sizeof line, "%-40s max_dev=%.3e tol=%.0e %s", r.name.c_str(),
                  r.max_deviation, r.tolerance, r.passed() ? "PASS" : "FAIL");
    out << line << '\n';
    if (!r.passed()) failed.push_back(r.name);
  }
  if (failed.empty()) return kOk;
  err << "verification failed:";
  for (const auto& f : failed) err << ' ' << '[' << f << ']';
  err << '\n';
  return kVerificationFailed;
}

int cmd_bound(const RunConfig& cfg, bool unknown, std::ostream& out) {
  require(cfg.nl >= 1 && cfg.nr >= 1, "--nl and --nr must be positive");
  require(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0, "--epsilon must lie in (0, 1]");
  MarkingScenario scenario;
  if (unknown) {
    require(cfg.ml == 0 && cfg.mr == 0, "--unknown cannot be combined with --ml/--mr");
  } else {
    require(cfg.ml > 0 || cfg.mr > 0, "give --ml and/or --mr, or --unknown");
    scenario = MarkingScenario::from_counts(cfg.ml, cfg.mr);
  }
  out << "bound_real=" << fmt(step_bound_real(cfg.nl, cfg.nr, scenario, cfg.epsilon)) << '\n';
  out << "bound=" << step_bound(cfg.nl, cfg.nr, scenario, cfg.epsilon) << '\n';
  return kOk;
}

int cmd_schedule(const RunConfig& cfg, int h, std::ostream& out) {
  AngleSchedule s;
  if (cfg.mode == Mode::kOscillatory) {
    require(h >= 1, "--h must be >= 1");
    s = oscillatory_schedule(h);
    out << "# schedule=oscillatory\n";
  } else {
    require(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0, "--epsilon must lie in (0, 1]");
    require(h >= 3, "--h must be >= 3 for the robust schedule");
    const BetaConvention conv = resolve_convention(cfg.convention);
    s = build_schedule(h, cfg.epsilon, conv);
    out << "# convention=" << to_string(conv) << '\n';
  }
  out << "k,alpha,beta\n";
  for (int k = 1; k <= s.h; ++k) out << k << ',' << fmt(s.alpha(k)) << ',' << fmt(s.beta(k)) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust quantum-walk search on complete bipartite graphs"};
  app.set_config("--config", "", "Flat key=value file with the same keys as the flags");
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string mode = "both", engine = "auto";
  int h = 0;
  int trials = 100;
  bool unknown = false;
  double coin_fault = 0.0;

  app.add_option("--nl", cfg.nl, "Left side size");
  app.add_option("--nr", cfg.nr, "Right side size");
  app.add_option("--ml", cfg.ml, "Marked count on the left");
  app.add_option("--mr", cfg.mr, "Marked count on the right");
  app.add_option("--marked-left", cfg.marked_left, "Explicit marked ids on the left")
      ->delimiter(',');
  app.add_option("--marked-right", cfg.marked_right, "Explicit marked ids on the right")
      ->delimiter(',');
  app.add_option("--epsilon", cfg.epsilon, "Error tolerance in (0, 1]");
  app.add_option("--hmax", cfg.h_max, "Largest step count in a sweep");
  app.add_option("--mode", mode, "robust | oscillatory | both")
      ->check(CLI::IsMember({"robust", "oscillatory", "both"}));
  app.add_option("--engine", engine, "reduced | full | auto")
      ->check(CLI::IsMember({"reduced", "full", "auto"}));
  app.add_option("--convention", cfg.convention, "reflected | swapped-parity | unnegated | auto")
      ->check(CLI::IsMember({"reflected", "swapped-parity", "unnegated", "auto"}));
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--out", cfg.out, "Output file (default stdout)");
  app.add_option("--h", h, "Step count for the schedule command");
  app.add_option("--trials", trials, "Random trials per identity check");
  app.add_flag("--unknown", unknown, "Marked counts unknown (bound command)");
  app.add_option("--inject-coin-fault", coin_fault)->group("");

  auto* sweep = app.add_subcommand("sweep", "Success probability per step count as CSV");
  auto* verify = app.add_subcommand("verify", "Run the numerical verification suites");
  auto* bound = app.add_subcommand("bound", "Print the step bound");
  auto* schedule = app.add_subcommand("schedule", "Print the angle schedule");
  for (auto* sub : {sweep, verify, bound, schedule}) sub->fallthrough();

  std::vector<std::string> argv_store;
  argv_store.push_back("rqwalk");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  cfg.mode = parse_mode(mode);
  cfg.engine = parse_engine(engine);

  try {
    if (sweep->parsed()) return cmd_sweep(cfg, out);
    if (verify->parsed()) return cmd_verify(trials, cfg.seed, coin_fault, out, err);
    if (bound->parsed()) return cmd_bound(cfg, unknown, out);
    if (schedule->parsed()) return cmd_schedule(cfg, h, out);
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace rqw::cli
