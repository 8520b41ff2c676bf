// qpd: command-line front end for the QP/LV analysis library.
//
// Exit codes: 0 success, 1 usage or input error, 2 invariant violation
// (analytic/numeric disagreement under --strict, conjugacy over budget).

#include "qpd/chaos_scalar.hpp"
#include "qpd/error.hpp"
#include "qpd/report.hpp"
#include "qpd/system_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace qpd;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolation = 2;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  return out;
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0')
      throw Error(ErrorCode::BadInitialCondition, "cannot parse '" + item + "' as a number");
    values.push_back(v);
  }
  return values;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string file;
  bool verify = false;
  bool strict = false;
  std::string json_out;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 1;
};

int run_analyze(const AnalyzeArgs& a) {
  const QPSystem sys = io::load_system(a.file);
  VerifyOptions options;
  options.permanence.seed = a.seed;
  options.attractivity.seed = a.seed;
  const AnalysisReport report = analyze(sys, a.verify, options, a.tol);
  std::cout << render_text(report);
  if (!a.json_out.empty()) open_output(a.json_out) << report_to_json(report).dump(2) << '\n';
  if (a.strict && report.checks && !report.checks->disagreements.empty()) return kExitViolation;
  return kExitOk;
}

// --------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string file;
  std::string x0;
  std::size_t steps = 0;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  const QPSystem sys = io::load_system(a.file);
  const auto values = parse_csv_doubles(a.x0);
  if (values.size() != sys.n())
    throw Error(ErrorCode::BadInitialCondition,
                "--x0 has " + std::to_string(values.size()) + " components, system has n = " +
                    std::to_string(sys.n()));
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::BadInitialCondition, "initial components must be positive and finite");
  const StateVector x0(Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size())));

  const Trajectory traj = simulate(sys, x0, a.steps);
  auto out = open_output(a.out);
  io::write_trajectory_csv(out, traj);

  const auto& last = traj.states.back();
  std::cout << "steps: " << traj.states.size() - 1 << " of " << a.steps << '\n';
  std::cout << "final state:";
  for (std::size_t i = 0; i < last.size(); ++i) std::cout << ' ' << io::format_double(last[i]);
  std::cout << '\n';
  if (traj.terminated_early)
    std::cout << "guard event: " << to_string(traj.terminated_early->reason) << " at step "
              << traj.terminated_early->step << '\n';
  else
    std::cout << "guard events: none\n";
  std::cout << "trajectory written to " << a.out << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------- scan

struct ScanArgs {
  std::string kind;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double step = 0.0;
  std::string out;
  std::string json_out;
};

int run_scan(const ScanArgs& a) {
  const auto kind = chaos::detection_kind_from_string(a.kind);
  if (!kind) throw Error(ErrorCode::InvalidArgument, "--kind must be period3 or snapback");
  const auto scan = chaos::scan_detection(*kind, a.rho_min, a.rho_max, a.step);
  auto out = open_output(a.out);
  io::write_scan_csv(out, scan);
  const auto summary = io::scan_summary(scan).dump(2);
  std::cout << summary << '\n';
  if (!a.json_out.empty()) open_output(a.json_out) << summary << '\n';
  return kExitOk;
}

// -------------------------------------------------------------- conjugacy

struct ConjugacyArgs {
  std::string file;
  std::uint64_t seed = 1;
  std::size_t trials = 20;
  std::size_t steps = 50;
};

constexpr double kMaxTrialCondition = 1e4;
constexpr int kMaxRegenerations = 1000;

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Identity plus a uniform perturbation in [-0.5, 0.5) per entry.
Matrix random_perturbed_identity(std::mt19937_64& rng, std::size_t n) {
  Matrix c = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) c(i, j) += uniform(rng) - 0.5;
  return c;
}

double invariant_drift(const ClassInvariants& a, const ClassInvariants& b) {
  auto rel = [](double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(x)); };
  double d = 0.0;
  for (Eigen::Index i = 0; i < a.Gamma.size(); ++i) d = std::max(d, rel(a.Gamma.data()[i], b.Gamma.data()[i]));
  for (Eigen::Index i = 0; i < a.Lambda.size(); ++i) d = std::max(d, rel(a.Lambda(i), b.Lambda(i)));
  return d;
}

int run_conjugacy(const ConjugacyArgs& a) {
  const QPSystem sys = io::load_system(a.file);
  std::cout << "conjugacy check: seed " << a.seed << ", " << a.trials << " trials, " << a.steps
            << " steps, budget " << io::format_double(kConjugacyBudgetPerStep)
            << " relative per step, invariant tolerance " << io::format_double(kInverseResidualTolerance)
            << '\n';
  if (a.trials == 0) {
    std::cerr << "warning: --trials 0 runs no trials; the check passes vacuously\n";
    std::cout << "result: pass (vacuous)\n";
    return kExitOk;
  }

  std::mt19937_64 rng(a.seed);
  InitialConditionSampler sampler(a.seed, 0.1, 10.0);
  const ClassInvariants reference = class_invariants(sys);
  double worst_ratio = 0.0, worst_deviation = 0.0, worst_drift = 0.0;
  std::size_t failures = 0;

  for (std::size_t trial = 0; trial < a.trials; ++trial) {
    std::optional<QMTMatrix> c;
    for (int attempt = 0; !c; ++attempt) {
      if (attempt == kMaxRegenerations)
        throw Error(ErrorCode::InvalidArgument, "could not draw a well-conditioned C");
      Matrix candidate = random_perturbed_identity(rng, sys.n());
      try {
        QMTMatrix q(candidate);
        if (q.condition() <= kMaxTrialCondition) {
          c = std::move(q);
          break;
        }
        std::cout << "trial " << trial << ": rejected C with condition " << io::format_double(q.condition())
                  << ", regenerating\n";
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularMatrix) throw;
        std::cout << "trial " << trial << ": rejected near-singular C, regenerating\n";
      }
    }
    const StateVector x0 = sampler.draw(sys.n());
    const double drift = invariant_drift(reference, class_invariants(apply_qmt(sys, *c)));
    worst_drift = std::max(worst_drift, drift);
    bool ok = drift <= kInverseResidualTolerance;

    std::string detail;
    try {
      const auto dev = conjugacy_deviation(sys, *c, x0, a.steps);
      double ratio = 0.0;
      for (std::size_t t = 0; t < dev.per_step.size(); ++t)
        ratio = std::max(ratio, dev.per_step[t] / (kConjugacyBudgetPerStep * static_cast<double>(std::max<std::size_t>(t, 1))));
      worst_ratio = std::max(worst_ratio, ratio);
      worst_deviation = std::max(worst_deviation, dev.max_relative);
      ok = ok && ratio <= 1.0;
      detail = "max deviation " + io::format_double(dev.max_relative) + ", budget use " + io::format_double(ratio);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::GuardTermination) throw;
      ok = false;
      detail = std::string("guard termination: ") + e.what();
    }
    if (!ok) ++failures;
    std::cout << "trial " << trial << ": " << (ok ? "ok" : "OVER BUDGET") << ", cond(C) "
              << io::format_double(c->condition()) << ", " << detail << ", invariant drift "
              << io::format_double(drift) << '\n';
  }

  std::cout << "max deviation: " << io::format_double(worst_deviation) << '\n'
            << "max budget use: " << io::format_double(worst_ratio) << '\n'
            << "max invariant drift: " << io::format_double(worst_drift) << '\n'
            << "result: " << (failures == 0 ? "pass" : "fail") << " (" << failures << " of " << a.trials
            << " trials over budget)\n";
  return failures == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analysis of quasipolynomial and Lotka-Volterra discrete-time maps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run the theorem battery on a system file");
  analyze_cmd->add_option("file", analyze_args.file, "System definition JSON")->required();
  analyze_cmd->add_flag("--verify", analyze_args.verify, "Cross-check with simulations");
  analyze_cmd->add_flag("--strict", analyze_args.strict, "Exit 2 when a cross-check disagrees");
  analyze_cmd->add_option("--json", analyze_args.json_out, "Write the report as JSON");
  analyze_cmd->add_option("--tol", analyze_args.tol, "Sign tolerance")->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--seed", analyze_args.seed, "Seed for the simulation ensembles");

  SimulateArgs simulate_args;
  auto* simulate_cmd = app.add_subcommand("simulate", "Iterate the map and write a trajectory CSV");
  simulate_cmd->add_option("file", simulate_args.file, "System definition JSON")->required();
  simulate_cmd->add_option("--x0", simulate_args.x0, "Initial state, comma separated")->required();
  simulate_cmd->add_option("--steps", simulate_args.steps, "Number of steps")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  simulate_cmd->add_option("--out", simulate_args.out, "Output CSV")->required();

  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand("scan", "Scan rho for the onset of a chaos detector");
  scan_cmd->add_option("--kind", scan_args.kind, "period3 or snapback")
      ->required()
      ->check(CLI::IsMember({"period3", "snapback"}));
  scan_cmd->add_option("--rho-min", scan_args.rho_min)->required();
  scan_cmd->add_option("--rho-max", scan_args.rho_max)->required();
  scan_cmd->add_option("--step", scan_args.step)->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--out", scan_args.out, "Output CSV")->required();
  scan_cmd->add_option("--json", scan_args.json_out, "Also write the summary to this file");

  ConjugacyArgs conj_args;
  auto* conj_cmd = app.add_subcommand("conjugacy", "Property-test QMT conjugacy on random C");
  conj_cmd->add_option("file", conj_args.file, "System definition JSON")->required();
  conj_cmd->add_option("--seed", conj_args.seed);
  conj_cmd->add_option("--trials", conj_args.trials);
  conj_cmd->add_option("--steps", conj_args.steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze_cmd) return run_analyze(analyze_args);
    if (*simulate_cmd) return run_simulate(simulate_args);
    if (*scan_cmd) return run_scan(scan_args);
    if (*conj_cmd) return run_conjugacy(conj_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
