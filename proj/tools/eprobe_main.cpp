// Command line front end: closed-form sweeps, Monte Carlo key sessions,
// and the self-check suite.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "eprobe/closed_form.hpp"
#include "eprobe/mc_protocol.hpp"
#include "eprobe/report.hpp"
#include "eprobe/verify.hpp"

namespace {

// The whole payload is assembled first, so a failed run never leaves a
// truncated file behind.
void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

int cmd_sweep(double e_min, double e_max, int steps, const std::string& format,
              const std::string& out_path) {
  const std::vector<eprobe::SweepRow> rows = eprobe::sweep(e_min, e_max, steps);
  write_output(out_path,
               format == "json" ? eprobe::to_json(rows) : eprobe::to_csv(rows));
  return 0;
}

int cmd_simulate(double error_rate, std::uint64_t trials, std::uint64_t seed,
                 const std::string& format, const std::string& out_path) {
  const eprobe::SessionConfig config{eprobe::ErrorRate(error_rate), trials,
                                     seed};
  const eprobe::SessionReport report = eprobe::make_session_report(config);
  write_output(out_path, format == "json" ? eprobe::to_json(report)
                                          : eprobe::to_csv(report));
  return 0;
}

int cmd_verify(double tolerance, int grid_points) {
  const eprobe::VerifyReport report =
      eprobe::run_verification({tolerance, grid_points});

  constexpr std::size_t kMaxListed = 100;
  std::size_t listed = 0;
  for (const eprobe::Violation& v : report.violations) {
    if (listed == kMaxListed) {
      std::cout << "... and " << (report.violations.size() - kMaxListed)
                << " more\n";
      break;
    }
    std::cout << "violation: " << v.quantity
              << " at E=" << eprobe::format_double(v.e) << ": expected "
              << eprobe::format_double(v.expected) << ", got "
              << eprobe::format_double(v.actual) << "\n";
    ++listed;
  }
  if (report.ok()) {
    std::cout << "all " << report.checks << " checks passed\n";
    return 0;
  }
  std::cout << report.checks << " checks, " << report.violations.size()
            << " violations\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entangling-probe attack on BB84: closed forms, state-vector "
               "cross-checks, and Monte Carlo key sessions"};
  app.require_subcommand(1);

  const double e_cap = eprobe::ErrorRate::kMax;

  double e_min = 0.0;
  double e_max = e_cap;
  int steps = 100;
  double error_rate = 0.0;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  double tolerance = 1e-12;
  int grid_points = 1000;
  std::string format = "csv";
  std::string out_path = "-";

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Tabulate eta, overlap, Renyi information, and the "
               "discrimination bound over a range of induced error rates");
  sweep->add_option("--e-min", e_min, "Lower end of the error-rate range")
      ->capture_default_str()
      ->check(CLI::Range(0.0, e_cap));
  sweep->add_option("--e-max", e_max, "Upper end of the error-rate range")
      ->capture_default_str()
      ->check(CLI::Range(0.0, e_cap));
  sweep->add_option("--steps", steps, "Number of rows (endpoints included)")
      ->capture_default_str()
      ->check(CLI::Range(2, 1 << 24));
  sweep->add_option("--format", format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", out_path, "Output path, '-' for stdout")
      ->capture_default_str();

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run a seeded BB84 session against the probe and compare "
                  "the measured rates with the closed forms");
  simulate->add_option("--error-rate", error_rate, "Induced error rate E")
      ->required()
      ->check(CLI::Range(0.0, e_cap));
  simulate->add_option("--trials", trials, "Number of transmitted qubits")
      ->capture_default_str()
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  simulate->add_option("--seed", seed, "Session seed")
      ->capture_default_str();
  simulate->add_option("--format", format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--out", out_path, "Output path, '-' for stdout")
      ->capture_default_str();

  CLI::App* verify = app.add_subcommand(
      "verify", "Check every cross-module invariant over a grid of error "
                "rates; prints one line per violation");
  verify->add_option("--tolerance", tolerance,
                     "Absolute tolerance for algebraic identities")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--grid-points", grid_points,
                     "Grid resolution over [0, 1/3]")
      ->capture_default_str()
      ->check(CLI::Range(2, 1 << 24));

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return cmd_sweep(e_min, e_max, steps, format, out_path);
    if (simulate->parsed())
      return cmd_simulate(error_rate, trials, seed, format, out_path);
    return cmd_verify(tolerance, grid_points);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
