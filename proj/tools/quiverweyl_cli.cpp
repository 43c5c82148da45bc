#include <iostream>
#include <map>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "quiverweyl/config.hpp"
#include "quiverweyl/report.hpp"
#include "quiverweyl/suites.hpp"

using namespace quiverweyl;

namespace {

constexpr int kAllPass = 0;
constexpr int kSomeFail = 1;
constexpr int kConfigError = 2;

const std::map<std::string, EtaCase>& eta_case_names() {
  static const std::map<std::string, EtaCase> names{
      {"generic", EtaCase::generic},
      {"generic-to-degenerate", EtaCase::generic_to_degenerate},
      {"degenerate-to-generic", EtaCase::degenerate_to_generic},
      {"degenerate-c-zero", EtaCase::degenerate_c_zero},
      {"degenerate-swap", EtaCase::degenerate_swap}};
  return names;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification runner for quiver Weyl algebras"};
  std::string config, suite, flip_arrow, eta_case;
  std::optional<int> degree_bound, samples;
  std::optional<std::uint64_t> seed;
  bool json_only = false, no_timings = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--config", config, "Configuration file (JSON)")->required();
  app.add_option("--suite", suite, "Run one suite instead of run.suites")
      ->check(CLI::IsMember({"cocycle", "symplectic", "quantum-action", "comoment", "reduction",
                             "flatness", "all"}));
  app.add_option("--degree-bound", degree_bound, "Degree bound D for ideal membership")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "Seed for the random instances");
  app.add_option("--samples", samples, "Random instances per sampled check")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", json_only, "Print only the machine-readable report");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--no-timings", no_timings, "Report zero times for reproducible output");
  app.add_option("--flip-epsilon", flip_arrow, "Fault injection: negate the weight of this arrow (s->t)");
  auto* eta_opt = app.add_option("--negate-eta", eta_case, "Fault injection: negate eta in this branch");
  std::vector<std::string> case_names;
  for (const auto& [k, v] : eta_case_names()) case_names.push_back(k);
  eta_opt->check(CLI::IsMember(case_names));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kAllPass : kConfigError;
  }

  VerificationJob job;
  FaultPlan faults;
  try {
    job = parse_config(config);
    if (!suite.empty()) job.suites = resolve_suites({suite});
    if (degree_bound) job.degree_bound = *degree_bound;
    if (seed) job.seed = *seed;
    if (samples) job.samples = *samples;
    if (!flip_arrow.empty()) faults.flip_epsilon_arrow = job.quiver.arrow_by_label(flip_arrow);
    if (!eta_case.empty()) faults.negate_eta_case = eta_case_names().at(eta_case);
  } catch (const Error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  }

  ScopedFault scoped(faults);
  Report rep = run_suite(job, jobs);
  ReportOptions opts{!no_timings, job.seed};
  if (json_only) {
    std::cout << report_json(rep, opts).dump(2) << "\n";
  } else {
    std::cout << report_table(rep, opts) << "\n--- machine report ---\n"
              << report_json(rep, opts).dump() << "\n";
  }
  return rep.ok() ? kAllPass : kSomeFail;
}
