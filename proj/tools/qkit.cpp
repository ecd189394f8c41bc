// qkit <scenario> [options]
//
// Runs one verification scenario and prints its JSON report on stdout.
// Exit status: 0 all checks pass, 1 some check failed, 2 unknown scenario,
// 3 unreadable or malformed input.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qkit/scenarios.hpp"

namespace {

std::string scenario_list() {
  std::string out;
  for (const auto& n : qkit::scenario_names()) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2 || std::string(argv[1]) == "-h" || std::string(argv[1]) == "--help") {
    std::cerr << "usage: qkit <scenario> [options]\nscenarios: " << scenario_list()
              << "\nrun 'qkit <scenario> --help' for options\n";
    return argc < 2 ? 2 : 0;
  }
  const std::string name = argv[1];
  if (!qkit::is_scenario(name)) {
    std::cerr << "qkit: unknown scenario '" << name << "' (expected one of: " << scenario_list() << ")\n";
    return 2;
  }

  qkit::ScenarioOptions opts;
  CLI::App app{"qkit " + name};
  app.name("qkit " + name);
  std::string log_base = "e";
  std::string state, instrument, channel;
  double tol = 0.0;
  app.add_option("--seed", opts.seed, "random seed");
  auto* tol_opt = app.add_option("--tol", tol, "override the hermiticity, positivity and orthonormality tolerances")
                      ->check(CLI::PositiveNumber);
  app.add_option("--log-base", log_base, "entropy logarithm base")->check(CLI::IsMember({"e", "2"}));
  app.add_option("--cutoff", opts.cutoff, "Fock cutoff N")->check(CLI::Range(2, 63));
  auto* state_opt = app.add_option("--state", state, "state document, '-' for stdin, or 'random'");
  auto* inst_opt = app.add_option("--instrument", instrument, "instrument or POVM document");
  auto* chan_opt = app.add_option("--channel", channel, "channel document (kraus or superop)");
  app.add_option("--keep", opts.keep, "factors kept by reduce");
  app.add_option("--gamma", opts.gamma, "depolarizing parameter")->check(CLI::Range(0.0, 1.0));
  app.add_option("--shots", opts.shots, "number of samples");
  app.add_option("--dim", opts.dim, "dimension for random inputs")->check(CLI::Range(1, 64));

  try {
    app.parse(argc - 1, argv + 1);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }
  if (*tol_opt) opts.tol = tol;
  opts.log_base = log_base == "2" ? qkit::LogBase::Two : qkit::LogBase::Natural;
  if (*state_opt) opts.state = state;
  if (*inst_opt) opts.instrument = instrument;
  if (*chan_opt) opts.channel = channel;

  qkit::Report report;
  try {
    report = qkit::run_scenario(name, opts);
  } catch (const qkit::SchemaError& e) {
    std::cerr << "qkit: " << e.what() << "\n";
    return 3;
  } catch (const qkit::Error& e) {
    std::cerr << "qkit: " << qkit::to_string(e.kind()) << ": " << e.what() << "\n";
    return 3;
  }
  std::cout << report.to_json().dump(2) << "\n";
  std::cerr << report.summary();
  return report.pass() ? 0 : 1;
}
