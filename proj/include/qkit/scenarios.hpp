// Canned verification scenarios behind the qkit command line.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkit/io.hpp"
#include "qkit/states.hpp"

namespace qkit {

struct Check {
  std::string name;
  Json expected;
  Json actual;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  std::string scenario;
  std::vector<Check> checks;
  Json outputs = Json::object();

  bool pass() const;
  Json to_json() const;
  /// One line per check plus a verdict, for stderr.
  std::string summary() const;
};

struct ScenarioOptions {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  LogBase log_base = LogBase::Natural;
  std::size_t cutoff = 40;
  /// Paths to JSON documents ("-" for stdin). A state of "random" draws one from the seed.
  std::optional<std::string> state, instrument, channel;
  std::vector<std::size_t> keep = {0};
  double gamma = 0.75;
  std::uint64_t shots = 100000;
  std::size_t dim = 2;

  Tolerances tolerances() const;
};

const std::vector<std::string>& scenario_names();
bool is_scenario(const std::string& name);

/// Throws SchemaError for unreadable inputs and Error for library preconditions.
Report run_scenario(const std::string& name, const ScenarioOptions& opts);

}  // namespace qkit
