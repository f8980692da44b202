#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lie_cubics/integrators.hpp"
#include "lie_cubics/planner.hpp"

namespace lie_cubics::cli {

/// Config-validation failure; `field` names the offending entry
/// ("planning.targets[2].node" style paths).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error("config field '" + field + "': " + what), field(field) {}
  std::string field;
};

/// Output-file failure (exit code 3 in the CLI).
class IoError : public Error {
 public:
  using Error::Error;
};

enum class Command { ivp, plan, check, converge };

struct IvpConfig {
  Scheme scheme = Scheme::sv;
  StepParams params;
  int steps = 0;
  HOHPState initial;
  std::string trajectory_csv;
};

struct PlanConfig {
  PlanningProblem problem;
  DescentOptions descent;
  CoVector mu0;
  CoVector nu0;
  std::string solution_json;
  std::string trajectory_csv;
  std::string momentum_csv;
};

struct CheckConfig {
  uint64_t seed = 0;
  std::string report_json;
};

struct ConvergeConfig {
  Scheme scheme = Scheme::sv;
  HOHPState initial;
  double t_final = 0.0;
  std::vector<double> h_list;
  double h_ref = 0.0;  ///< 0 = library default (min(h_list)/8)
  std::string report_json;
};

struct RunConfig {
  Command command = Command::ivp;
  std::optional<IvpConfig> ivp;
  std::optional<PlanConfig> plan;
  std::optional<CheckConfig> check;
  std::optional<ConvergeConfig> converge;
};

/// Parses and fully validates a config document. Throws ConfigError with the
/// offending field path; performs no filesystem writes.
RunConfig parse_config(const std::string& json_text);

/// Convenience: read the file then parse. File-read problems surface as
/// ConfigError on the pseudo-field "config".
RunConfig load_config(const std::string& path);

}  // namespace lie_cubics::cli
