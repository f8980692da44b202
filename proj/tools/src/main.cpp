#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "config.hpp"
#include "lie_cubics/check_suite.hpp"
#include "output.hpp"

namespace {

using namespace lie_cubics;
using namespace lie_cubics::cli;

std::string resolve(const std::string& out_dir, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(out_dir) / p).string();
}

int thread_cap_from_env() {
  const char* env = std::getenv("LIE_CUBICS_THREADS");
  if (!env) return 0;
  const int v = std::atoi(env);
  return v > 0 ? v : 1;
}

int run_ivp(const IvpConfig& cfg, const std::string& out_dir, bool verbose) {
  const auto traj = flow(cfg.initial, cfg.params, cfg.steps, cfg.scheme);
  write_file(resolve(out_dir, cfg.trajectory_csv), trajectory_csv(traj, cfg.params.h));
  if (verbose) {
    std::cout << "ivp: " << traj.size() << " states -> "
              << resolve(out_dir, cfg.trajectory_csv) << "\n";
  }
  return 0;
}

int run_plan(const PlanConfig& cfg, const std::string& out_dir, bool verbose) {
  const DescentRecord rec = descend(cfg.problem, cfg.mu0, cfg.nu0, cfg.descent);
  write_file(resolve(out_dir, cfg.solution_json), solution_json(cfg.problem, rec));
  write_file(resolve(out_dir, cfg.trajectory_csv),
             trajectory_csv(rec.solution.trajectory, cfg.problem.h));
  write_file(resolve(out_dir, cfg.momentum_csv),
             momentum_csv(rec.solution.trajectory, cfg.problem.h));
  if (verbose) {
    std::cout << "plan: cost " << rec.solution.cost << " after " << rec.iterations
              << " iterations (" << rec.termination << ", |grad| = " << rec.grad_norm << ")\n";
  }
  return 0;
}

int run_check(const CheckConfig& cfg, const std::string& out_dir, bool verbose,
              std::optional<uint64_t> seed_override) {
  CheckOptions options;
  options.seed = seed_override.value_or(cfg.seed);
  options.max_threads = thread_cap_from_env();
  const auto results = run_check_suite(options);
  write_file(resolve(out_dir, cfg.report_json), check_report_json(options.seed, results));
  if (verbose) {
    for (const auto& r : results) {
      std::cout << (r.pass ? "pass  " : "FAIL  ") << r.name << "  measured " << r.measured
                << " vs " << r.threshold << "\n";
    }
  }
  return 0;
}

int run_converge(const ConvergeConfig& cfg, const std::string& out_dir, bool verbose) {
  const ConvergenceReport report =
      convergence_order(cfg.scheme, cfg.initial, cfg.t_final, cfg.h_list, cfg.h_ref);
  write_file(resolve(out_dir, cfg.report_json), convergence_json(report));
  if (verbose) std::cout << "converge: slope " << report.slope << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Structure-preserving integrators for acceleration-penalty dynamics on the rotation "
      "group, with a momentum-kick trajectory planner"};
  std::string config_path;
  std::string out_dir = ".";
  bool verbose = false;
  std::optional<uint64_t> seed;
  app.add_option("--config", config_path, "JSON experiment config")->required();
  app.add_option("--out", out_dir, "directory for output files");
  app.add_option("--seed", seed, "override the config seed of randomized check suites");
  app.add_flag("--verbose", verbose, "print progress to stdout");
  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = load_config(config_path);
    switch (cfg.command) {
      case Command::ivp:
        return run_ivp(*cfg.ivp, out_dir, verbose);
      case Command::plan:
        return run_plan(*cfg.plan, out_dir, verbose);
      case Command::check:
        return run_check(*cfg.check, out_dir, verbose, seed);
      case Command::converge:
        return run_converge(*cfg.converge, out_dir, verbose);
    }
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what();
    if (e.step_index >= 0) std::cerr << " (step " << e.step_index << ")";
    std::cerr << "\n";
    return 2;
  } catch (const LineSearchFailure& e) {
    std::cerr << "error: " << e.what() << " (iteration " << e.iteration << ")\n";
    return 2;
  } catch (const InvalidGroupElement& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const lie_cubics::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
