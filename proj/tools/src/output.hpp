#pragma once

#include <string>
#include <vector>

#include "lie_cubics/check_suite.hpp"
#include "lie_cubics/diagnostics.hpp"
#include "lie_cubics/planner.hpp"

namespace lie_cubics::cli {

/// Fixed number formatting used in every CSV cell: %.17g, '.' separator.
/// Identical configs therefore produce byte-identical files.
std::string fmt17(double v);

/// Creates parent directories and opens the file; throws IoError on failure.
void write_file(const std::string& path, const std::string& contents);

/// Trajectory table, one row per state:
///   k,t,g00..g22 (row-major),xi1..3,mu1..3,nu1..3,J1..3,H
std::string trajectory_csv(const std::vector<HOHPState>& traj, double h);

/// Momentum norms per step: k,t,mu_norm,nu_norm.
std::string momentum_csv(const std::vector<HOHPState>& traj, double h);

std::string solution_json(const PlanningProblem& prob, const DescentRecord& rec);

std::string convergence_json(const ConvergenceReport& report);

std::string check_report_json(uint64_t seed, const std::vector<CheckResult>& results);

}  // namespace lie_cubics::cli
