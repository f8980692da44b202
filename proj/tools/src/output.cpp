#include "output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "config.hpp"

namespace lie_cubics::cli {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + p.parent_path().string());
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << contents;
  if (!out) throw IoError("write failed for " + path);
}

std::string trajectory_csv(const std::vector<HOHPState>& traj, double h) {
  std::string out =
      "k,t,g00,g01,g02,g10,g11,g12,g20,g21,g22,"
      "xi1,xi2,xi3,mu1,mu2,mu3,nu1,nu2,nu3,J1,J2,J3,H\n";
  for (size_t k = 0; k < traj.size(); ++k) {
    const HOHPState& s = traj[k];
    const CoVector j = momentum_map(s);
    out += std::to_string(k);
    out += ',';
    out += fmt17(static_cast<double>(k) * h);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        out += ',';
        out += fmt17(s.g.matrix()(r, c));
      }
    }
    for (int i = 0; i < 3; ++i) out += ',' + fmt17(s.xi.v(i));
    for (int i = 0; i < 3; ++i) out += ',' + fmt17(s.mu.m(i));
    for (int i = 0; i < 3; ++i) out += ',' + fmt17(s.nu.m(i));
    for (int i = 0; i < 3; ++i) out += ',' + fmt17(j.m(i));
    out += ',' + fmt17(hamiltonian(s));
    out += '\n';
  }
  return out;
}

std::string momentum_csv(const std::vector<HOHPState>& traj, double h) {
  std::string out = "k,t,mu_norm,nu_norm\n";
  for (size_t k = 0; k < traj.size(); ++k) {
    out += std::to_string(k);
    out += ',' + fmt17(static_cast<double>(k) * h);
    out += ',' + fmt17(traj[k].mu.norm());
    out += ',' + fmt17(traj[k].nu.norm());
    out += '\n';
  }
  return out;
}

namespace {

json vec_json(const Vec3& v) { return json::array({v(0), v(1), v(2)}); }

}  // namespace

std::string solution_json(const PlanningProblem& prob, const DescentRecord& rec) {
  json j;
  j["mu0"] = vec_json(rec.mu0.m);
  j["nu0"] = vec_json(rec.nu0.m);
  j["iterations"] = rec.iterations;
  j["termination"] = rec.termination;
  j["grad_norm"] = rec.grad_norm;
  j["cost"] = rec.solution.cost;
  j["energy"] = rec.solution.energy;
  j["penalty"] = rec.solution.penalty;
  j["cost_history"] = rec.cost_history;
  json targets = json::array();
  for (size_t i = 0; i < prob.targets.size(); ++i) {
    json t;
    t["node"] = prob.targets[i].node;
    t["point"] = vec_json(prob.targets[i].point);
    t["mismatch"] = rec.solution.mismatches[i];
    targets.push_back(std::move(t));
  }
  j["targets"] = std::move(targets);
  return j.dump(2) + "\n";
}

std::string convergence_json(const ConvergenceReport& report) {
  json j;
  j["step_sizes"] = report.step_sizes;
  j["errors"] = report.errors;
  j["slope"] = report.slope;
  return j.dump(2) + "\n";
}

std::string check_report_json(uint64_t seed, const std::vector<CheckResult>& results) {
  json j;
  j["seed"] = seed;
  bool all = true;
  json checks = json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    json c;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["measured"] = r.measured;
    c["threshold"] = r.threshold;
    c["detail"] = r.detail;
    checks.push_back(std::move(c));
  }
  j["all_pass"] = all;
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

}  // namespace lie_cubics::cli
