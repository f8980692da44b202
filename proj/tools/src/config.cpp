#include "config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace lie_cubics::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field, what);
}

const json& require(const json& j, const std::string& key, const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end()) fail(path + key, "missing");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Vec3 vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) fail(path, "expected an array of 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) v(i) = number(j[static_cast<size_t>(i)], path);
  return v;
}

Scheme scheme_of(const json& j, const std::string& path) {
  const std::string s = text(j, path);
  if (s == "euler") return Scheme::euler;
  if (s == "sv") return Scheme::sv;
  fail(path, "expected \"euler\" or \"sv\"");
}

GroupElement group_of(const json& j, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != 9) fail(path, "expected 9 numbers (row-major) or an axis-angle object");
    Mat3 r;
    for (int i = 0; i < 9; ++i) r(i / 3, i % 3) = number(j[static_cast<size_t>(i)], path);
    try {
      return GroupElement::FromMatrix(r);
    } catch (const InvalidGroupElement& e) {
      fail(path, e.what());
    }
  }
  if (j.is_object()) {
    const Vec3 axis = vec3(require(j, "axis", path + "."), path + ".axis");
    const double angle = number(require(j, "angle", path + "."), path + ".angle");
    const double n = axis.norm();
    if (!(n > 0.0)) fail(path + ".axis", "must be nonzero");
    return GroupElement::FromMatrix(Eigen::AngleAxisd(angle, axis / n).toRotationMatrix());
  }
  fail(path, "expected 9 numbers (row-major) or an axis-angle object");
}

HOHPState initial_of(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  HOHPState s;
  if (j.contains("g")) s.g = group_of(j.at("g"), path + ".g");
  s.xi = AlgebraVector(vec3(require(j, "xi", path + "."), path + ".xi"));
  s.mu = CoVector(vec3(require(j, "mu", path + "."), path + ".mu"));
  s.nu = CoVector(vec3(require(j, "nu", path + "."), path + ".nu"));
  return s;
}

std::string out_path(const json& output, const std::string& key, const std::string& path) {
  const std::string p = text(require(output, key, path + "."), path + "." + key);
  if (p.empty()) fail(path + "." + key, "must be a non-empty path");
  return p;
}

StepParams step_params_of(const json& j, const std::string& path) {
  StepParams p;
  p.h = number(require(j, "h", path + "."), path + ".h");
  if (j.contains("fp_tol")) p.fp_tol = number(j.at("fp_tol"), path + ".fp_tol");
  if (j.contains("fp_max_iter")) p.fp_max_iter = integer(j.at("fp_max_iter"), path + ".fp_max_iter");
  try {
    p.validate();
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return p;
}

IvpConfig ivp_of(const json& j) {
  IvpConfig c;
  c.scheme = scheme_of(require(j, "scheme", ""), "scheme");
  c.params = step_params_of(j, "");
  c.steps = integer(require(j, "steps", ""), "steps");
  if (c.steps < 0) fail("steps", "must be >= 0");
  c.initial = initial_of(require(j, "initial", ""), "initial");
  const json& output = require(j, "output", "");
  c.trajectory_csv = out_path(output, "trajectory_csv", "output");
  return c;
}

PlanConfig plan_of(const json& j) {
  PlanConfig c;
  const json& p = require(j, "planning", "");
  const std::string base = "planning.";
  c.problem.template_point = vec3(require(p, "template", base), base + "template");
  c.problem.xi0 = AlgebraVector(vec3(require(p, "xi0", base), base + "xi0"));
  c.problem.sigma = number(require(p, "sigma", base), base + "sigma");
  c.problem.h = number(require(p, "h", base), base + "h");
  c.problem.steps = integer(require(p, "steps", base), base + "steps");

  const json& targets = require(p, "targets", base);
  if (!targets.is_array() || targets.empty()) fail(base + "targets", "expected a non-empty array");
  for (size_t i = 0; i < targets.size(); ++i) {
    const std::string tpath = base + "targets[" + std::to_string(i) + "]";
    const json& t = targets[i];
    if (!t.is_object()) fail(tpath, "expected an object");
    Target target;
    target.node = integer(require(t, "node", tpath + "."), tpath + ".node");
    target.point = vec3(require(t, "point", tpath + "."), tpath + ".point");
    c.problem.targets.push_back(target);
  }

  if (p.contains("mu0")) c.mu0 = CoVector(vec3(p.at("mu0"), base + "mu0"));
  if (p.contains("nu0")) c.nu0 = CoVector(vec3(p.at("nu0"), base + "nu0"));

  if (p.contains("descent")) {
    const json& d = p.at("descent");
    const std::string dbase = base + "descent.";
    if (d.contains("max_iters")) c.descent.max_iters = integer(d.at("max_iters"), dbase + "max_iters");
    if (d.contains("step0")) c.descent.step0 = number(d.at("step0"), dbase + "step0");
    if (d.contains("armijo_c")) c.descent.armijo_c = number(d.at("armijo_c"), dbase + "armijo_c");
    if (d.contains("shrink")) c.descent.shrink = number(d.at("shrink"), dbase + "shrink");
    if (d.contains("grad_tol")) c.descent.grad_tol = number(d.at("grad_tol"), dbase + "grad_tol");
    if (d.contains("carry_trial_step")) {
      if (!d.at("carry_trial_step").is_boolean()) fail(dbase + "carry_trial_step", "expected a boolean");
      c.descent.carry_trial_step = d.at("carry_trial_step").get<bool>();
    }
  }

  try {
    c.problem.validate();
    c.descent.validate();
  } catch (const Error& e) {
    fail("planning", e.what());
  }

  const json& output = require(j, "output", "");
  c.solution_json = out_path(output, "solution_json", "output");
  c.trajectory_csv = out_path(output, "trajectory_csv", "output");
  c.momentum_csv = out_path(output, "momentum_csv", "output");
  return c;
}

CheckConfig check_of(const json& j) {
  CheckConfig c;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) fail("seed", "expected an integer");
    c.seed = j.at("seed").get<uint64_t>();
  }
  const json& output = require(j, "output", "");
  c.report_json = out_path(output, "report_json", "output");
  return c;
}

ConvergeConfig converge_of(const json& j) {
  ConvergeConfig c;
  c.scheme = scheme_of(require(j, "scheme", ""), "scheme");
  c.initial = initial_of(require(j, "initial", ""), "initial");
  c.t_final = number(require(j, "t_final", ""), "t_final");
  if (!(c.t_final > 0.0)) fail("t_final", "must be > 0");
  const json& hs = require(j, "h_list", "");
  if (!hs.is_array() || hs.size() < 3) fail("h_list", "expected an array of >= 3 step sizes");
  for (size_t i = 0; i < hs.size(); ++i) {
    const double h = number(hs[i], "h_list[" + std::to_string(i) + "]");
    if (!(h > 0.0)) fail("h_list[" + std::to_string(i) + "]", "must be > 0");
    c.h_list.push_back(h);
  }
  if (j.contains("h_ref")) {
    c.h_ref = number(j.at("h_ref"), "h_ref");
    if (!(c.h_ref > 0.0)) fail("h_ref", "must be > 0");
  }
  const json& output = require(j, "output", "");
  c.report_json = out_path(output, "report_json", "output");
  return c;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail("config", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail("config", "expected a JSON object");

  RunConfig cfg;
  const std::string cmd = text(require(j, "command", ""), "command");
  if (cmd == "ivp") {
    cfg.command = Command::ivp;
    cfg.ivp = ivp_of(j);
  } else if (cmd == "plan") {
    cfg.command = Command::plan;
    cfg.plan = plan_of(j);
  } else if (cmd == "check") {
    cfg.command = Command::check;
    cfg.check = check_of(j);
  } else if (cmd == "converge") {
    cfg.command = Command::converge;
    cfg.converge = converge_of(j);
  } else {
    fail("command", "expected one of \"ivp\", \"plan\", \"check\", \"converge\"");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("config", "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace lie_cubics::cli
