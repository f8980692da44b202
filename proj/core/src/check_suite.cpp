#include "lie_cubics/check_suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <thread>

#include "lie_cubics/diagnostics.hpp"
#include "lie_cubics/planner.hpp"

namespace lie_cubics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(uint64_t seed) : engine(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine);
  }
  Vec3 vec(double scale) {
    return Vec3(uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale));
  }
  Vec3 unit() {
    // Rejection-free: normalize a Gaussian sample.
    std::normal_distribution<double> n(0.0, 1.0);
    Vec3 v(n(engine), n(engine), n(engine));
    return v.normalized();
  }
  GroupElement rotation(double scale = 2.0) { return cay(AlgebraVector(vec(scale))); }
  HOHPState state(double vel = 2.0, double mom = 2.0) {
    return HOHPState{rotation(), AlgebraVector(vec(vel)), CoVector(vec(mom)), CoVector(vec(mom))};
  }
};

HOHPState periodic_state() {
  return HOHPState{GroupElement::Identity(), AlgebraVector(-6.0, 1.0, 0.0),
                   CoVector(0.0, 36.0, 0.0), CoVector(0.0, 0.0, 6.0)};
}

CheckResult max_check(std::string name, double measured, double threshold, std::string detail) {
  return CheckResult{std::move(name), measured <= threshold, measured, threshold,
                     std::move(detail)};
}

CheckResult min_check(std::string name, double measured, double threshold, std::string detail) {
  return CheckResult{std::move(name), measured >= threshold, measured, threshold,
                     std::move(detail)};
}

// --- algebra ----------------------------------------------------------------

CheckResult check_hat_vee(Rng rng) {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const AlgebraVector x(rng.vec(10.0));
    worst = std::max(worst, (vee(hat(x)) - x).norm());
    const Mat3 a = hat(x);
    worst = std::max(worst, (a + a.transpose()).norm());
  }
  return max_check("algebra.hat_vee_roundtrip", worst, 1e-15,
                   "max |vee(hat(x)) - x| and skewness defect over 200 samples");
}

CheckResult check_cay_orthogonality(Rng rng) {
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double scale = std::pow(10.0, rng.uniform(-2.0, 3.0));
    const GroupElement g = cay(AlgebraVector(rng.unit() * scale));
    worst = std::max(worst, GroupElement::orthogonalityDefect(g.matrix()));
    worst = std::max(worst, std::abs(g.matrix().determinant() - 1.0));
  }
  return max_check("algebra.cay_orthogonality", worst, 1e-10,
                   "max orthogonality/determinant defect of cay(x), |x| up to 1e3");
}

CheckResult check_cay_inverse_product(Rng rng) {
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const AlgebraVector x(rng.vec(10.0 / std::sqrt(3.0)));
    worst = std::max(worst, (cay(-x).matrix() * cay(x).matrix() - Mat3::Identity()).norm());
  }
  return max_check("algebra.cay_inverse_product", worst, 1e-12, "max |cay(-x) cay(x) - I|_F");
}

CheckResult check_cay_paths_agree(Rng rng) {
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const AlgebraVector x(rng.vec(10.0));
    worst = std::max(worst, (cay(x).matrix() - cay_by_solve(x).matrix()).norm());
  }
  return max_check("algebra.cay_closed_form_vs_solve", worst, 1e-13,
                   "max |cay(x) - cay_by_solve(x)|_F");
}

CheckResult check_dcay_roundtrip(Rng rng) {
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const AlgebraVector x(rng.vec(10.0 / std::sqrt(3.0)));
    const AlgebraVector y(rng.vec(5.0));
    worst = std::max(worst, (dcay_inv(x, dcay(x, y)) - y).norm());
  }
  return max_check("algebra.dcay_roundtrip", worst, 1e-12, "max |dcay_inv(x, dcay(x,y)) - y|");
}

CheckResult check_coadjoint_transport(Rng rng) {
  // dcay_inv_star(-x, dcay_star(x, .)) must equal Ad*_{cay(x)}, compared as
  // the 3x3 matrices of the two linear maps.
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const AlgebraVector x(rng.vec(10.0 / std::sqrt(3.0)));
    Mat3 lhs, rhs;
    for (int j = 0; j < 3; ++j) {
      const CoVector ej(Vec3::Unit(j));
      lhs.col(j) = dcay_inv_star(-x, dcay_star(x, ej)).m;
    }
    rhs = cay(x).matrix().transpose();
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return max_check("algebra.coadjoint_transport_identity", worst, 1e-12,
                   "max |dcay_inv_star(-x,.) o dcay_star(x,.) - Ad*_cay(x)|_F");
}

CheckResult check_dcay_fd_slope(Rng rng) {
  // dcay must match the trivialized central difference of cay with an
  // O(eps^2) defect. The increments stay above the double-precision
  // differencing floor.
  std::vector<double> eps_list{1e-2, 1e-3, 1e-4};
  std::vector<std::pair<AlgebraVector, AlgebraVector>> samples;
  for (int i = 0; i < 50; ++i) {
    samples.emplace_back(AlgebraVector(rng.vec(2.0)), AlgebraVector(rng.vec(2.0)));
  }
  std::vector<double> errs;
  for (double eps : eps_list) {
    double worst = 0.0;
    for (const auto& [x, y] : samples) {
      const Mat3 diff =
          (cay(x + eps * y).matrix() - cay(x - eps * y).matrix()) / (2.0 * eps);
      const AlgebraVector fd = vee(diff * cay(x).matrix().transpose());
      worst = std::max(worst, (fd - dcay(x, y)).norm());
    }
    errs.push_back(worst);
  }
  const double slope = loglog_slope(eps_list, errs);
  return CheckResult{"algebra.dcay_finite_difference_slope", std::abs(slope - 2.0) <= 0.3, slope,
                     2.0, "log-log slope of |central difference of cay - dcay| vs eps"};
}

// --- integrators --------------------------------------------------------------

CheckResult momentum_conservation(const std::string& name, Scheme scheme, Rng rng) {
  StepParams p;
  p.h = 1e-3;
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    HOHPState s = rng.state(3.0, 3.0);
    const CoVector j0 = momentum_map(s);
    const double scale = 1.0 + s.mu.norm();
    for (int k = 0; k < 10000; ++k) {
      s = step(scheme, s, p);
    }
    worst = std::max(worst, (momentum_map(s) - j0).norm() / scale);
  }
  return max_check(name, worst, 1e-11,
                   "relative drift of Ad*_{g^-1} mu over 1e4 steps, 3 random states");
}

CheckResult check_left_invariance(Rng rng) {
  StepParams p;
  p.h = 1e-2;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const HOHPState s = rng.state();
    const GroupElement left = rng.rotation();
    for (Scheme scheme : {Scheme::euler, Scheme::sv}) {
      const HOHPState stepped = step(scheme, s, p);
      HOHPState translated = s;
      translated.g = left * s.g;
      const HOHPState stepped_translated = step(scheme, translated, p);
      HOHPState expect = stepped;
      expect.g = left * stepped.g;
      worst = std::max(worst, state_distance(stepped_translated, expect));
    }
  }
  return max_check("integrators.left_invariance", worst, 1e-13,
                   "step commutes with left translation of the initial orientation");
}

CheckResult check_hamiltonian_sv() {
  StepParams p;
  p.h = kTwoPi / 40.0;
  HOHPState s = periodic_state();
  const double h0 = hamiltonian(s);
  double drift = 0.0;
  double one_step = 0.0;
  double prev = h0;
  for (int k = 0; k < 10000; ++k) {
    s = sv_step(s, p);
    const double hk = hamiltonian(s);
    drift = std::max(drift, std::abs(hk - h0));
    one_step = std::max(one_step, std::abs(hk - prev));
    prev = hk;
  }
  return max_check("integrators.hamiltonian_bounded_sv", drift, 10.0 * one_step,
                   "max |H_k - H_0| over 1e4 sv steps vs 10x the largest one-step change");
}

// --- diagnostics ---------------------------------------------------------------

CheckResult symplectic_slope(const std::string& name, Scheme scheme, Rng rng) {
  StepParams p;
  p.h = 0.2;
  p.fp_tol = 1e-18;
  p.fp_max_iter = 400;
  const std::vector<double> eps_list{1e-3, 1e-4, 1e-5};
  double worst_slope_err = 0.0;
  double last_slope = 2.0;
  for (int i = 0; i < 3; ++i) {
    const HOHPState s = rng.state(2.0, 10.0);
    std::vector<double> devs;
    for (double eps : eps_list) devs.push_back(check_symplectic(scheme, s, p, eps));
    last_slope = loglog_slope(eps_list, devs);
    worst_slope_err = std::max(worst_slope_err, std::abs(last_slope - 2.0));
  }
  return CheckResult{name, worst_slope_err <= 0.2, last_slope, 2.0,
                     "finite-difference symplecticity defect scales as O(eps^2)"};
}

CheckResult convergence_check(const std::string& name, Scheme scheme, double expected) {
  // Horizon inside the asymptotic range of both schemes for this data; over
  // a full period the coarsest steps are pre-asymptotic for the first-order
  // scheme.
  const double T = 1.0;
  const ConvergenceReport r = convergence_order(
      scheme, periodic_state(), T, {T / 100.0, T / 200.0, T / 400.0, T / 800.0}, T / 6400.0);
  return CheckResult{name, std::abs(r.slope - expected) <= 0.1, r.slope, expected,
                     "self-convergence order at t = 1 from the periodic initial data"};
}

CheckResult check_nhp_order() {
  std::vector<double> hs{kTwoPi / 200.0, kTwoPi / 400.0, kTwoPi / 800.0};
  std::vector<double> residuals;
  for (double h : hs) {
    StepParams p;
    p.h = h;
    const auto traj = flow(periodic_state(), p, static_cast<int>(std::llround(kTwoPi / h)),
                           Scheme::sv);
    const auto res = nhp_residual(traj, h);
    residuals.push_back(*std::max_element(res.begin(), res.end()));
  }
  const double slope = loglog_slope(hs, residuals);
  return min_check("diagnostics.nhp_residual_order", slope, 1.8,
                   "order of the third-derivative defect of xi along sv trajectories");
}

// --- planner --------------------------------------------------------------------

PlanningProblem random_problem(Rng& rng) {
  PlanningProblem prob;
  prob.template_point = rng.unit();
  prob.sigma = rng.uniform(0.05, 1.0);
  prob.xi0 = AlgebraVector(rng.vec(3.0));
  prob.h = rng.uniform(0.01, 0.05);
  prob.steps = 10 + static_cast<int>(rng.uniform(0.0, 40.0));
  const int l = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
  std::vector<int> nodes;
  for (int i = 0; i < l; ++i) {
    nodes.push_back(1 + static_cast<int>(rng.uniform(0.0, prob.steps - 1.0)));
  }
  nodes.push_back(prob.steps);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (int node : nodes) prob.targets.push_back(Target{node, rng.unit()});
  return prob;
}

CheckResult check_gradient_fd(Rng rng) {
  double worst = 0.0;
  for (int inst = 0; inst < 20; ++inst) {
    PlanningProblem prob = random_problem(rng);
    const CoVector mu0(rng.vec(1.0));
    const CoVector nu0(rng.vec(1.0));
    const auto shot = forward_shoot(prob, mu0, nu0);
    const PlannerGradient grad = backward_adjoint(prob, shot.trajectory);

    const double fd_eps = 1e-6;
    for (int j = 0; j < 3; ++j) {
      Vec3 dm = Vec3::Zero();
      dm(j) = fd_eps;
      const double plus = forward_shoot(prob, mu0 + CoVector(dm), nu0).cost;
      const double minus = forward_shoot(prob, mu0 - CoVector(dm), nu0).cost;
      const double fd = (plus - minus) / (2.0 * fd_eps);
      worst = std::max(worst, std::abs(grad.grad_mu0.v(j) - fd) / (1.0 + std::abs(fd)));

      const double plus_n = forward_shoot(prob, mu0, nu0 + CoVector(dm)).cost;
      const double minus_n = forward_shoot(prob, mu0, nu0 - CoVector(dm)).cost;
      const double fd_n = (plus_n - minus_n) / (2.0 * fd_eps);
      worst = std::max(worst, std::abs(grad.grad_nu0.v(j) - fd_n) / (1.0 + std::abs(fd_n)));
    }
  }
  return max_check("planner.gradient_matches_fd", worst, 1e-5,
                   "adjoint gradient vs central differences on 20 random instances");
}

CheckResult check_kick_structure(Rng rng) {
  PlanningProblem prob = random_problem(rng);
  prob.sigma = 0.1;
  const auto shot = forward_shoot(prob, CoVector(rng.vec(1.0)), CoVector(rng.vec(1.0)));
  const auto& traj = shot.trajectory;

  double worst = 0.0;
  size_t ti = 0;
  CoVector plateau = momentum_map(traj[0]);
  for (int k = 0; k < prob.steps; ++k) {
    const bool node = ti < prob.targets.size() && prob.targets[ti].node == k;
    const CoVector next = momentum_map(traj[static_cast<size_t>(k) + 1]);
    if (node) {
      const CoVector phi =
          kick(traj[static_cast<size_t>(k)].g, prob.template_point, prob.targets[ti].point,
               prob.sigma);
      const CoVector expected_jump = Ad_star_inv(traj[static_cast<size_t>(k)].g, phi);
      worst = std::max(worst, (next - plateau - expected_jump).norm());
      plateau = next;
      ++ti;
    } else {
      worst = std::max(worst, (next - plateau).norm());
    }
  }
  return max_check("planner.momentum_kick_structure", worst, 1e-10,
                   "Ad*_{g^-1} mu piecewise constant with closed-form jumps at nodes");
}

CheckResult check_descent_monotone(Rng rng) {
  PlanningProblem prob = random_problem(rng);
  prob.sigma = 0.2;
  DescentOptions opts;
  opts.max_iters = 50;
  const DescentRecord rec = descend(prob, CoVector(), CoVector(), opts);
  double worst = 0.0;
  for (size_t i = 1; i < rec.cost_history.size(); ++i) {
    worst = std::max(worst, rec.cost_history[i] - rec.cost_history[i - 1]);
  }
  return max_check("planner.descent_monotone", worst, 0.0,
                   "largest increase between consecutive accepted costs");
}

CheckResult check_equivariance(Rng rng) {
  PlanningProblem prob;
  prob.template_point = Vec3(1.0, 0.0, 0.0);
  prob.sigma = 0.2;
  prob.xi0 = AlgebraVector(0.0, 0.0, 2.0);
  prob.h = 0.02;
  prob.steps = 50;
  prob.targets = {Target{25, Vec3(0.0, 1.0, 0.0)}, Target{50, Vec3(0.0, 0.0, 1.0)}};

  const GroupElement rot = rng.rotation();
  PlanningProblem conj = prob;
  conj.template_point = rot.act(prob.template_point);
  conj.xi0 = AlgebraVector(rot.act(prob.xi0.v));
  for (auto& t : conj.targets) t.point = rot.act(t.point);

  DescentOptions opts;
  opts.max_iters = 400;
  opts.grad_tol = 1e-10;
  const double cost = descend(prob, CoVector(), CoVector(), opts).solution.cost;
  const double cost_rot = descend(conj, CoVector(), CoVector(), opts).solution.cost;
  const double diff = std::abs(cost - cost_rot) / (1.0 + std::abs(cost));
  return max_check("planner.rotational_equivariance", diff, 1e-8,
                   "optimal cost unchanged under a rigid rotation of the problem data");
}

}  // namespace

std::vector<CheckResult> run_check_suite(const CheckOptions& options) {
  using Job = std::function<CheckResult(uint64_t)>;
  std::vector<std::pair<std::string, Job>> jobs;

  auto add = [&](const std::string& name, auto fn) {
    jobs.emplace_back(name, [fn](uint64_t seed) { return fn(Rng(seed)); });
  };

  add("algebra.hat_vee_roundtrip", check_hat_vee);
  add("algebra.cay_orthogonality", check_cay_orthogonality);
  add("algebra.cay_inverse_product", check_cay_inverse_product);
  add("algebra.cay_closed_form_vs_solve", check_cay_paths_agree);
  add("algebra.dcay_roundtrip", check_dcay_roundtrip);
  add("algebra.coadjoint_transport_identity", check_coadjoint_transport);
  add("algebra.dcay_finite_difference_slope", check_dcay_fd_slope);
  jobs.emplace_back("integrators.momentum_conservation_euler", [](uint64_t seed) {
    return momentum_conservation("integrators.momentum_conservation_euler", Scheme::euler,
                                 Rng(seed));
  });
  jobs.emplace_back("integrators.momentum_conservation_sv", [](uint64_t seed) {
    return momentum_conservation("integrators.momentum_conservation_sv", Scheme::sv, Rng(seed));
  });
  add("integrators.left_invariance", check_left_invariance);
  jobs.emplace_back("integrators.hamiltonian_bounded_sv",
                    [](uint64_t) { return check_hamiltonian_sv(); });
  jobs.emplace_back("diagnostics.symplectic_slope_euler", [](uint64_t seed) {
    return symplectic_slope("diagnostics.symplectic_slope_euler", Scheme::euler, Rng(seed));
  });
  jobs.emplace_back("diagnostics.symplectic_slope_sv", [](uint64_t seed) {
    return symplectic_slope("diagnostics.symplectic_slope_sv", Scheme::sv, Rng(seed));
  });
  jobs.emplace_back("diagnostics.convergence_euler", [](uint64_t) {
    return convergence_check("diagnostics.convergence_euler", Scheme::euler, 1.0);
  });
  jobs.emplace_back("diagnostics.convergence_sv", [](uint64_t) {
    return convergence_check("diagnostics.convergence_sv", Scheme::sv, 2.0);
  });
  jobs.emplace_back("diagnostics.nhp_residual_order", [](uint64_t) { return check_nhp_order(); });
  add("planner.gradient_matches_fd", check_gradient_fd);
  add("planner.momentum_kick_structure", check_kick_structure);
  add("planner.descent_monotone", check_descent_monotone);
  add("planner.rotational_equivariance", check_equivariance);

  std::vector<CheckResult> results(jobs.size());
  std::atomic<size_t> cursor{0};
  int threads = options.max_threads > 0 ? options.max_threads
                                        : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));

  auto worker = [&]() {
    while (true) {
      const size_t i = cursor.fetch_add(1);
      if (i >= jobs.size()) break;
      const uint64_t seed = options.seed ^ fnv1a(jobs[i].first);
      results[i] = jobs[i].second(seed);
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

}  // namespace lie_cubics
