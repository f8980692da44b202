#include "lie_cubics/planner.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lie_cubics {

double PlanningProblem::penalty_weight() const {
  if (std::isinf(sigma)) return 0.0;
  return 1.0 / (sigma * sigma);
}

void PlanningProblem::validate() const {
  if (!(h > 0.0)) throw Error("PlanningProblem: h must be > 0");
  if (steps < 1) throw Error("PlanningProblem: steps must be >= 1");
  if (!(sigma > 0.0)) throw Error("PlanningProblem: sigma must be > 0");
  if (!template_point.allFinite() || !xi0.allFinite()) {
    throw Error("PlanningProblem: non-finite data");
  }
  if (targets.empty()) throw Error("PlanningProblem: needs at least one target");
  int prev = 0;
  for (const auto& t : targets) {
    if (t.node <= prev) throw Error("PlanningProblem: target nodes must be strictly increasing and > 0");
    if (!t.point.allFinite()) throw Error("PlanningProblem: non-finite target");
    prev = t.node;
  }
  if (targets.back().node != steps) {
    throw Error("PlanningProblem: last target node must equal steps");
  }
}

void DescentOptions::validate() const {
  if (max_iters < 1) throw Error("DescentOptions: max_iters must be >= 1");
  if (!(step0 > 0.0)) throw Error("DescentOptions: step0 must be > 0");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw Error("DescentOptions: armijo_c must be in (0,1)");
  if (!(shrink > 0.0 && shrink < 1.0)) throw Error("DescentOptions: shrink must be in (0,1)");
  if (!(grad_tol > 0.0)) throw Error("DescentOptions: grad_tol must be > 0");
}

CoVector kick(const GroupElement& g, const Vec3& template_point, const Vec3& target,
              double sigma) {
  if (!(sigma > 0.0)) throw Error("kick: sigma must be > 0");
  if (std::isinf(sigma)) return CoVector();
  const Vec3 q = g.inverse().act(template_point);
  return CoVector(-(q.cross(q - target)) / (sigma * sigma));
}

ShootResult forward_shoot(const PlanningProblem& prob, const CoVector& mu0, const CoVector& nu0) {
  prob.validate();
  const double h = prob.h;
  const int n = prob.steps;

  ShootResult out;
  out.trajectory.reserve(static_cast<size_t>(n) + 1);
  HOHPState s{GroupElement::Identity(), prob.xi0, mu0, nu0};
  out.trajectory.push_back(s);

  size_t next = 0;
  for (int k = 0; k < n; ++k) {
    out.energy += 0.5 * h * s.nu.m.squaredNorm();  // u_k = sharp(nu_k)

    CoVector m = s.mu;
    if (next < prob.targets.size() && prob.targets[next].node == k) {
      m += kick(s.g, prob.template_point, prob.targets[next].point, prob.sigma);
      ++next;
    }

    const AlgebraVector xi1 = s.xi + h * sharp(s.nu);
    const AlgebraVector hxi1 = h * xi1;
    const CoVector mucheck = dcay_star(hxi1, m);
    s = HOHPState{s.g * cay(hxi1), xi1, dcay_inv_star(-1.0 * hxi1, mucheck),
                  s.nu - h * mucheck};
    out.trajectory.push_back(s);
  }

  const double w = prob.penalty_weight();
  out.mismatches.reserve(prob.targets.size());
  for (const auto& t : prob.targets) {
    const Vec3 q = out.trajectory[static_cast<size_t>(t.node)].g.inverse().act(prob.template_point);
    const double miss = (q - t.point).norm();
    out.mismatches.push_back(miss);
    out.penalty += 0.5 * w * miss * miss;
  }
  out.cost = out.energy + out.penalty;
  return out;
}

namespace {

// Transposed derivative of x -> Ad*_{cay(x)} m in x, applied to c.
Vec3 dxAd_T(const Vec3& x, const Vec3& m, const Vec3& c) {
  const double kap = 1.0 + 0.25 * x.squaredNorm();
  const Vec3 p = -x.cross(m) + 0.5 * x.cross(x.cross(m));
  return -(p.dot(c) / (2.0 * kap * kap)) * x +
         (-m.cross(c) + 0.5 * x.cross(m).cross(c) + 0.5 * m.cross(c.cross(x))) / kap;
}

// Transposed derivative of x -> dcay_star(x, m) in x, applied to d.
Vec3 dxDcs_T(const Vec3& x, const Vec3& m, const Vec3& d) {
  const double kap = 1.0 + 0.25 * x.squaredNorm();
  const Vec3 q = m - 0.5 * x.cross(m);
  return -(q.dot(d) / (2.0 * kap * kap)) * x - (0.5 / kap) * m.cross(d);
}

}  // namespace

PlannerGradient backward_adjoint(const PlanningProblem& prob, const std::vector<HOHPState>& traj,
                                 std::vector<AdjointState>* record) {
  prob.validate();
  const int n = prob.steps;
  if (traj.size() != static_cast<size_t>(n) + 1) {
    throw DimensionMismatch("backward_adjoint: trajectory length " + std::to_string(traj.size()) +
                            " does not match steps + 1 = " + std::to_string(n + 1));
  }
  const double h = prob.h;
  const double w = prob.penalty_weight();

  if (record) record->assign(static_cast<size_t>(n) + 1, AdjointState{});

  // Co-states, initialized at the terminal index. The final target sits at
  // node n by construction.
  CoVector a = kick(traj.back().g, prob.template_point, prob.targets.back().point, prob.sigma);
  CoVector b;
  AlgebraVector c;
  AlgebraVector d;
  auto store = [&](int k) {
    if (!record) return;
    auto& rec = (*record)[static_cast<size_t>(k)];
    rec.P0 = a;
    rec.P1 = b;
    rec.V0 = -d;
    rec.V1 = -c;
    rec.P2 = h * a;
  };
  store(n);

  // Walks backward over targets with node < n.
  std::ptrdiff_t ti = static_cast<std::ptrdiff_t>(prob.targets.size()) - 2;

  for (int k = n - 1; k >= 0; --k) {
    const AlgebraVector x1 = h * traj[static_cast<size_t>(k) + 1].xi;
    const Mat3 r1 = cay(x1).matrix();
    const HOHPState& sk = traj[static_cast<size_t>(k)];

    const Target* node_target = nullptr;
    if (ti >= 0 && prob.targets[static_cast<size_t>(ti)].node == k) {
      node_target = &prob.targets[static_cast<size_t>(ti)];
      --ti;
    }

    CoVector kick_k;
    CoVector m = sk.mu;
    if (node_target) {
      kick_k = kick(sk.g, prob.template_point, node_target->point, prob.sigma);
      m += kick_k;
    }

    const Vec3 e = r1 * c.v - h * dcay(x1, d).v;
    const Vec3 wv = b.m + h * dcay_star(-1.0 * x1, a).m + h * dxAd_T(x1.v, m.m, c.v) -
                    h * h * dxDcs_T(x1.v, m.m, d.v);

    Vec3 anew = r1 * a.m;
    if (node_target) {
      const Vec3 q = sk.g.inverse().act(prob.template_point);
      anew += kick_k.m;
      anew += -w * q.cross(node_target->point.cross(e));  // dkick^T e
    }

    d = AlgebraVector(h * sk.nu.m + d.v + h * wv);
    c = AlgebraVector(e);
    b = CoVector(wv);
    a = CoVector(anew);
    store(k);
  }

  return PlannerGradient{c, d};
}

CoVector d_maps(int sign, double h, const AlgebraVector& xi, const CoVector& mu,
                const AlgebraVector& a) {
  if (sign != 1 && sign != -1) throw Error("d_maps: sign must be +1 or -1");
  const Vec3 out = -static_cast<double>(sign) * 0.5 * h * a.v.cross(mu.m) +
                   0.25 * h * h * (xi.v.dot(mu.m) * a.v + xi.v.dot(a.v) * mu.m);
  return CoVector(out);
}

DescentRecord descend(const PlanningProblem& prob, const CoVector& mu0, const CoVector& nu0,
                      const DescentOptions& opts) {
  prob.validate();
  opts.validate();

  DescentRecord rec;
  rec.mu0 = mu0;
  rec.nu0 = nu0;
  rec.solution = forward_shoot(prob, rec.mu0, rec.nu0);
  rec.cost_history.push_back(rec.solution.cost);
  rec.termination = "max_iters";

  double trial = opts.step0;
  Eigen::Matrix<double, 6, 1> prev_p = Eigen::Matrix<double, 6, 1>::Zero();
  Eigen::Matrix<double, 6, 1> prev_g = Eigen::Matrix<double, 6, 1>::Zero();
  bool have_prev = false;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    const PlannerGradient grad = backward_adjoint(prob, rec.solution.trajectory);
    const double g2 = grad.grad_mu0.squaredNorm() + grad.grad_nu0.squaredNorm();
    rec.grad_norm = std::sqrt(g2);
    if (rec.grad_norm <= opts.grad_tol) {
      rec.termination = "grad_tol";
      break;
    }

    Eigen::Matrix<double, 6, 1> p, g;
    p << rec.mu0.m, rec.nu0.m;
    g << grad.grad_mu0.v, grad.grad_nu0.v;

    double t = opts.carry_trial_step ? trial : opts.step0;
    if (opts.bb_trial_step && have_prev) {
      const Eigen::Matrix<double, 6, 1> s = p - prev_p;
      const Eigen::Matrix<double, 6, 1> y = g - prev_g;
      const double sy = s.dot(y);
      if (sy > 0.0) {
        const double bb = s.squaredNorm() / sy;
        if (std::isfinite(bb) && bb > 0.0) t = std::min(bb, 1e8);
      }
    }
    prev_p = p;
    prev_g = g;
    have_prev = true;

    int halvings = 0;
    ShootResult cand;
    CoVector mu_c, nu_c;
    while (true) {
      mu_c = rec.mu0 - CoVector(t * grad.grad_mu0.v);
      nu_c = rec.nu0 - CoVector(t * grad.grad_nu0.v);
      cand = forward_shoot(prob, mu_c, nu_c);
      if (cand.cost <= rec.solution.cost - opts.armijo_c * t * g2) break;
      t *= opts.shrink;
      if (++halvings > 60) {
        throw LineSearchFailure(
            "descend: line search exhausted 60 halvings at iteration " + std::to_string(iter),
            iter, halvings);
      }
    }

    rec.mu0 = mu_c;
    rec.nu0 = nu_c;
    rec.solution = std::move(cand);
    rec.cost_history.push_back(rec.solution.cost);
    rec.iterations = iter + 1;
    trial = 2.0 * t;
  }

  if (rec.termination == "max_iters") {
    // Final gradient for the record.
    const PlannerGradient grad = backward_adjoint(prob, rec.solution.trajectory);
    rec.grad_norm = std::sqrt(grad.grad_mu0.squaredNorm() + grad.grad_nu0.squaredNorm());
    if (rec.grad_norm <= opts.grad_tol) rec.termination = "grad_tol";
  }

  return rec;
}

}  // namespace lie_cubics
