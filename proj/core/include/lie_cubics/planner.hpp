#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lie_cubics/integrators.hpp"

namespace lie_cubics {

/// A point the curve k -> g_k^-1 T0 should pass near, at step index node.
struct Target {
  int node = 0;
  Vec3 point{Vec3::Zero()};
};

/// Interpolation problem for a curve of rotations acting on R^3: starting
/// from g_0 = I with prescribed initial velocity xi0, steer through the
/// targets at their node indices. sigma sets the penalty weight 1/sigma^2;
/// sigma = +inf switches the penalty off. Targets are unit vectors for the
/// sphere experiment, but any R^3 data is accepted; the penalty is the plain
/// ambient norm either way (no projection onto the sphere).
struct PlanningProblem {
  Vec3 template_point{1.0, 0.0, 0.0};
  std::vector<Target> targets;  ///< nodes strictly increasing, last == steps
  double sigma = 1.0;
  AlgebraVector xi0;
  double h = 0.0;
  int steps = 0;

  double penalty_weight() const;
  void validate() const;
};

/// Forward run of the shooting dynamics plus the cost breakdown.
struct ShootResult {
  std::vector<HOHPState> trajectory;  ///< steps + 1 states
  double cost = 0.0;                  ///< energy + penalty
  double energy = 0.0;                ///< h * sum |u_k|^2 / 2
  double penalty = 0.0;               ///< weight/2 * sum of squared mismatches
  std::vector<double> mismatches;     ///< |g_{N_i}^-1 T0 - target_i| per target
};

/// Gradient of the shooting cost with respect to the initial momenta. Values
/// live in the algebra because the differentiation variables are covectors.
struct PlannerGradient {
  AlgebraVector grad_mu0;
  AlgebraVector grad_nu0;
};

/// Co-states of the backward pass at one step index. P0 pairs with the
/// orientation perturbation eta_k = g_k^-1 dg_k, P1 with dxi_k. V1 and V0 are
/// the negated sensitivities of the cost to mu_k and nu_k, so the gradient is
/// (-V1, -V0) at k = 0. P2, the multiplier of the averaged stage velocity, is
/// eliminated analytically by stationarity, which forces P2 = h * P0; it is
/// kept as an optional field for inspection.
struct AdjointState {
  CoVector P0;
  CoVector P1;
  AlgebraVector V0;
  AlgebraVector V1;
  std::optional<CoVector> P2;
};

struct DescentOptions {
  int max_iters = 1000;
  double step0 = 1.0;
  double armijo_c = 1e-4;
  double shrink = 0.5;
  double grad_tol = 1e-8;
  /// Start each line search from twice the previously accepted step instead
  /// of from step0. Saves most of the backtracking on ill-conditioned
  /// problems; step0 still seeds the first iteration.
  bool carry_trial_step = true;
  /// Seed the line search with the Barzilai-Borwein steplength
  /// (s.s / s.y from the last accepted move) when it is available and
  /// positive. The Armijo backtracking still guards every accepted step, so
  /// descent stays monotone; only the trial step changes.
  bool bb_trial_step = true;

  void validate() const;
};

struct DescentRecord {
  CoVector mu0;
  CoVector nu0;
  ShootResult solution;
  std::vector<double> cost_history;  ///< cost before iteration 1, then one entry per accepted step
  int iterations = 0;
  double grad_norm = 0.0;
  std::string termination;  ///< "grad_tol" or "max_iters"
};

/// Momentum kick of the penalty at a node:
///   kick(g) = -(1/sigma^2) (g^-1 T0) x (g^-1 T0 - target).
/// This same covector is both the impulse added to mu in the forward
/// dynamics and the gradient of the penalty term with respect to the
/// orientation perturbation eta.
CoVector kick(const GroupElement& g, const Vec3& template_point, const Vec3& target, double sigma);

/// Integrate the explicit one-stage scheme from (I, xi0, mu0, nu0) with the
/// momentum kicks applied at interior node indices, and evaluate the cost
///   h * sum_k |u_k|^2 / 2 + (1/2 sigma^2) * sum_i |g_{N_i}^-1 T0 - target_i|^2
/// with u_k = sharp(nu_k). The final node's kick enters only the penalty (and
/// the terminal condition of the adjoint), never the forward update.
ShootResult forward_shoot(const PlanningProblem& prob, const CoVector& mu0, const CoVector& nu0);

/// Exact gradient of the shooting cost by the discrete adjoint recursion,
/// obtained by differentiating the forward updates in reverse. With
/// x1 = h xi_{k+1}, m_k = mu_k + kick_k(g_k) and co-states a (orientation),
/// b (velocity), c (mu sensitivity), d (nu sensitivity):
///
///   terminal:  a_N = kick_N(g_N),  b_N = 0,  c_N = 0,  d_N = 0
///   e   = cay(x1) c_{k+1} - h dcay(x1, d_{k+1})
///   w   = b_{k+1} + h dcay_star(-x1, a_{k+1})
///         + h dxAd(x1, m_k)^T c_{k+1} - h^2 dxDcs(x1, m_k)^T d_{k+1}
///   a_k = kick_k(g_k) + cay(x1) a_{k+1} + dkick_k(g_k)^T e
///   b_k = w,   c_k = e,   d_k = h nu_k + d_{k+1} + h w
///
/// where dxAd and dxDcs are the derivatives of x -> Ad*_{cay(x)} m and
/// x -> dcay_star(x, m) in the subscript. The gradient is (c_0, d_0), which
/// equals (-V1_0, -V0_0) in the stored co-state convention. Validated
/// against central finite differences of forward_shoot's cost.
///
/// traj must come from forward_shoot on prob (length steps + 1), else
/// DimensionMismatch. When record is non-null it receives the steps + 1
/// co-states.
PlannerGradient backward_adjoint(const PlanningProblem& prob, const std::vector<HOHPState>& traj,
                                 std::vector<AdjointState>* record = nullptr);

/// Derivative of the inverse-differential dual in its subscript: the covector
/// D(a) defined by
///   <D(a), rho> = d/de <dcay_inv_star(sign * h * (xi + e rho), mu), a>
/// at e = 0. Closed form:
///   D(a) = -sign (h/2) (a x mu) + (h^2/4) [ (xi.mu) a + (xi.a) mu ].
/// sign must be +1 or -1.
CoVector d_maps(int sign, double h, const AlgebraVector& xi, const CoVector& mu,
                const AlgebraVector& a);

/// Gradient descent on (mu0, nu0) with Armijo backtracking. The cost history
/// is non-increasing by construction; descent stops when the gradient norm
/// reaches opts.grad_tol or after opts.max_iters accepted iterations. Throws
/// LineSearchFailure when 60 halvings fail to produce sufficient decrease.
DescentRecord descend(const PlanningProblem& prob, const CoVector& mu0, const CoVector& nu0,
                      const DescentOptions& opts);

}  // namespace lie_cubics
