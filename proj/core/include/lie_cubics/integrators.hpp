#pragma once

#include <vector>

#include "lie_cubics/algebra.hpp"
#include "lie_cubics/errors.hpp"

namespace lie_cubics {

/// Integrator state (g, xi, mu, nu): orientation, left-trivialized velocity
/// and the two conjugate momenta of the acceleration-penalty Lagrangian
/// l(xi, u) = |u|^2 / 2.
struct HOHPState {
  GroupElement g;
  AlgebraVector xi;
  CoVector mu;
  CoVector nu;

  bool allFinite() const {
    return g.matrix().allFinite() && xi.allFinite() && mu.allFinite() && nu.allFinite();
  }
};

struct StepParams {
  double h = 0.0;          ///< time step, > 0
  double fp_tol = 1e-12;   ///< fixed-point convergence tolerance (sv only)
  int fp_max_iter = 100;   ///< fixed-point iteration budget (sv only)

  void validate() const {
    if (!(h > 0.0)) throw Error("StepParams: h must be > 0");
    if (!(fp_tol > 0.0)) throw Error("StepParams: fp_tol must be > 0");
    if (fp_max_iter < 1) throw Error("StepParams: fp_max_iter must be >= 1");
  }
};

enum class Scheme { euler, sv };

// Both steppers are hand specializations of the variational one-step
// equations for a general s-stage tableau,
//
//   Xi^i   = xi_k + h sum_j a_ij V^j           (stage velocities)
//   xi_k+1 = xi_k + h sum_j b_j V^j
//   g_k+1  = g_k cay(h XI),  XI = sum_j b_j Xi^j
//   mu_k+1 = dcay_inv_star(-h XI, dcay_star(h XI, mu_k))
//   nu_k+1 = nu_k - h mucheck,  mucheck = dcay_star(h XI, mu_k)
//
// with stage momenta mu^i = 0, stage conditions nu^i = h b_i mucheck, and
// stage accelerations V^i determined by (V^i)^flat = sum_j (a_ji/b_i) nu^j
// + nu_k+1. Substituting the registered tableaus eliminates all internal
// stages in closed form; a generic s-stage solver is intentionally not
// provided.

/// One-step map for the one-stage tableau (a = [[1]], b = [1]). Eliminating
/// the stages gives the explicit update, evaluated in this order:
///
///   xi_1 = xi_0 + h sharp(nu_0)
///   mu_1 = dcay_inv_star(-h xi_1, dcay_star(h xi_1, mu_0))
///   nu_1 = nu_0 - h dcay_star(-h xi_1, mu_1)
///   g_1  = g_0 cay(h xi_1)
///
/// The nu update equals nu_0 - h dcay_star(h xi_1, mu_0); the two forms are
/// related by the mu update and agree to round-off.
HOHPState euler_step(const HOHPState& s, const StepParams& p);

/// One-step map for the two-stage averaged tableau (a = [[0,0],[1/2,1/2]],
/// b = [1/2,1/2]). Stage elimination yields the implicit update with the
/// averaged velocity XI = (xi_0 + xi_1)/2:
///
///   xi_1 = xi_0 + h sharp(nu_0 - (h/2) dcay_star(h XI, mu_0))   (implicit)
///   mu_1 = dcay_inv_star(-h XI, dcay_star(h XI, mu_0))
///   nu_1 = nu_0 - h dcay_star(h XI, mu_0)
///   g_1  = g_0 cay(h XI)
///
/// xi_1 is found by fixed-point iteration on
///   f(xi) = xi - xi_0 - h sharp(nu_0 - (h/2) dcay_star(h (xi+xi_0)/2, mu_0)),
/// seeded with xi_0. Note the minus sign in front of (h/2): it follows from
/// the stage elimination above and makes f consistent with the xi_1 update.
/// Throws NonConvergence when the iteration exceeds fp_max_iter with
/// residual above fp_tol, which signals a too-large step.
HOHPState sv_step(const HOHPState& s, const StepParams& p);

/// Dispatch on scheme.
HOHPState step(Scheme scheme, const HOHPState& s, const StepParams& p);

/// Iterate the one-step map n times; returns the n+1 visited states with
/// trajectory[0] = s0. NonConvergence from a step is rethrown with
/// step_index set to the failing step.
std::vector<HOHPState> flow(const HOHPState& s0, const StepParams& p, int n, Scheme scheme);

}  // namespace lie_cubics
