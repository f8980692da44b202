#pragma once

#include <functional>
#include <vector>

#include "lie_cubics/integrators.hpp"

namespace lie_cubics {

/// Tangent vector to the extended phase space in left-trivialized
/// coordinates: eta = g^-1 dg, plus the linear displacements of xi, mu, nu.
struct TangentVariation {
  AlgebraVector eta;
  AlgebraVector dxi;
  CoVector dmu;
  CoVector dnu;
};

/// Result of a self-convergence study: per-step-size errors against a fine
/// reference and the least-squares slope of log(error) vs log(h).
struct ConvergenceReport {
  std::vector<double> step_sizes;  ///< strictly decreasing
  std::vector<double> errors;      ///< product-metric errors at t = T
  double slope = 0.0;
};

/// Conserved momentum of the free dynamics: Ad*_{g^-1} mu.
CoVector momentum_map(const HOHPState& s);

/// H = |sharp(nu)|^2 / 2 + <mu, xi>; independent of g.
double hamiltonian(const HOHPState& s);

/// Canonical symplectic form in trivialized coordinates:
///   w(v1, v2) = -<dmu1, eta2> - <dnu1, dxi2> + <dmu2, eta1> + <dnu2, dxi1>
///               + <mu, [eta1, eta2]>.
double symplectic_form(const HOHPState& s, const TangentVariation& v1, const TangentVariation& v2);

/// Coordinate matrix of symplectic_form in the basis (eta, dxi, dmu, dnu).
Eigen::Matrix<double, 12, 12> symplectic_matrix(const HOHPState& s);

/// Displace a state by coordinates z = (eta, dxi, dmu, dnu): the group factor
/// moves to g cay(eta), the linear factors translate.
HOHPState displace_state(const HOHPState& s, const Eigen::Matrix<double, 12, 1>& z);

/// Coordinates of s relative to base, inverse of displace_state for s near
/// base (uses cay_inv on the group factor).
Eigen::Matrix<double, 12, 1> state_coordinates(const HOHPState& base, const HOHPState& s);

/// Central-difference symplecticity defect of an arbitrary one-step map:
/// builds the 12x12 Jacobian J of step_map at s with increment fd_eps and
/// returns |J^T W(step_map(s)) J - W(s)|_F. For a symplectic map the value
/// scales as O(fd_eps^2). This overload differences in double precision;
/// expect a noise floor of about machine epsilon / fd_eps.
double check_symplectic(const std::function<HOHPState(const HOHPState&)>& step_map,
                        const HOHPState& s, double fd_eps);

/// Overload for the built-in schemes. The differencing runs on the
/// long-double kernels so the quadratic scaling stays measurable down to
/// fd_eps near 1e-5; pass fp_tol around 1e-18 for the implicit scheme when
/// probing that regime.
double check_symplectic(Scheme scheme, const HOHPState& s, const StepParams& p, double fd_eps);

/// Product-metric distance: Frobenius on the group factor plus Euclidean on
/// xi, mu, nu.
double state_distance(const HOHPState& a, const HOHPState& b);

/// Self-convergence study over [0, T]. Each h in h_list must divide T; errors
/// are measured at t = T against the trajectory with step h_ref (default:
/// min(h_list)/8). h_list must have at least 3 entries.
ConvergenceReport convergence_order(Scheme scheme, const HOHPState& s0, double T,
                                    const std::vector<double>& h_list, double h_ref = 0.0);

/// Third-order residual |D3 xi_k - (D2 xi_k) x xi_k| at interior indices,
/// with fourth-order central stencils D2, D3 (so the stencil error cannot
/// mask the scheme's second-order error). Requires at least 7 states; throws
/// TooShort otherwise. Returns one value per interior index k = 3..n-3.
std::vector<double> nhp_residual(const std::vector<HOHPState>& traj, double h);

/// Least-squares slope of log(y) vs log(x); helper for order measurements.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lie_cubics
