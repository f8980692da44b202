#pragma once

// Scalar-generic kernels behind the public double-precision API. The public
// entry points in algebra.hpp / integrators.hpp instantiate these with
// double; the finite-difference symplecticity checker instantiates them with
// long double, where the O(eps^2) defect scaling stays above the rounding
// floor for the increment range it probes.

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "lie_cubics/errors.hpp"

namespace lie_cubics::kernel {

template <typename S>
using V3 = Eigen::Matrix<S, 3, 1>;
template <typename S>
using M3 = Eigen::Matrix<S, 3, 3>;

template <typename S>
S kappa(const V3<S>& x) {
  return S(1) + S(0.25L) * x.squaredNorm();
}

template <typename S>
M3<S> hat(const V3<S>& x) {
  M3<S> a;
  a << S(0), -x.z(), x.y(), x.z(), S(0), -x.x(), -x.y(), x.x(), S(0);
  return a;
}

template <typename S>
V3<S> vee(const M3<S>& a) {
  return V3<S>(S(0.5L) * (a(2, 1) - a(1, 2)), S(0.5L) * (a(0, 2) - a(2, 0)),
               S(0.5L) * (a(1, 0) - a(0, 1)));
}

template <typename S>
M3<S> cay(const V3<S>& x) {
  const M3<S> xh = hat(x);
  return M3<S>(M3<S>::Identity() + (xh + S(0.5L) * xh * xh) / kappa(x));
}

template <typename S>
V3<S> cay_inv(const M3<S>& r) {
  const M3<S> num = r - M3<S>::Identity();
  const M3<S> den = r + M3<S>::Identity();
  const M3<S> c = S(2) * num * den.fullPivLu().solve(M3<S>::Identity());
  return vee(c);
}

template <typename S>
V3<S> dcay(const V3<S>& x, const V3<S>& y) {
  return V3<S>((y + S(0.5L) * x.cross(y)) / kappa(x));
}

template <typename S>
V3<S> dcay_inv(const V3<S>& x, const V3<S>& y) {
  return V3<S>(y - S(0.5L) * x.cross(y) + S(0.25L) * x.dot(y) * x);
}

template <typename S>
V3<S> dcay_star(const V3<S>& x, const V3<S>& m) {
  return V3<S>((m - S(0.5L) * x.cross(m)) / kappa(x));
}

template <typename S>
V3<S> dcay_inv_star(const V3<S>& x, const V3<S>& m) {
  return V3<S>(m + S(0.5L) * x.cross(m) + S(0.25L) * x.dot(m) * x);
}

template <typename S>
struct StateT {
  M3<S> g;
  V3<S> xi;
  V3<S> mu;
  V3<S> nu;
};

template <typename S>
StateT<S> euler_step(const StateT<S>& s, S h) {
  StateT<S> n;
  n.xi = s.xi + h * s.nu;
  const V3<S> hxi = h * n.xi;
  n.mu = dcay_inv_star<S>(-hxi, dcay_star<S>(hxi, s.mu));
  n.nu = s.nu - h * dcay_star<S>(-hxi, n.mu);
  n.g = s.g * cay<S>(hxi);
  return n;
}

template <typename S>
StateT<S> sv_step(const StateT<S>& s, S h, S fp_tol, int fp_max_iter) {
  V3<S> xi = s.xi;
  S residual = std::numeric_limits<S>::infinity();
  bool converged = false;
  int used = 0;
  for (int it = 0; it < fp_max_iter; ++it) {
    const V3<S> avg = S(0.5L) * (xi + s.xi);
    const V3<S> next = s.xi + h * (s.nu - S(0.5L) * h * dcay_star<S>(h * avg, s.mu));
    residual = (next - xi).norm();
    xi = next;
    used = it + 1;
    if (residual <= fp_tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NonConvergence("sv_step: fixed point stalled at residual " +
                             std::to_string(static_cast<double>(residual)) + " after " +
                             std::to_string(used) + " iterations; reduce h",
                         static_cast<double>(residual), used);
  }

  const V3<S> havg = h * S(0.5L) * (xi + s.xi);
  const V3<S> mucheck = dcay_star<S>(havg, s.mu);
  StateT<S> n;
  n.xi = xi;
  n.mu = dcay_inv_star<S>(-havg, mucheck);
  n.nu = s.nu - h * mucheck;
  n.g = s.g * cay<S>(havg);
  return n;
}

}  // namespace lie_cubics::kernel
