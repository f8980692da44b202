#include "lie_cubics/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lie_cubics/so3_kernel.hpp"

namespace lie_cubics {

CoVector momentum_map(const HOHPState& s) { return Ad_star_inv(s.g, s.mu); }

double hamiltonian(const HOHPState& s) {
  const AlgebraVector u = sharp(s.nu);
  return 0.5 * u.squaredNorm() + pairing(s.mu, s.xi);
}

double symplectic_form(const HOHPState& s, const TangentVariation& v1,
                       const TangentVariation& v2) {
  return -pairing(v1.dmu, v2.eta) - pairing(v1.dnu, v2.dxi) + pairing(v2.dmu, v1.eta) +
         pairing(v2.dnu, v1.dxi) + pairing(s.mu, ad(v1.eta, v2.eta));
}

Eigen::Matrix<double, 12, 12> symplectic_matrix(const HOHPState& s) {
  Eigen::Matrix<double, 12, 12> w = Eigen::Matrix<double, 12, 12>::Zero();
  w.block<3, 3>(0, 0) = -hat(AlgebraVector(s.mu.m));
  w.block<3, 3>(0, 6) = Mat3::Identity();
  w.block<3, 3>(6, 0) = -Mat3::Identity();
  w.block<3, 3>(3, 9) = Mat3::Identity();
  w.block<3, 3>(9, 3) = -Mat3::Identity();
  return w;
}

HOHPState displace_state(const HOHPState& s, const Eigen::Matrix<double, 12, 1>& z) {
  HOHPState out;
  out.g = s.g * cay(AlgebraVector(z.segment<3>(0)));
  out.xi = s.xi + AlgebraVector(z.segment<3>(3));
  out.mu = s.mu + CoVector(z.segment<3>(6));
  out.nu = s.nu + CoVector(z.segment<3>(9));
  return out;
}

Eigen::Matrix<double, 12, 1> state_coordinates(const HOHPState& base, const HOHPState& s) {
  Eigen::Matrix<double, 12, 1> z;
  z.segment<3>(0) = cay_inv(base.g.inverse() * s.g).v;
  z.segment<3>(3) = (s.xi - base.xi).v;
  z.segment<3>(6) = (s.mu - base.mu).m;
  z.segment<3>(9) = (s.nu - base.nu).m;
  return z;
}

double check_symplectic(const std::function<HOHPState(const HOHPState&)>& step_map,
                        const HOHPState& s, double fd_eps) {
  if (!(fd_eps > 0.0)) throw Error("check_symplectic: fd_eps must be > 0");
  const HOHPState s1 = step_map(s);

  Eigen::Matrix<double, 12, 12> jac;
  for (int j = 0; j < 12; ++j) {
    Eigen::Matrix<double, 12, 1> dz = Eigen::Matrix<double, 12, 1>::Zero();
    dz(j) = fd_eps;
    const HOHPState plus = step_map(displace_state(s, dz));
    dz(j) = -fd_eps;
    const HOHPState minus = step_map(displace_state(s, dz));
    jac.col(j) = (state_coordinates(s1, plus) - state_coordinates(s1, minus)) / (2.0 * fd_eps);
  }

  const Eigen::Matrix<double, 12, 12> lhs = jac.transpose() * symplectic_matrix(s1) * jac;
  return (lhs - symplectic_matrix(s)).norm();
}

namespace {

// The built-in schemes run their finite differences in long double: the
// deviation signal scales as fd_eps^2 while differencing noise grows as
// 1/fd_eps, and for increments near 1e-5 the crossover sits above the
// double-precision floor.
using Ld = long double;
using V3L = kernel::V3<Ld>;
using M3L = kernel::M3<Ld>;
using StateL = kernel::StateT<Ld>;
using Vec12L = Eigen::Matrix<Ld, 12, 1>;
using Mat12L = Eigen::Matrix<Ld, 12, 12>;

StateL displace_ld(const StateL& s, const Vec12L& z) {
  StateL out;
  out.g = s.g * kernel::cay<Ld>(z.segment<3>(0));
  out.xi = s.xi + z.segment<3>(3);
  out.mu = s.mu + z.segment<3>(6);
  out.nu = s.nu + z.segment<3>(9);
  return out;
}

Vec12L coordinates_ld(const StateL& base, const StateL& s) {
  Vec12L z;
  z.segment<3>(0) = kernel::cay_inv<Ld>(M3L(base.g.transpose() * s.g));
  z.segment<3>(3) = s.xi - base.xi;
  z.segment<3>(6) = s.mu - base.mu;
  z.segment<3>(9) = s.nu - base.nu;
  return z;
}

Mat12L symplectic_matrix_ld(const StateL& s) {
  Mat12L w = Mat12L::Zero();
  w.template block<3, 3>(0, 0) = -kernel::hat<Ld>(s.mu);
  w.template block<3, 3>(0, 6) = M3L::Identity();
  w.template block<3, 3>(6, 0) = -M3L::Identity();
  w.template block<3, 3>(3, 9) = M3L::Identity();
  w.template block<3, 3>(9, 3) = -M3L::Identity();
  return w;
}

}  // namespace

double check_symplectic(Scheme scheme, const HOHPState& s, const StepParams& p, double fd_eps) {
  p.validate();
  if (!(fd_eps > 0.0)) throw Error("check_symplectic: fd_eps must be > 0");

  StateL base{s.g.matrix().cast<Ld>(), s.xi.v.cast<Ld>(), s.mu.m.cast<Ld>(), s.nu.m.cast<Ld>()};
  const Ld h = static_cast<Ld>(p.h);
  const Ld fp_tol = static_cast<Ld>(p.fp_tol);
  auto step_ld = [&](const StateL& x) {
    return scheme == Scheme::euler ? kernel::euler_step<Ld>(x, h)
                                   : kernel::sv_step<Ld>(x, h, fp_tol, p.fp_max_iter);
  };

  const StateL s1 = step_ld(base);
  const Ld eps = static_cast<Ld>(fd_eps);
  Mat12L jac;
  for (int j = 0; j < 12; ++j) {
    Vec12L dz = Vec12L::Zero();
    dz(j) = eps;
    const StateL plus = step_ld(displace_ld(base, dz));
    dz(j) = -eps;
    const StateL minus = step_ld(displace_ld(base, dz));
    jac.col(j) = (coordinates_ld(s1, plus) - coordinates_ld(s1, minus)) / (Ld(2) * eps);
  }

  const Mat12L lhs = jac.transpose() * symplectic_matrix_ld(s1) * jac;
  return static_cast<double>((lhs - symplectic_matrix_ld(base)).norm());
}

double state_distance(const HOHPState& a, const HOHPState& b) {
  return (a.g.matrix() - b.g.matrix()).norm() + (a.xi - b.xi).norm() + (a.mu - b.mu).norm() +
         (a.nu - b.nu).norm();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DimensionMismatch("loglog_slope: need matching lists with >= 2 entries");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceReport convergence_order(Scheme scheme, const HOHPState& s0, double T,
                                    const std::vector<double>& h_list, double h_ref) {
  if (h_list.size() < 3) throw Error("convergence_order: need at least 3 step sizes");
  if (!(T > 0.0)) throw Error("convergence_order: T must be > 0");

  std::vector<double> hs = h_list;
  std::sort(hs.begin(), hs.end(), std::greater<double>());
  for (size_t i = 0; i + 1 < hs.size(); ++i) {
    if (!(hs[i] > hs[i + 1])) throw Error("convergence_order: step sizes must be distinct");
  }

  auto steps_for = [&](double h) {
    const double ratio = T / h;
    const auto n = static_cast<long>(std::llround(ratio));
    if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio) {
      throw Error("convergence_order: step size " + std::to_string(h) + " does not divide T");
    }
    return n;
  };

  if (h_ref <= 0.0) h_ref = hs.back() / 8.0;

  auto endpoint = [&](double h, long n) {
    StepParams p;
    p.h = h;
    HOHPState s = s0;
    for (long k = 0; k < n; ++k) s = step(scheme, s, p);
    return s;
  };

  const HOHPState ref = endpoint(h_ref, steps_for(h_ref));

  ConvergenceReport report;
  report.step_sizes = hs;
  report.errors.reserve(hs.size());
  for (double h : hs) {
    report.errors.push_back(state_distance(endpoint(h, steps_for(h)), ref));
  }
  report.slope = loglog_slope(report.step_sizes, report.errors);
  return report;
}

std::vector<double> nhp_residual(const std::vector<HOHPState>& traj, double h) {
  if (traj.size() < 7) {
    throw TooShort("nhp_residual: need at least 7 states, got " + std::to_string(traj.size()));
  }
  if (!(h > 0.0)) throw Error("nhp_residual: h must be > 0");

  std::vector<double> out;
  out.reserve(traj.size() - 6);
  const auto x = [&](size_t i) -> const Vec3& { return traj[i].xi.v; };
  for (size_t k = 3; k + 3 < traj.size(); ++k) {
    const Vec3 d3 = (x(k - 3) - 8.0 * x(k - 2) + 13.0 * x(k - 1) - 13.0 * x(k + 1) +
                     8.0 * x(k + 2) - x(k + 3)) /
                    (8.0 * h * h * h);
    const Vec3 d2 =
        (-x(k - 2) + 16.0 * x(k - 1) - 30.0 * x(k) + 16.0 * x(k + 1) - x(k + 2)) / (12.0 * h * h);
    out.push_back((d3 - d2.cross(x(k))).norm());
  }
  return out;
}

}  // namespace lie_cubics
