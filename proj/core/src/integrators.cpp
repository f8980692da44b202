#include "lie_cubics/integrators.hpp"

#include "lie_cubics/so3_kernel.hpp"

namespace lie_cubics {

namespace {

kernel::StateT<double> to_kernel(const HOHPState& s) {
  return kernel::StateT<double>{s.g.matrix(), s.xi.v, s.mu.m, s.nu.m};
}

HOHPState from_kernel(const kernel::StateT<double>& s) {
  return HOHPState{GroupElement::FromMatrixUnchecked(s.g), AlgebraVector(s.xi), CoVector(s.mu),
                   CoVector(s.nu)};
}

}  // namespace

HOHPState euler_step(const HOHPState& s, const StepParams& p) {
  p.validate();
  return from_kernel(kernel::euler_step<double>(to_kernel(s), p.h));
}

HOHPState sv_step(const HOHPState& s, const StepParams& p) {
  p.validate();
  return from_kernel(kernel::sv_step<double>(to_kernel(s), p.h, p.fp_tol, p.fp_max_iter));
}

HOHPState step(Scheme scheme, const HOHPState& s, const StepParams& p) {
  return scheme == Scheme::euler ? euler_step(s, p) : sv_step(s, p);
}

std::vector<HOHPState> flow(const HOHPState& s0, const StepParams& p, int n, Scheme scheme) {
  if (n < 0) throw Error("flow: n must be >= 0");
  std::vector<HOHPState> traj;
  traj.reserve(static_cast<size_t>(n) + 1);
  traj.push_back(s0);
  for (int k = 0; k < n; ++k) {
    try {
      traj.push_back(step(scheme, traj.back(), p));
    } catch (NonConvergence& e) {
      e.step_index = k;
      throw;
    }
  }
  return traj;
}

}  // namespace lie_cubics
