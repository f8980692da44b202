#include "lie_cubics/algebra.hpp"

#include <cmath>

#include "lie_cubics/so3_kernel.hpp"

namespace lie_cubics {

Mat3 hat(const AlgebraVector& x) { return kernel::hat<double>(x.v); }

AlgebraVector vee(const Mat3& a) { return AlgebraVector(kernel::vee<double>(a)); }

AlgebraVector ad(const AlgebraVector& x, const AlgebraVector& y) {
  return AlgebraVector(x.v.cross(y.v));
}

CoVector ad_star(const AlgebraVector& x, const CoVector& m) {
  return CoVector(m.m.cross(x.v));
}

CoVector Ad_star_inv(const GroupElement& g, const CoVector& m) {
  // Re-validate: long trajectories hand over composed matrices.
  const double defect = GroupElement::orthogonalityDefect(g.matrix());
  if (!(defect <= GroupElement::kInvariantTol)) {
    throw InvalidGroupElement("Ad_star_inv: group element lost orthogonality, defect = " +
                              std::to_string(defect));
  }
  return CoVector(g.matrix() * m.m);
}

CoVector flat(const AlgebraVector& x) { return CoVector(x.v); }

AlgebraVector sharp(const CoVector& m) { return AlgebraVector(m.m); }

GroupElement cay(const AlgebraVector& x) {
  return GroupElement::FromMatrixUnchecked(kernel::cay<double>(x.v));
}

GroupElement cay_by_solve(const AlgebraVector& x) {
  const Mat3 xh = hat(x);
  const Mat3 lhs = Mat3::Identity() - 0.5 * xh;
  const Mat3 rhs = Mat3::Identity() + 0.5 * xh;
  return GroupElement::FromMatrixUnchecked(lhs.partialPivLu().solve(rhs));
}

AlgebraVector cay_inv(const GroupElement& g) {
  return AlgebraVector(kernel::cay_inv<double>(g.matrix()));
}

AlgebraVector dcay(const AlgebraVector& x, const AlgebraVector& y) {
  return AlgebraVector(kernel::dcay<double>(x.v, y.v));
}

AlgebraVector dcay_inv(const AlgebraVector& x, const AlgebraVector& y) {
  return AlgebraVector(kernel::dcay_inv<double>(x.v, y.v));
}

CoVector dcay_star(const AlgebraVector& x, const CoVector& m) {
  return CoVector(kernel::dcay_star<double>(x.v, m.m));
}

CoVector dcay_inv_star(const AlgebraVector& x, const CoVector& m) {
  return CoVector(kernel::dcay_inv_star<double>(x.v, m.m));
}

CoVector diamond(const Vec3& point, const Vec3& w) { return CoVector(point.cross(w)); }

void ButcherTableau::validate() const {
  constexpr double tol = 1e-14;
  if (s <= 0 || a.rows() != s || a.cols() != s || b.size() != s || c.size() != s) {
    throw Error("ButcherTableau: inconsistent dimensions");
  }
  for (int i = 0; i < s; ++i) {
    if (std::abs(a.row(i).sum() - c(i)) > tol) {
      throw Error("ButcherTableau: row sum of a does not match c");
    }
  }
  if (std::abs(b.sum() - 1.0) > tol) {
    throw Error("ButcherTableau: weights b do not sum to 1");
  }
}

ButcherTableau implicit_euler_tableau() {
  ButcherTableau t;
  t.s = 1;
  t.a = Eigen::MatrixXd::Constant(1, 1, 1.0);
  t.b = Eigen::VectorXd::Constant(1, 1.0);
  t.c = Eigen::VectorXd::Constant(1, 1.0);
  return t;
}

ButcherTableau stormer_verlet_tableau() {
  ButcherTableau t;
  t.s = 2;
  t.a.resize(2, 2);
  t.a << 0.0, 0.0, 0.5, 0.5;
  t.b.resize(2);
  t.b << 0.5, 0.5;
  t.c.resize(2);
  t.c << 0.0, 1.0;
  return t;
}

}  // namespace lie_cubics
