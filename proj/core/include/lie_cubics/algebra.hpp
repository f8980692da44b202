#pragma once

#include <Eigen/Dense>

#include "lie_cubics/errors.hpp"

namespace lie_cubics {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Element of so(3) in vee coordinates. Depending on context the components
/// carry units of rad/s (velocity xi), rad/s^2 (acceleration u) or are
/// dimensionless (variations eta).
struct AlgebraVector {
  Vec3 v{Vec3::Zero()};

  AlgebraVector() = default;
  explicit AlgebraVector(const Vec3& value) : v(value) {}
  AlgebraVector(double x1, double x2, double x3) : v(x1, x2, x3) {}

  double norm() const { return v.norm(); }
  double squaredNorm() const { return v.squaredNorm(); }
  bool allFinite() const { return v.allFinite(); }

  AlgebraVector operator+(const AlgebraVector& o) const { return AlgebraVector(v + o.v); }
  AlgebraVector operator-(const AlgebraVector& o) const { return AlgebraVector(v - o.v); }
  AlgebraVector operator-() const { return AlgebraVector(-v); }
  AlgebraVector& operator+=(const AlgebraVector& o) {
    v += o.v;
    return *this;
  }
};

inline AlgebraVector operator*(double s, const AlgebraVector& x) { return AlgebraVector(s * x.v); }
inline AlgebraVector operator*(const AlgebraVector& x, double s) { return AlgebraVector(s * x.v); }

/// Element of so(3)* in the basis dual to the vee coordinates; the natural
/// pairing with AlgebraVector is the Euclidean dot product.
struct CoVector {
  Vec3 m{Vec3::Zero()};

  CoVector() = default;
  explicit CoVector(const Vec3& value) : m(value) {}
  CoVector(double m1, double m2, double m3) : m(m1, m2, m3) {}

  double norm() const { return m.norm(); }
  bool allFinite() const { return m.allFinite(); }

  CoVector operator+(const CoVector& o) const { return CoVector(m + o.m); }
  CoVector operator-(const CoVector& o) const { return CoVector(m - o.m); }
  CoVector operator-() const { return CoVector(-m); }
  CoVector& operator+=(const CoVector& o) {
    m += o.m;
    return *this;
  }
};

inline CoVector operator*(double s, const CoVector& m) { return CoVector(s * m.m); }
inline CoVector operator*(const CoVector& m, double s) { return CoVector(s * m.m); }

/// Natural pairing <m, x> between so(3)* and so(3).
inline double pairing(const CoVector& m, const AlgebraVector& x) { return m.m.dot(x.v); }

/// Rotation matrix with validated invariants: r^T r = I and det r = 1, both
/// within 1e-10 (Frobenius).
class GroupElement {
 public:
  static constexpr double kInvariantTol = 1e-10;

  GroupElement() : r_(Mat3::Identity()) {}

  static GroupElement Identity() { return GroupElement(); }

  /// Validating constructor; throws InvalidGroupElement.
  static GroupElement FromMatrix(const Mat3& r) {
    const double defect = orthogonalityDefect(r);
    const double det_err = std::abs(r.determinant() - 1.0);
    if (!(defect <= kInvariantTol) || !(det_err <= kInvariantTol)) {
      throw InvalidGroupElement("matrix is not a rotation: |r^T r - I|_F = " +
                                std::to_string(defect) + ", |det - 1| = " + std::to_string(det_err));
    }
    return GroupElement(r, Unchecked{});
  }

  /// For callers that construct rotations by composition of validated ones.
  static GroupElement FromMatrixUnchecked(const Mat3& r) { return GroupElement(r, Unchecked{}); }

  const Mat3& matrix() const { return r_; }

  GroupElement inverse() const { return GroupElement(r_.transpose(), Unchecked{}); }

  GroupElement operator*(const GroupElement& o) const {
    return GroupElement(r_ * o.r_, Unchecked{});
  }

  /// Action on R^3 by matrix multiplication.
  Vec3 act(const Vec3& p) const { return r_ * p; }

  static double orthogonalityDefect(const Mat3& r) {
    return (r.transpose() * r - Mat3::Identity()).norm();
  }

  bool isApprox(const GroupElement& o, double tol = 1e-12) const {
    return (r_ - o.r_).norm() <= tol;
  }

 private:
  struct Unchecked {};
  GroupElement(const Mat3& r, Unchecked) : r_(r) {}

  Mat3 r_;
};

// --- hat / vee isomorphism -------------------------------------------------

/// hat: (x1,x2,x3) -> [[0,-x3,x2],[x3,0,-x1],[-x2,x1,0]].
Mat3 hat(const AlgebraVector& x);

/// Inverse of hat on skew-symmetric matrices; averages the off-diagonal pairs
/// so that vee(A) = vee(skew part of A).
AlgebraVector vee(const Mat3& a);

// --- adjoint actions and metric --------------------------------------------

/// Lie bracket ad_x y = [x, y], the cross product in vee coordinates.
AlgebraVector ad(const AlgebraVector& x, const AlgebraVector& y);

/// Coadjoint action, defined by <ad_star(x,m), y> = <m, ad(x,y)>. In
/// coordinates: m x x.
CoVector ad_star(const AlgebraVector& x, const CoVector& m);

/// Ad*_{g^-1} m, the coadjoint action of the inverse element; in coordinates
/// the matrix of g applied to m. Validates the GroupElement invariants.
CoVector Ad_star_inv(const GroupElement& g, const CoVector& m);

/// Metric isomorphisms for the bi-invariant inner product, fixed as the dot
/// product of vee coordinates, so both maps are the component identity.
CoVector flat(const AlgebraVector& x);
AlgebraVector sharp(const CoVector& m);

// --- Cayley retraction and its trivialized differentials --------------------
//
// cay(x) = (I - hat(x)/2)^-1 (I + hat(x)/2). All differentials below are
// right-trivialized: dcay_x(y) = vee( d/de cay(x + e y) * cay(x)^-1 ).
// Closed forms used throughout (kappa = 1 + |x|^2/4):
//
//   cay(x)          = I + (hat(x) + hat(x)^2/2) / kappa
//   dcay_x(y)       = (y + x x y / 2) / kappa
//   dcay_x^-1(y)    = y - x x y / 2 + (x . y) x / 4
//
// and the duals are the transposes of these linear maps in y.

/// Cayley retraction, evaluated in closed form. Globally defined on so(3).
GroupElement cay(const AlgebraVector& x);

/// Same map evaluated by a 3x3 linear solve; kept as an internal oracle for
/// the closed form.
GroupElement cay_by_solve(const AlgebraVector& x);

/// Inverse Cayley map, vee(2 (R - I)(R + I)^-1); defined away from rotation
/// angle pi.
AlgebraVector cay_inv(const GroupElement& g);

/// Right-trivialized differential of cay at x in direction y.
AlgebraVector dcay(const AlgebraVector& x, const AlgebraVector& y);

/// Exact inverse of dcay(x, .) in y.
AlgebraVector dcay_inv(const AlgebraVector& x, const AlgebraVector& y);

/// Dual maps, defined by <dcay_star(x,m), y> = <m, dcay(x,y)> and likewise
/// for the inverse. Together they satisfy
///   Ad*_{cay(x)} = dcay_inv_star(-x, .) o dcay_star(x, .),
/// the identity behind exact discrete momentum conservation.
CoVector dcay_star(const AlgebraVector& x, const CoVector& m);
CoVector dcay_inv_star(const AlgebraVector& x, const CoVector& m);

// --- cotangent-lift momentum map of the R^3 action ---------------------------

/// diamond: V x V* -> so(3)*, the cross product I x w; satisfies
/// <diamond(I,w), xi> = <w, xi x I>.
CoVector diamond(const Vec3& point, const Vec3& w);

// --- Butcher tableaus --------------------------------------------------------

/// Runge-Kutta coefficients. The steppers in integrators.hpp are hand
/// specializations of the two registered tableaus below; the tableau type
/// exists to document and validate those coefficients.
struct ButcherTableau {
  int s = 0;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;

  /// Throws Error unless c_i = sum_j a_ij and sum_i b_i = 1, both to 1e-14.
  void validate() const;
};

/// One-stage tableau a = [[1]], b = [1], c = [1].
ButcherTableau implicit_euler_tableau();

/// Two-stage tableau a = [[0,0],[1/2,1/2]], b = [1/2,1/2], c = [0,1].
ButcherTableau stormer_verlet_tableau();

}  // namespace lie_cubics
