#pragma once

#include <Eigen/Dense>

namespace alefs {

// Periodic samples on the reference curve, indexed by j = 0..n_theta-1.
using BoundaryScalar = Eigen::VectorXd;
using HeightField = Eigen::VectorXd;
// One row per sample, columns are the Cartesian components.
using BoundaryVector = Eigen::MatrixX2d;

// Closed counterclockwise curve sampled uniformly in arc length.
class ReferenceCurve {
 public:
  static ReferenceCurve circle(int n_theta, double radius = 1.0);
  // X holds arc-length-uniform samples of a smooth counterclockwise curve.
  static ReferenceCurve from_samples(const BoundaryVector& X);

  int n_theta() const { return int(X_.rows()); }
  double length() const { return length_; }
  double ds() const { return length_ / n_theta(); }
  double s(int j) const { return j * ds(); }

  const BoundaryVector& X() const { return X_; }
  const BoundaryVector& tangent() const { return T_; }
  const BoundaryVector& normal() const { return N_; }
  const BoundaryScalar& b0() const { return b0_; }
  const BoundaryScalar& b0_prime() const { return b0p_; }

  bool is_unit_circle() const { return unit_circle_; }

 private:
  BoundaryVector X_, T_, N_;
  BoundaryScalar b0_, b0p_;
  double length_ = 0.0;
  bool unit_circle_ = false;
};

BoundaryScalar arc_derivative(const BoundaryScalar& f, int order, const ReferenceCurve& gamma);
BoundaryVector arc_derivative(const BoundaryVector& f, int order, const ReferenceCurve& gamma);

// Throws AdmissibilityViolation when min(1 + b0 h) < 1e-6.
void check_admissible(const HeightField& h, const ReferenceCurve& gamma);

// g = (1 + b0 h)^2 + h'^2
BoundaryScalar metric(const HeightField& h, const ReferenceCurve& gamma);
// -h' X' + (1 + b0 h) N, before normalization
BoundaryVector unnormalized_normal(const HeightField& h, const ReferenceCurve& gamma);
BoundaryVector unit_normal(const HeightField& h, const ReferenceCurve& gamma);
// Curvature of the moving boundary in reference coordinates; the circle gives -b0.
BoundaryScalar curvature(const HeightField& h, const ReferenceCurve& gamma);
// Curvature with mollified coefficients; only h'' uses the unsmoothed height.
BoundaryScalar regularized_curvature(const HeightField& h, const HeightField& h_ee,
                                     const ReferenceCurve& gamma);

BoundaryScalar laplace_beltrami(const BoundaryScalar& f, const ReferenceCurve& gamma);
BoundaryVector laplace_beltrami(const BoundaryVector& f, const ReferenceCurve& gamma);

// X + h N
BoundaryVector boundary_points(const HeightField& h, const ReferenceCurve& gamma);
double enclosed_area(const HeightField& h, const ReferenceCurve& gamma);
// Integral of sqrt(g) over the reference curve.
double interface_length(const HeightField& h, const ReferenceCurve& gamma);

// (sum_k (1 + kappa_k^2)^s |c_k|^2)^(1/2), kappa_k = 2 pi k / length, c_0 = mean(f).
// With this normalization s = 0 gives the root-mean-square of the samples.
double sobolev_norm(const BoundaryScalar& f, double s, const ReferenceCurve& gamma);

// sqrt(ds * sum f^2)
double l2_norm(const BoundaryScalar& f, const ReferenceCurve& gamma);

}  // namespace alefs
