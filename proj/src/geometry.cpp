#include "alefs/geometry.hpp"

#include <cmath>
#include <string>

#include "alefs/errors.hpp"
#include "alefs/spectral.hpp"

namespace alefs {

ReferenceCurve ReferenceCurve::circle(int n_theta, double radius) {
  ReferenceCurve c;
  c.X_.resize(n_theta, 2);
  c.T_.resize(n_theta, 2);
  c.N_.resize(n_theta, 2);
  c.length_ = 2.0 * M_PI * radius;
  for (int j = 0; j < n_theta; ++j) {
    const double th = 2.0 * M_PI * j / n_theta;
    c.X_.row(j) << radius * std::cos(th), radius * std::sin(th);
    c.T_.row(j) << -std::sin(th), std::cos(th);
    c.N_.row(j) << std::cos(th), std::sin(th);
  }
  c.b0_ = BoundaryScalar::Constant(n_theta, 1.0 / radius);
  c.b0p_ = BoundaryScalar::Zero(n_theta);
  c.unit_circle_ = (radius == 1.0);
  return c;
}

ReferenceCurve ReferenceCurve::from_samples(const BoundaryVector& X) {
  const int n = int(X.rows());
  ReferenceCurve c;
  c.X_ = X;
  // Perimeter from the spectral speed of a provisional unit-period parametrization.
  const BoundaryVector dX = [&] {
    BoundaryVector d(n, 2);
    for (int k = 0; k < 2; ++k) d.col(k) = spectral::derivative(X.col(k), 1, 1.0);
    return d;
  }();
  c.length_ = dX.rowwise().norm().mean();
  c.T_ = arc_derivative(c.X_, 1, c);
  c.N_.resize(n, 2);
  c.N_.col(0) = c.T_.col(1);
  c.N_.col(1) = -c.T_.col(0);
  const BoundaryVector d2 = arc_derivative(c.X_, 2, c);
  c.b0_ = -(d2.array() * c.N_.array()).rowwise().sum();
  c.b0p_ = arc_derivative(c.b0_, 1, c);
  return c;
}

BoundaryScalar arc_derivative(const BoundaryScalar& f, int order, const ReferenceCurve& gamma) {
  return spectral::derivative(f, order, gamma.length());
}

BoundaryVector arc_derivative(const BoundaryVector& f, int order, const ReferenceCurve& gamma) {
  BoundaryVector out(f.rows(), 2);
  for (int k = 0; k < 2; ++k) out.col(k) = spectral::derivative(f.col(k), order, gamma.length());
  return out;
}

void check_admissible(const HeightField& h, const ReferenceCurve& gamma) {
  if (h.size() != gamma.n_theta())
    throw AdmissibilityViolation("height field has " + std::to_string(h.size()) +
                                 " samples, curve has " + std::to_string(gamma.n_theta()));
  if (!h.allFinite()) throw AdmissibilityViolation("height field is not finite");
  const double m = (1.0 + gamma.b0().array() * h.array()).minCoeff();
  if (m < 1e-6)
    throw AdmissibilityViolation("min(1 + b0 h) = " + std::to_string(m) + " < 1e-6");
}

BoundaryScalar metric(const HeightField& h, const ReferenceCurve& gamma) {
  check_admissible(h, gamma);
  const BoundaryScalar hp = arc_derivative(h, 1, gamma);
  const Eigen::ArrayXd a = 1.0 + gamma.b0().array() * h.array();
  return a.square() + hp.array().square();
}

BoundaryVector unnormalized_normal(const HeightField& h, const ReferenceCurve& gamma) {
  check_admissible(h, gamma);
  const BoundaryScalar hp = arc_derivative(h, 1, gamma);
  const Eigen::ArrayXd a = 1.0 + gamma.b0().array() * h.array();
  BoundaryVector n(h.size(), 2);
  for (int k = 0; k < 2; ++k)
    n.col(k) = -hp.array() * gamma.tangent().col(k).array() + a * gamma.normal().col(k).array();
  return n;
}

BoundaryVector unit_normal(const HeightField& h, const ReferenceCurve& gamma) {
  BoundaryVector n = unnormalized_normal(h, gamma);
  const Eigen::ArrayXd len = metric(h, gamma).array().sqrt();
  for (int k = 0; k < 2; ++k) n.col(k).array() /= len;
  return n;
}

BoundaryScalar curvature(const HeightField& h, const ReferenceCurve& gamma) {
  check_admissible(h, gamma);
  const Eigen::ArrayXd hp = arc_derivative(h, 1, gamma).array();
  const Eigen::ArrayXd hpp = arc_derivative(h, 2, gamma).array();
  const Eigen::ArrayXd b = gamma.b0().array();
  const Eigen::ArrayXd bp = gamma.b0_prime().array();
  const Eigen::ArrayXd hh = h.array();
  const Eigen::ArrayXd a = 1.0 + b * hh;
  const Eigen::ArrayXd g = a.square() + hp.square();
  const Eigen::ArrayXd num =
      a * hpp - b * (1.0 + 2.0 * b * hh + b.square() * hh.square() + 2.0 * hp.square()) -
      hh * hp * bp;
  return num / g.pow(1.5);
}

BoundaryScalar regularized_curvature(const HeightField& h, const HeightField& h_ee,
                                     const ReferenceCurve& gamma) {
  check_admissible(h, gamma);
  check_admissible(h_ee, gamma);
  const Eigen::ArrayXd hpp = arc_derivative(h, 2, gamma).array();
  const Eigen::ArrayXd ep = arc_derivative(h_ee, 1, gamma).array();
  const Eigen::ArrayXd e = h_ee.array();
  const Eigen::ArrayXd b = gamma.b0().array();
  const Eigen::ArrayXd bp = gamma.b0_prime().array();
  const Eigen::ArrayXd a = 1.0 + b * e;
  const Eigen::ArrayXd num = a * hpp - b * (a.square() + 2.0 * ep.square()) - e * ep * bp;
  return num / (a.square() + ep.square()).pow(1.5);
}

BoundaryScalar laplace_beltrami(const BoundaryScalar& f, const ReferenceCurve& gamma) {
  return arc_derivative(f, 2, gamma);
}

BoundaryVector laplace_beltrami(const BoundaryVector& f, const ReferenceCurve& gamma) {
  return arc_derivative(f, 2, gamma);
}

BoundaryVector boundary_points(const HeightField& h, const ReferenceCurve& gamma) {
  BoundaryVector p = gamma.X();
  for (int k = 0; k < 2; ++k) p.col(k).array() += h.array() * gamma.normal().col(k).array();
  return p;
}

double enclosed_area(const HeightField& h, const ReferenceCurve& gamma) {
  check_admissible(h, gamma);
  const BoundaryVector p = boundary_points(h, gamma);
  const BoundaryVector dp = arc_derivative(p, 1, gamma);
  const double sum = (p.col(0).array() * dp.col(1).array() - p.col(1).array() * dp.col(0).array()).sum();
  return 0.5 * sum * gamma.ds();
}

double interface_length(const HeightField& h, const ReferenceCurve& gamma) {
  return metric(h, gamma).array().sqrt().sum() * gamma.ds();
}

double sobolev_norm(const BoundaryScalar& f, double s, const ReferenceCurve& gamma) {
  const Eigen::VectorXcd c = spectral::coefficients(f);
  const int n = int(f.size());
  const double scale = 2.0 * M_PI / gamma.length();
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double kappa = scale * spectral::signed_mode(k, n);
    sum += std::pow(1.0 + kappa * kappa, s) * std::norm(c[k]);
  }
  return std::sqrt(sum);
}

double l2_norm(const BoundaryScalar& f, const ReferenceCurve& gamma) {
  return std::sqrt(f.squaredNorm() * gamma.ds());
}

}  // namespace alefs
