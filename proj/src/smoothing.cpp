#include "alefs/smoothing.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "alefs/errors.hpp"
#include "alefs/spectral.hpp"

namespace alefs {

double MollifierKernel::profile(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

MollifierKernel::MollifierKernel(double eps, const ReferenceCurve& gamma)
    : eps_(eps), n_(gamma.n_theta()) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw KernelSupportError("mollifier width must be positive, got " + std::to_string(eps));
  if (eps >= gamma.length() / 4.0)
    throw KernelSupportError("mollifier support (-" + std::to_string(eps) + ", " +
                             std::to_string(eps) + ") exceeds a quarter of the curve length");
  // The bump is flat to all orders at +-1, so the trapezoid rule converges spectrally.
  constexpr int kNodes = 512;
  const double du = 2.0 / kNodes;
  std::vector<double> u(kNodes - 1), w(kNodes - 1);
  double mass = 0.0;
  for (int i = 1; i < kNodes; ++i) {
    u[i - 1] = -1.0 + i * du;
    w[i - 1] = profile(u[i - 1]);
    mass += w[i - 1];
  }
  const double scale = 2.0 * M_PI / gamma.length();
  symbol_.assign(n_ / 2 + 1, 1.0);
  for (int k = 1; k <= n_ / 2; ++k) {
    double acc = 0.0;
    for (int i = 0; i < kNodes - 1; ++i) acc += w[i] * std::cos(scale * k * eps * u[i]);
    symbol_[k] = acc / mass;
  }
}

BoundaryScalar MollifierKernel::apply(const BoundaryScalar& f) const {
  if (f.size() != n_) throw GridMismatch("mollifier built for a different grid");
  Eigen::VectorXcd c = spectral::coefficients(f);
  for (int k = 0; k < n_; ++k) c[k] *= symbol(spectral::signed_mode(k, n_));
  return spectral::synthesize(c);
}

BoundaryScalar mollify(const BoundaryScalar& f, double eps, const ReferenceCurve& gamma) {
  return MollifierKernel(eps, gamma).apply(f);
}

HeightField double_mollify(const HeightField& h, double eps, const ReferenceCurve& gamma) {
  const MollifierKernel k(eps, gamma);
  return k.apply(k.apply(h));
}

BoundaryScalar commutator(const BoundaryScalar& f, const BoundaryScalar& g, double eps,
                          const ReferenceCurve& gamma) {
  const MollifierKernel k(eps, gamma);
  const BoundaryScalar fg = f.cwiseProduct(g);
  return k.apply(fg) - f.cwiseProduct(k.apply(g));
}

std::vector<HeightField> damped_height_evolution(const HeightField& h0,
                                                 const std::vector<BoundaryScalar>& f, double eps,
                                                 double dt, int n_steps,
                                                 const ReferenceCurve& gamma) {
  if (eps == 0.0) throw DegenerateDamping("eps = 0 turns the damped height equation into a constraint");
  if (eps < 0.0 || dt <= 0.0 || n_steps < 0)
    throw std::invalid_argument("damped_height_evolution needs eps > 0, dt > 0, n_steps >= 0");
  if (int(f.size()) < n_steps)
    throw std::invalid_argument("forcing series shorter than n_steps");
  const int n = int(h0.size());
  const double scale = 2.0 * M_PI / gamma.length();
  const double decay = std::exp(-dt / (eps * eps));
  std::vector<HeightField> out;
  out.reserve(n_steps + 1);
  out.push_back(h0);
  Eigen::VectorXcd c = spectral::coefficients(h0);
  for (int step = 0; step < n_steps; ++step) {
    const Eigen::VectorXcd fc = spectral::coefficients(f[step]);
    for (int k = 1; k < n; ++k) {
      const double kappa = scale * spectral::signed_mode(k, n);
      const std::complex<double> steady = -fc[k] / (kappa * kappa);
      c[k] = steady + (c[k] - steady) * decay;
    }
    out.push_back(spectral::synthesize(c));
  }
  return out;
}

}  // namespace alefs
