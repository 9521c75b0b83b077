#pragma once

#include <cstdlib>
#include <vector>

#include "alefs/geometry.hpp"

namespace alefs {

// Periodic mollifier eta_eps(s) = eta(s / eps) / eps with the bump
// eta(u) ~ exp(-1 / (1 - u^2)) on (-1, 1), normalized to unit mass. Applied to the
// trigonometric interpolant of the samples, i.e. as the Fourier multiplier
// eta_hat(eps k), so it stays a smooth function of eps below the grid spacing.
class MollifierKernel {
 public:
  MollifierKernel(double eps, const ReferenceCurve& gamma);

  double eps() const { return eps_; }
  // Multiplier for signed mode k (k cycles per curve length).
  double symbol(int k) const { return symbol_[std::abs(k)]; }

  BoundaryScalar apply(const BoundaryScalar& f) const;

  // Unnormalized profile exp(-1/(1-u^2)) for |u| < 1, zero otherwise.
  static double profile(double u);

 private:
  double eps_;
  int n_;
  std::vector<double> symbol_;
};

BoundaryScalar mollify(const BoundaryScalar& f, double eps, const ReferenceCurve& gamma);
HeightField double_mollify(const HeightField& h, double eps, const ReferenceCurve& gamma);
// eta * (f g) - f (eta * g)
BoundaryScalar commutator(const BoundaryScalar& f, const BoundaryScalar& g, double eps,
                          const ReferenceCurve& gamma);

// Damped height equation h'' + eps^2 h_t'' = f, advanced per Fourier mode with the
// exact integrating factor. f[n] is held constant on [t_n, t_n + dt]. The mean mode
// is frozen. Returns n_steps + 1 states starting with h0.
std::vector<HeightField> damped_height_evolution(const HeightField& h0,
                                                 const std::vector<BoundaryScalar>& f, double eps,
                                                 double dt, int n_steps,
                                                 const ReferenceCurve& gamma);

}  // namespace alefs
