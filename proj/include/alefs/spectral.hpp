#pragma once

#include <Eigen/Dense>

// Periodic Fourier helpers for uniformly sampled data on [0, length).
namespace alefs::spectral {

// c_k with f_j = sum_k c_k exp(2 pi i k j / n); index k in [0, n).
Eigen::VectorXcd coefficients(const Eigen::VectorXd& f);
// Real part of the inverse transform.
Eigen::VectorXd synthesize(const Eigen::VectorXcd& c);

// Map an FFT index to its signed mode in (-n/2, n/2].
inline int signed_mode(int k, int n) { return k <= n / 2 ? k : k - n; }

// order-th derivative. The Nyquist mode is dropped for odd orders.
Eigen::VectorXd derivative(const Eigen::VectorXd& f, int order, double length);

// Trigonometric interpolant at phase angle phi (period 2 pi), from coefficients().
double evaluate(const Eigen::VectorXcd& c, double phi);

}  // namespace alefs::spectral
