#include <Eigen/QR>
#include <cmath>
#include <complex>

#include "alefs/errors.hpp"
#include "alefs/spectral.hpp"
#include "alefs/stokes_core.hpp"

namespace alefs {

namespace {

using cd = std::complex<double>;

// Radial profile of one Fourier mode as sum_j alpha_j r^(|m| + 2 j).
Eigen::VectorXcd fit_profile(const Eigen::VectorXcd& samples, const DiskGrid& grid, int am, int terms) {
  const int nr = grid.n_r();
  Eigen::MatrixXd V(nr, terms);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < terms; ++j) V(i, j) = std::pow(grid.r(i), am + 2 * j);
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
  Eigen::VectorXcd alpha(terms);
  alpha.real() = qr.solve(Eigen::VectorXd(samples.real()));
  alpha.imag() = qr.solve(Eigen::VectorXd(samples.imag()));
  return alpha;
}

}  // namespace

DivSolution solve_div(const ScalarField& p, const DiskGrid& grid) {
  if (p.size() != grid.size()) throw GridMismatch("pressure does not match the disk grid");
  if (!p.allFinite()) throw SolverDivergence("solve_div input is not finite");
  const int nr = grid.n_r(), nt = grid.n_theta();
  const int terms = std::min(8, nr - 1);

  // Ring-wise Fourier coefficients, then per-mode radial samples.
  Eigen::MatrixXcd C(nr, nt);
  for (int i = 0; i < nr; ++i) C.row(i) = spectral::coefficients(p.segment(i * nt, nt)).transpose();

  // Per mode: phi_k(r), phi_k'(r), chi_k(r), chi_k'(r) at every ring.
  Eigen::MatrixXcd Ur = Eigen::MatrixXcd::Zero(nr, nt), Ut = Eigen::MatrixXcd::Zero(nr, nt);
  double mean = 0.0;
  for (int k = 0; k < nt; ++k) {
    if (2 * k == nt) continue;  // Nyquist mode is not representable in the ring derivatives
    const int m = spectral::signed_mode(k, nt);
    const int am = std::abs(m);
    Eigen::VectorXcd alpha = fit_profile(C.col(k), grid, am, terms);
    if (k == 0) {
      // mean of the fitted profile over the disk: 2 int_0^1 p_0 r dr
      cd avg = 0.0;
      for (int j = 0; j < terms; ++j) avg += 2.0 * alpha[j] / double(2 * j + 2);
      mean = avg.real();
      alpha[0] -= mean;
    }
    // particular part sum alpha_j r^(a+2) / ((a+2)^2 - m^2) with a = |m| + 2 j
    std::vector<double> expo(terms);
    std::vector<cd> coef(terms);
    cd slope = 0.0;
    for (int j = 0; j < terms; ++j) {
      expo[j] = am + 2 * j + 2;
      coef[j] = alpha[j] / (expo[j] * expo[j] - double(m) * m);
      slope += coef[j] * expo[j];
    }
    // homogeneous b r^|m| with phi_k'(1) = 0
    const cd b = (am == 0) ? cd(0.0) : -slope / double(am);
    auto phi = [&](double r, int d) {
      cd acc = 0.0;
      for (int j = 0; j < terms; ++j)
        acc += coef[j] * (d == 0 ? std::pow(r, expo[j]) : expo[j] * std::pow(r, expo[j] - 1));
      if (am > 0) acc += b * (d == 0 ? std::pow(r, am) : am * std::pow(r, am - 1));
      return acc;
    };
    const cd g = cd(0.0, m) * phi(1.0, 0);
    for (int i = 0; i < nr; ++i) {
      const double r = grid.r(i);
      const cd chi = g * std::pow(r, am) * (r * r - 1.0) / 2.0;
      const cd chi_r = g * (am * std::pow(r, am - 1) * (r * r - 1.0) / 2.0 + std::pow(r, am + 1));
      Ur(i, k) = phi(r, 1) + cd(0.0, m) * chi / r;
      Ut(i, k) = cd(0.0, m) * phi(r, 0) / r - chi_r;
    }
  }

  DivSolution out;
  out.mean = mean;
  out.u.resize(grid.size(), 2);
  for (int i = 0; i < nr; ++i) {
    const Eigen::VectorXd ur = spectral::synthesize(Ur.row(i).transpose());
    const Eigen::VectorXd ut = spectral::synthesize(Ut.row(i).transpose());
    for (int j = 0; j < nt; ++j) {
      const double c = std::cos(grid.theta(j)), s = std::sin(grid.theta(j));
      const double rr = ur[j] + 0.5 * mean * grid.r(i);
      out.u(grid.node(i, j), 0) = c * rr - s * ut[j];
      out.u(grid.node(i, j), 1) = s * rr + c * ut[j];
    }
  }
  if (!out.u.allFinite()) throw SolverDivergence("solve_div produced non-finite values");
  return out;
}

}  // namespace alefs
