#include "alefs/spectral.hpp"

#include <unsupported/Eigen/FFT>
#include <cmath>
#include <complex>
#include <vector>

namespace alefs::spectral {

using cd = std::complex<double>;

Eigen::VectorXcd coefficients(const Eigen::VectorXd& f) {
  const auto n = f.size();
  Eigen::FFT<double> fft;
  std::vector<double> in(f.data(), f.data() + n);
  std::vector<cd> out;
  fft.fwd(out, in);
  Eigen::VectorXcd c(n);
  for (Eigen::Index k = 0; k < n; ++k) c[k] = out[k] / double(n);
  return c;
}

Eigen::VectorXd synthesize(const Eigen::VectorXcd& c) {
  const auto n = c.size();
  Eigen::FFT<double> fft;
  std::vector<cd> in(n), out;
  for (Eigen::Index k = 0; k < n; ++k) in[k] = c[k] * double(n);
  fft.inv(out, in);
  Eigen::VectorXd f(n);
  for (Eigen::Index j = 0; j < n; ++j) f[j] = out[j].real();
  return f;
}

Eigen::VectorXd derivative(const Eigen::VectorXd& f, int order, double length) {
  if (order == 0) return f;
  const int n = int(f.size());
  Eigen::VectorXcd c = coefficients(f);
  const double scale = 2.0 * M_PI / length;
  for (int k = 0; k < n; ++k) {
    const int m = signed_mode(k, n);
    if (n % 2 == 0 && k == n / 2 && order % 2 == 1) {
      c[k] = 0.0;
      continue;
    }
    c[k] *= std::pow(cd(0.0, scale * m), order);
  }
  return synthesize(c);
}

double evaluate(const Eigen::VectorXcd& c, double phi) {
  const int n = int(c.size());
  double sum = c[0].real();
  for (int k = 1; k < n; ++k) {
    const int m = signed_mode(k, n);
    if (n % 2 == 0 && k == n / 2) {
      sum += c[k].real() * std::cos(m * phi);
    } else {
      sum += (c[k] * std::exp(cd(0.0, m * phi))).real();
    }
  }
  return sum;
}

}  // namespace alefs::spectral
