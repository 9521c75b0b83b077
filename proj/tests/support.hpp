#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "alefs/geometry.hpp"

namespace alefs::testing {

// Finite trigonometric sum a0 + sum_k (a_k cos k s + b_k sin k s) on the unit circle,
// evaluated in closed form with derivatives.
struct TrigSum {
  double a0 = 0.0;
  std::vector<double> a, b;  // modes 1..K

  double eval(double s, int order = 0) const {
    double v = order == 0 ? a0 : 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
      const double k = double(i + 1);
      // d^n/ds^n of cos(ks) is k^n cos(ks + n pi / 2)
      const double ph = order * M_PI / 2.0;
      const double kn = std::pow(k, order);
      v += kn * (a[i] * std::cos(k * s + ph) + b[i] * std::sin(k * s + ph));
    }
    return v;
  }

  Eigen::VectorXd sample(int n, int order = 0) const {
    Eigen::VectorXd out(n);
    for (int j = 0; j < n; ++j) out[j] = eval(2.0 * M_PI * j / n, order);
    return out;
  }

  double sup(int order = 0, int fine = 4096) const {
    double m = 0.0;
    for (int j = 0; j < fine; ++j) m = std::max(m, std::abs(eval(2.0 * M_PI * j / fine, order)));
    return m;
  }

  // Random smooth sum with modes up to K, decaying coefficients, rescaled to sup = amp.
  static TrigSum random(std::mt19937& rng, int K, double amp, bool with_mean = true) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TrigSum t;
    t.a0 = with_mean ? u(rng) : 0.0;
    for (int k = 1; k <= K; ++k) {
      t.a.push_back(u(rng) / (k * k));
      t.b.push_back(u(rng) / (k * k));
    }
    const double s = amp / t.sup();
    t.a0 *= s;
    for (auto& x : t.a) x *= s;
    for (auto& x : t.b) x *= s;
    return t;
  }
};

inline Eigen::VectorXd cos_mode(int n, int k, double amp = 1.0) {
  Eigen::VectorXd f(n);
  for (int j = 0; j < n; ++j) f[j] = amp * std::cos(k * 2.0 * M_PI * j / n);
  return f;
}

}  // namespace alefs::testing
