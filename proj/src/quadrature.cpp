#include "scatter1d/quadrature.hpp"

#include <cmath>

namespace scatter1d {

Complex quadrature(const ComplexField& f, const SpatialGrid& g) {
  require_aligned(f, g, "quadrature");
  const int n = g.n;
  const double h = g.dx;
  // Simpson over nodes [0, n-4] (even interval count for n a power of two),
  // then the 3/8 rule over the final three intervals.
  Complex s(0.0, 0.0);
  const int m = n - 4;  // last node of the Simpson block
  for (int i = 0; i + 2 <= m; i += 2) {
    s += f[i] + 4.0 * f[i + 1] + f[i + 2];
  }
  s *= h / 3.0;
  s += (3.0 * h / 8.0) * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1]);
  return s;
}

Complex inner(const ComplexField& f, const ComplexField& g, double dx) {
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]);
  return dx * s;
}

double l2_norm(const ComplexField& f, double dx) {
  double s = 0.0;
  for (const auto& z : f.v) s += std::norm(z);
  return std::sqrt(dx * s);
}

double lp_norm(const ComplexField& f, double dx, double p) {
  double s = 0.0;
  for (const auto& z : f.v) s += std::pow(std::abs(z), p);
  return std::pow(dx * s, 1.0 / p);
}

double sup_abs(const ComplexField& f) {
  double s = 0.0;
  for (const auto& z : f.v) s = std::max(s, std::abs(z));
  return s;
}

}  // namespace scatter1d
