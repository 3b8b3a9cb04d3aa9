#include "scatter1d/interpolate.hpp"

#include <cmath>

namespace scatter1d {

Complex cubic_interp(const Complex* values, int n, double x0, double h, double x) {
  const double s = (x - x0) / h;
  int i = static_cast<int>(std::floor(s));
  if (i < 0) i = 0;
  if (i > n - 2) i = n - 2;
  int base = i - 1;
  if (base < 0) base = 0;
  if (base > n - 4) base = n - 4;
  const double t = s - base;
  // Lagrange weights on nodes {0,1,2,3} relative to base
  const double w0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
  const double w1 = t * (t - 2.0) * (t - 3.0) / 2.0;
  const double w2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
  const double w3 = t * (t - 1.0) * (t - 2.0) / 6.0;
  return w0 * values[base] + w1 * values[base + 1] + w2 * values[base + 2] +
         w3 * values[base + 3];
}

Complex quintic_interp(const Complex* values, int n, double x0, double h, double x) {
  const double s = (x - x0) / h;
  int i = static_cast<int>(std::floor(s));
  if (i < 0) i = 0;
  if (i > n - 2) i = n - 2;
  int base = i - 2;
  if (base < 0) base = 0;
  if (base > n - 6) base = n - 6;
  const double t = s - base;
  Complex acc(0.0, 0.0);
  for (int j = 0; j < 6; ++j) {
    double w = 1.0;
    for (int l = 0; l < 6; ++l) {
      if (l == j) continue;
      w *= (t - l) / (j - l);
    }
    acc += w * values[base + j];
  }
  return acc;
}

Complex interpolate(const ComplexField& f, const SpatialGrid& g, double x) {
  require_aligned(f, g, "interpolate");
  if (!g.contains(x)) throw config_error("interpolate: x outside grid extent");
  return cubic_interp(f.v.data(), g.n, g.x_min, g.dx, x);
}

}  // namespace scatter1d
