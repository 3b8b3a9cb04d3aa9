#include "scatter1d/grid.hpp"

#include <cmath>
#include <numbers>

namespace scatter1d {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

SpatialGrid SpatialGrid::symmetric(double x_max, int n) {
  if (!(x_max > 0.0)) throw config_error("SpatialGrid: x_max must be positive");
  if (n < 16) throw config_error("SpatialGrid: n must be >= 16");
  if (!power_of_two(n)) throw config_error("SpatialGrid: n must be a power of two");
  SpatialGrid g;
  g.x_min = -x_max;
  g.x_max = x_max;
  g.n = n;
  g.dx = (g.x_max - g.x_min) / (n - 1);
  return g;
}

int SpatialGrid::nearest_node(double x) const {
  int i = static_cast<int>(std::lround((x - x_min) / dx));
  if (i < 0) i = 0;
  if (i >= n) i = n - 1;
  return i;
}

MomentumGrid MomentumGrid::dual_subset(const SpatialGrid& g, int half) {
  if (half < 1 || 2 * half >= g.n)
    throw config_error("MomentumGrid: dual subset half-count out of range");
  MomentumGrid m;
  m.dk = 2.0 * std::numbers::pi / (static_cast<double>(g.n) * g.dx);
  m.k.reserve(2 * half + 1);
  for (int j = -half; j <= half; ++j) m.k.push_back(j * m.dk);
  m.k_min_puncture = 0.0;
  return m;
}

MomentumGrid MomentumGrid::uniform_punctured(double k_lo, double k_hi, int count_per_side) {
  if (!(k_lo > 0.0) || !(k_hi > k_lo) || count_per_side < 2)
    throw config_error("MomentumGrid: bad punctured-grid parameters");
  MomentumGrid m;
  double h = (k_hi - k_lo) / (count_per_side - 1);
  m.dk = h;
  m.k_min_puncture = k_lo;
  m.k.reserve(2 * count_per_side);
  for (int j = count_per_side - 1; j >= 0; --j) m.k.push_back(-(k_lo + j * h));
  for (int j = 0; j < count_per_side; ++j) m.k.push_back(k_lo + j * h);
  return m;
}

bool MomentumGrid::is_symmetric() const {
  int m = size();
  for (int j = 0; j < m; ++j) {
    if (std::abs(k[j] + k[m - 1 - j]) > 1e-12 * (std::abs(k[j]) + 1.0)) return false;
  }
  return true;
}

bool ComplexField::all_finite() const {
  for (const auto& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_aligned(const ComplexField& f, const SpatialGrid& g, const char* where) {
  if (static_cast<int>(f.size()) != g.n)
    throw config_error(std::string(where) + ": field length does not match grid");
}

}  // namespace scatter1d
