#pragma once

#include <complex>
#include <vector>

#include "scatter1d/errors.hpp"

namespace scatter1d {

using Complex = std::complex<double>;

// Uniform grid on [x_min, x_max], endpoints included, dx = (x_max-x_min)/(n-1).
// The transform pairing requires symmetric grids (x_min = -x_max) and n a
// power of two.
struct SpatialGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  int n = 0;
  double dx = 0.0;

  static SpatialGrid symmetric(double x_max, int n);

  double x(int i) const { return x_min + i * dx; }
  bool is_symmetric() const { return x_min == -x_max; }
  bool contains(double x) const { return x >= x_min && x <= x_max; }
  // Index of the grid node nearest to x.
  int nearest_node(double x) const;
};

// Uniform symmetric momentum grid: k_j = j*dk for j = -half..half, sorted
// ascending. Nodes with |k| < k_min_puncture are masked (kept in place but
// flagged); masking never re-grids.
struct MomentumGrid {
  std::vector<double> k;
  double dk = 0.0;
  double k_min_puncture = 0.0;

  // Grid dual to a spatial grid: dk = 2*pi/(n*dx), truncated at |j| <= half.
  static MomentumGrid dual_subset(const SpatialGrid& g, int half);
  // Explicit symmetric grid {±(k_lo + j*h)} for j = 0..count-1, punctured at 0.
  static MomentumGrid uniform_punctured(double k_lo, double k_hi, int count_per_side);

  int size() const { return static_cast<int>(k.size()); }
  bool masked(int j) const { return std::abs(k[j]) < k_min_puncture; }
  bool is_symmetric() const;
};

// Complex samples aligned to a SpatialGrid or MomentumGrid.
struct ComplexField {
  std::vector<Complex> v;

  ComplexField() = default;
  explicit ComplexField(std::size_t n) : v(n, Complex(0.0, 0.0)) {}
  explicit ComplexField(std::vector<Complex> values) : v(std::move(values)) {}

  std::size_t size() const { return v.size(); }
  Complex& operator[](std::size_t i) { return v[i]; }
  const Complex& operator[](std::size_t i) const { return v[i]; }

  bool all_finite() const;
};

void require_aligned(const ComplexField& f, const SpatialGrid& g, const char* where);

}  // namespace scatter1d
