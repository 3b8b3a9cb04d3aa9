#pragma once

#include "scatter1d/grid.hpp"

namespace scatter1d {

// Cubic (4-point Lagrange) interpolation on a uniform axis starting at x0
// with spacing h. Exact at nodes and for cubic polynomials.
Complex cubic_interp(const Complex* values, int n, double x0, double h, double x);

// Quintic (6-point Lagrange) flavour for sharper tabulated data.
Complex quintic_interp(const Complex* values, int n, double x0, double h, double x);

Complex interpolate(const ComplexField& f, const SpatialGrid& g, double x);

}  // namespace scatter1d
