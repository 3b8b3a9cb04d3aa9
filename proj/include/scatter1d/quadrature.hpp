#pragma once

#include "scatter1d/grid.hpp"

namespace scatter1d {

// Composite Simpson over the whole grid (3/8 rule absorbs the odd interval
// left over by power-of-two node counts). O(dx^4) for smooth integrands.
Complex quadrature(const ComplexField& f, const SpatialGrid& g);

// Discrete L^2 pairing with uniform weight dx: <f,g> = dx * sum f conj(g).
// Uniform weights keep the discrete Fourier transform exactly unitary.
Complex inner(const ComplexField& f, const ComplexField& g, double dx);
double l2_norm(const ComplexField& f, double dx);
double lp_norm(const ComplexField& f, double dx, double p);
double sup_abs(const ComplexField& f);

}  // namespace scatter1d
