#pragma once

#include "scatter1d/grid.hpp"

namespace scatter1d {

// Unitary continuum convention: phi_hat(k) = (2*pi)^(-1/2) Int e^{-ikx} phi(x) dx,
// realized by an FFT with phase corrections so the convention holds on the
// grid dual to the spatial grid. The Nyquist bin is dropped to keep the
// momentum grid symmetric; smooth fields carry no content there.
struct FourierField {
  MomentumGrid grid;
  ComplexField values;
};

FourierField fourier_forward(const ComplexField& phi, const SpatialGrid& g);
ComplexField fourier_inverse(const ComplexField& phi_hat, const MomentumGrid& kg,
                             const SpatialGrid& g);

// In-place radix-2 FFT, unnormalized, sign = -1 forward / +1 inverse.
void fft(std::vector<Complex>& a, int sign);

}  // namespace scatter1d
