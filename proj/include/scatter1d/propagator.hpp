#pragma once

#include "scatter1d/spectral.hpp"

namespace scatter1d {

// Free propagator kernel (4*pi*i*t)^(-1/2) e^{i(x-y)^2/4t}, branch sqrt(i)=e^{i pi/4}.
Complex free_kernel(double t, double x, double y);

// e^{-itH} P_c (continuous_only) or e^{-itH} (full) through the generalized
// Fourier maps: coefficients pick up exactly unimodular phases, so the step
// is unitary on the map's range.
ComplexField evolve_linear(const ComplexField& phi, double t, const SpectralData& sd,
                           EvolveMode mode);

struct KernelWindow {
  double x_obs = 0.0;  // observation half-width; 0 -> x_max/2
  int max_nodes = 129; // sub-grid resolution across the window
};

struct KernelSlice {
  double t = 0.0;
  std::vector<int> nodes;       // spatial-grid node indices of the sub-grid
  std::vector<double> xs;
  std::vector<Complex> values;  // row-major over (x,y) sub-grid pairs
  double sup_abs = 0.0;

  int count() const { return static_cast<int>(nodes.size()); }
  Complex at(int ix, int iy) const { return values[static_cast<std::size_t>(ix) * nodes.size() + iy]; }
};

// K_t(x,y) = Int e^{-ik^2 t} conj(Psi_+(x,k)) Psi_+(y,k) dk. The plane-wave
// part integrates to the free kernel in closed form; the scattering
// correction (which decays in k) is summed on a dense momentum grid whose
// spacing resolves the fastest phase, dk * (2 k_max t + 2 x_obs + 1) < pi/4,
// under the taper e^{-(k/k_max)^8}. The taper and the dense-grid rule are
// part of the kernel definition for reproducibility.
KernelSlice kernel_continuous(double t, const SpectralData& sd,
                              const KernelWindow& win = {});

struct DecayReport2 {
  std::vector<double> times, sup_abs, scaled_sup;
  double max_over_min = 0.0;
};

DecayReport2 decay_scan(const SpectralData& sd, const std::vector<double>& times,
                        const KernelWindow& win = {});

// t^{1/p - 1/2} ||e^{-itH} P_c phi||_{p'} / ||phi||_p with 1/p + 1/p' = 1.
double lp_ratio(double p, const ComplexField& phi, double t, const SpectralData& sd);

// Int_{-T}^{T} ||e^{-itH} phi||_{q}^{q} dt by Simpson sampling; optional
// power-law tail estimate from the last samples.
double spacetime_lq_integral(const ComplexField& phi, const SpectralData& sd, double T,
                             double q, double dt_sample, double* tail_estimate = nullptr);

}  // namespace scatter1d
