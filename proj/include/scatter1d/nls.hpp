#pragma once

#include "scatter1d/spectral.hpp"

namespace scatter1d {

struct WaveFunction {
  double t = 0.0;
  ComplexField psi;
};

enum class Splitting { strang };

struct NlsConfig {
  double lambda = 0.0;
  double p = 5.0;      // nonlinearity power, >= 5
  double dt = 1e-3;
  double t0 = 0.0;
  double t1 = 10.0;
  Splitting splitting = Splitting::strang;
  int snapshot_stride = 0;  // 0 -> pick so at most ~200 snapshots are kept

  void validate() const;
  // stability advisory |lambda| sup|u0|^{p-1} dt < 0.1
  bool stability_ok(const ComplexField& u0) const;
};

// f(|u|) u/|u| with f(mu) = lambda mu^p, i.e. lambda |u|^{p-1} u (0 at u = 0).
Complex nonlinearity(Complex u, double lambda, double p);

// One Strang step e^{-i dt/2 H} o N_dt o e^{-i dt/2 H}; the nonlinear factor
// is the exact pointwise rotation u -> e^{-i dt lambda |u|^{p-1}} u.
WaveFunction step(const WaveFunction& u, double dt, const NlsConfig& cfg,
                  const SpectralData& sd);

struct Trajectory {
  std::vector<double> times;
  std::vector<double> mass;      // ||u||_2^2
  std::vector<double> energy;    // (1/2)<H u, u> + Int G(|u|) dx
  std::vector<double> energy_x;  // (1/2)||u||_X^2 + Int G(|u|) dx = energy + mass/2
  std::vector<double> sup;
  std::vector<WaveFunction> snapshots;
};

Trajectory evolve_nls(const ComplexField& phi, const NlsConfig& cfg,
                      const SpectralData& sd);

struct Conserved {
  double mass = 0.0;
  double energy = 0.0;
  double energy_x = 0.0;
};

Conserved conserved_quantities(const ComplexField& u, const NlsConfig& cfg,
                               const SpectralData& sd);

// ||u||_X = sqrt(<(H+1)u, u>) through the spectral coefficients.
double x_norm(const ComplexField& u, const SpectralData& sd);

}  // namespace scatter1d
