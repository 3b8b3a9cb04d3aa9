#pragma once

#include "scatter1d/spectral.hpp"

// Shared spectral fixtures (built once per test binary run). n = 512 keeps
// the map orthonormalization fast while staying inside every tolerance used
// by the unit suites.
namespace fixtures {

inline const scatter1d::SpectralData& zero() {
  static scatter1d::SpectralData sd = [] {
    using namespace scatter1d;
    const SpatialGrid g = SpatialGrid::symmetric(40.0, 512);
    SpectralOptions opt;
    opt.n_k_half = 255;  // k_max ~ 20 so smooth test fields are band-limited
    return build_spectral_data(build_potential(zero_potential(), g), opt);
  }();
  return sd;
}

inline const scatter1d::SpectralData& pt1() {
  static scatter1d::SpectralData sd = [] {
    using namespace scatter1d;
    const SpatialGrid g = SpatialGrid::symmetric(40.0, 512);
    SpectralOptions opt;
    opt.n_k_half = 255;
    return build_spectral_data(build_potential(poschl_teller(1.0), g), opt);
  }();
  return sd;
}

inline const scatter1d::SpectralData& gauss_repulsive() {
  static scatter1d::SpectralData sd = [] {
    using namespace scatter1d;
    const SpatialGrid g = SpatialGrid::symmetric(40.0, 512);
    SpectralOptions opt;
    opt.n_k_half = 255;
    return build_spectral_data(build_potential(gaussian_potential(0.3, 1.0), g), opt);
  }();
  return sd;
}

inline const scatter1d::SpectralData& gauss_attractive() {
  static scatter1d::SpectralData sd = [] {
    using namespace scatter1d;
    const SpatialGrid g = SpatialGrid::symmetric(40.0, 512);
    SpectralOptions opt;
    opt.n_k_half = 255;
    return build_spectral_data(build_potential(gaussian_potential(-0.2, 1.0), g), opt);
  }();
  return sd;
}

// Production-resolution fixture for evolve/kernel cross-checks.
inline const scatter1d::SpectralData& pt1_mid() {
  static scatter1d::SpectralData sd = [] {
    using namespace scatter1d;
    const SpatialGrid g = SpatialGrid::symmetric(40.0, 1024);
    return build_spectral_data(build_potential(poschl_teller(1.0), g));
  }();
  return sd;
}

// Kernel-only fixture: full resolution, no orthonormalization (the kernel
// path never touches the maps).
inline const scatter1d::SpectralData& pt1_kernel() {
  static scatter1d::SpectralData sd = [] {
    using namespace scatter1d;
    const SpatialGrid g = SpatialGrid::symmetric(40.0, 2048);
    SpectralOptions opt;
    opt.n_k_half = 256;
    opt.unitarize = false;
    return build_spectral_data(build_potential(poschl_teller(1.0), g), opt);
  }();
  return sd;
}

// Gaussian bump of unit L2 norm, then scaled to the requested X-norm.
scatter1d::ComplexField gaussian_state(const scatter1d::SpectralData& sd, double x_norm_target,
                                       double width = 1.0, double center = 0.0,
                                       double momentum = 0.0);

}  // namespace fixtures
