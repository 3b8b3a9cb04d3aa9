#pragma once

#include "scatter1d/jost.hpp"
#include "scatter1d/linalg.hpp"

namespace scatter1d {

struct BoundState {
  double beta = 0.0;  // eigenvalue -beta^2
  ComplexField psi;   // real-valued, L^2-normalized
  double norm_residual = 0.0;
  double eigen_residual = 0.0;
};

// Eigenvalues located as zeros of 1/T on the imaginary axis (the Volterra
// equation stays contractive for Im k > 0), eigenfunctions from f_1(x, i*beta).
std::vector<BoundState> find_bound_states(const PotentialSpec& v);

enum class EvolveMode { continuous_only, full };

struct SpectralOptions {
  int n_k_half = 0;      // half node count of the dual momentum subset; 0 -> n/4
  bool unitarize = true; // orthonormalize the discrete map (Newton-Schulz polar)
};

// Continuum eigenfunctions Psi_+(x,k) on (x-grid x k-grid), the generalized
// Fourier maps, and the bound-state block. The discrete analysis map is
// assembled from quadrature rows and then polar-orthonormalized so the
// discrete diagonalization is exactly unitary on its range; the measured
// quadrature defect is kept as a diagnostic.
struct SpectralData {
  PotentialSpec potential;
  SpatialGrid grid;
  MomentumGrid kgrid;
  ScatteringCoefficients coeffs;  // on kgrid (k = 0 carries the limit branch)
  std::vector<BoundState> bound;
  Classification classification = Classification::generic;

  CMatrix psi;  // raw Psi_+(x,k): row per k node, column per x node
  CMatrix map;  // analysis map in Euclidean scaling, rows = n_k + N
  bool unitarized = false;
  PolarResult polar;

  int n_k() const { return kgrid.size(); }
  int n_bound() const { return static_cast<int>(bound.size()); }
  double row_eigenvalue(int row) const;  // k^2 or -beta^2

  std::vector<Complex> to_coeffs(const ComplexField& phi) const;
  ComplexField from_coeffs(const std::vector<Complex>& c) const;

  // F_+ : phi_hat(k) = Int conj(Psi_+(x,k)) phi(x) dx
  ComplexField forward_map(const ComplexField& phi) const;
  // F_+^*: (F g)(x) = Int Psi_+(x,k) g(k) dk
  ComplexField adjoint_map(const ComplexField& g) const;
  // P_c = I - sum |psi_j><psi_j|
  ComplexField project_continuous(const ComplexField& phi) const;
};

SpectralData build_spectral_data(const PotentialSpec& v, const SpectralOptions& opt = {});

}  // namespace scatter1d
