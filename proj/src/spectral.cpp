#include "scatter1d/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scatter1d/quadrature.hpp"

namespace scatter1d {

namespace {

// Re 1/T(i*beta); real by construction since the kernel and V are real there.
double inv_t_imag_axis(const PotentialSpec& v, double beta) {
  const JostSolution d1 = solve_m(1, v, Complex(0.0, beta));
  const Complex invT = 1.0 + d1.coef_plain / (2.0 * beta);
  return invT.real();
}

BoundState make_bound_state(const PotentialSpec& v, double beta) {
  const SpatialGrid& g = v.grid;
  // f_1 e^{-beta x} is only relatively accurate on its own asymptotic side,
  // so assemble the eigenfunction from f_1 (right half) and f_2 (left half)
  // matched at the origin node.
  const JostSolution d1 = solve_m(1, v, Complex(0.0, beta));
  const JostSolution d2 = solve_m(2, v, Complex(0.0, beta));
  const int mid = g.n / 2;
  ComplexField psi(static_cast<std::size_t>(g.n));
  const double f1_mid = d1.m[mid].real() * std::exp(-beta * g.x(mid));
  const double f2_mid = d2.m[mid].real() * std::exp(beta * g.x(mid));
  if (f2_mid == 0.0) throw numeric_error("find_bound_states: degenerate matching");
  const double scale = f1_mid / f2_mid;
  for (int i = 0; i < g.n; ++i) {
    const double f = i >= mid ? d1.m[i].real() * std::exp(-beta * g.x(i))
                              : scale * d2.m[i].real() * std::exp(beta * g.x(i));
    psi[i] = Complex(f, 0.0);
  }
  // normalize in the discrete L^2 norm shared by the spectral maps
  const double nrm = l2_norm(psi, g.dx);
  if (!(nrm > 0.0)) throw numeric_error("find_bound_states: zero eigenfunction norm");
  for (auto& z : psi.v) z /= nrm;

  BoundState b;
  b.beta = beta;
  // quadrature consistency of the normalization (Simpson vs uniform weights)
  ComplexField dens(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) dens[i] = std::norm(psi[i]);
  b.norm_residual = std::abs(std::sqrt(quadrature(dens, g).real()) - 1.0);

  // eigen-residual with the 4th-order five-point second difference,
  // skipping boundaries and the nodes adjacent to V discontinuities
  std::vector<char> skip(g.n, 0);
  for (int bp : v.breakpoints)
    for (int i = std::max(0, bp - 2); i <= std::min(g.n - 1, bp + 2); ++i) skip[i] = 1;
  double s2 = 0.0;
  const double h2 = g.dx * g.dx;
  for (int i = 2; i < g.n - 2; ++i) {
    if (skip[i]) continue;
    const double psi2 = (-psi[i - 2].real() + 16.0 * psi[i - 1].real() -
                         30.0 * psi[i].real() + 16.0 * psi[i + 1].real() -
                         psi[i + 2].real()) /
                        (12.0 * h2);
    const double r = -psi2 + v.values[i] * psi[i].real() + beta * beta * psi[i].real();
    s2 += r * r;
  }
  b.eigen_residual = std::sqrt(g.dx * s2);
  b.psi = std::move(psi);
  return b;
}

}  // namespace

std::vector<BoundState> find_bound_states(const PotentialSpec& v) {
  if (!v.sampled) throw config_error("find_bound_states: potential not sampled");
  const double beta_max = std::sqrt(std::max(0.0, -v.min_value())) + 1.0;
  const int scan = 400;
  std::vector<double> betas;
  double prev_b = 0.0, prev_g = 0.0;
  bool have_prev = false;
  for (int i = 0; i <= scan; ++i) {
    const double b = beta_max * (scan - i + 1) / (scan + 1);
    const double gb = inv_t_imag_axis(v, b);
    if (!std::isfinite(gb)) throw numeric_error("find_bound_states: 1/T evaluation failed");
    if (have_prev && prev_g * gb < 0.0) {
      double blo = b, bhi = prev_b, glo = gb;
      for (int it = 0; it < 80 && (bhi - blo) > 1e-12; ++it) {
        const double bm = 0.5 * (blo + bhi);
        const double gm = inv_t_imag_axis(v, bm);
        if (!std::isfinite(gm))
          throw numeric_error("find_bound_states: bisection stagnated");
        if (gm * glo <= 0.0) {
          bhi = bm;
        } else {
          blo = bm;
          glo = gm;
        }
      }
      betas.push_back(0.5 * (blo + bhi));
    }
    prev_b = b;
    prev_g = gb;
    have_prev = true;
  }
  std::sort(betas.begin(), betas.end());
  std::vector<BoundState> out;
  for (double b : betas) out.push_back(make_bound_state(v, b));
  return out;
}

double SpectralData::row_eigenvalue(int row) const {
  if (row < n_k()) {
    const double k = kgrid.k[row];
    return k * k;
  }
  const double b = bound[row - n_k()].beta;
  return -b * b;
}

std::vector<Complex> SpectralData::to_coeffs(const ComplexField& phi) const {
  require_aligned(phi, grid, "SpectralData::to_coeffs");
  std::vector<Complex> c = matvec(map, phi.v);
  const double s = std::sqrt(grid.dx);
  for (auto& z : c) z *= s;
  return c;
}

ComplexField SpectralData::from_coeffs(const std::vector<Complex>& c) const {
  std::vector<Complex> x = matvec_adjoint(map, c);
  ComplexField out(std::move(x));
  const double s = 1.0 / std::sqrt(grid.dx);
  for (auto& z : out.v) z *= s;
  return out;
}

ComplexField SpectralData::forward_map(const ComplexField& phi) const {
  const std::vector<Complex> c = to_coeffs(phi);
  ComplexField out(static_cast<std::size_t>(n_k()));
  const double s = 1.0 / std::sqrt(kgrid.dk);
  for (int j = 0; j < n_k(); ++j) out[j] = c[j] * s;
  return out;
}

ComplexField SpectralData::adjoint_map(const ComplexField& g) const {
  if (static_cast<int>(g.size()) != n_k())
    throw config_error("adjoint_map: field not aligned to the momentum grid");
  std::vector<Complex> c(n_k() + n_bound(), Complex(0.0, 0.0));
  const double s = std::sqrt(kgrid.dk);
  for (int j = 0; j < n_k(); ++j) c[j] = g[j] * s;
  return from_coeffs(c);
}

ComplexField SpectralData::project_continuous(const ComplexField& phi) const {
  require_aligned(phi, grid, "project_continuous");
  ComplexField out = phi;
  for (const BoundState& b : bound) {
    const Complex c = inner(phi, b.psi, grid.dx);
    for (int i = 0; i < grid.n; ++i) out[i] -= c * b.psi[i];
  }
  return out;
}

SpectralData build_spectral_data(const PotentialSpec& v, const SpectralOptions& opt) {
  if (!v.sampled) throw config_error("build_spectral_data: potential not sampled");
  SpectralData sd;
  sd.potential = v;
  sd.grid = v.grid;
  const int half = opt.n_k_half > 0 ? opt.n_k_half : v.grid.n / 4;
  sd.kgrid = MomentumGrid::dual_subset(v.grid, half);
  sd.bound = find_bound_states(v);

  const ClassifyResult cls = classify(v);
  sd.classification = cls.classification;

  const int nk = sd.kgrid.size();
  const int n = v.grid.n;
  const int nb = static_cast<int>(sd.bound.size());
  sd.psi = CMatrix(nk, n);
  sd.coeffs.k = sd.kgrid.k;
  sd.coeffs.T.assign(nk, Complex(0.0, 0.0));
  sd.coeffs.R1.assign(nk, Complex(0.0, 0.0));
  sd.coeffs.R2.assign(nk, Complex(0.0, 0.0));
  sd.coeffs.unitarity_defect.assign(nk, 0.0);
  sd.coeffs.classification = cls.classification;
  sd.coeffs.a = cls.a;
  sd.coeffs.wronskian = cls.wronskian;

  const double inv_s2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  // k = 0 limit branch
  {
    const int j0 = nk / 2;
    if (cls.classification == Classification::exceptional) {
      const double a = cls.a;
      const double t0 = 2.0 * a / (1.0 + a * a);
      sd.coeffs.T[j0] = t0;
      sd.coeffs.R1[j0] = (1.0 - a * a) / (1.0 + a * a);
      sd.coeffs.R2[j0] = (a * a - 1.0) / (1.0 + a * a);
      for (int m = 0; m < n; ++m)
        sd.psi.at(j0, m) = inv_s2pi * t0 * cls.half_bound_state[m];
    } else {
      sd.coeffs.R1[j0] = -1.0;
      sd.coeffs.R2[j0] = -1.0;
      // T(0) = 0: the row stays zero
    }
  }
  for (int j = half + 1; j < nk; ++j) {  // positive momenta
    const double k = sd.kgrid.k[j];
    const JostSolution d1 = solve_m(1, v, Complex(k, 0.0));
    const JostSolution d2 = solve_m(2, v, Complex(k, 0.0));
    const CoefficientSample s = coefficient_sample(d1, d2, k);
    sd.coeffs.T[j] = s.T;
    sd.coeffs.R1[j] = s.R1;
    sd.coeffs.R2[j] = s.R2;
    sd.coeffs.unitarity_defect[j] = s.unitarity_defect;
    sd.coeffs.max_j_disagreement =
        std::max(sd.coeffs.max_j_disagreement, s.j_disagreement);
    const int jm = nk - 1 - j;  // mirror node -k
    sd.coeffs.T[jm] = std::conj(s.T);
    sd.coeffs.R1[jm] = std::conj(s.R1);
    sd.coeffs.R2[jm] = std::conj(s.R2);
    sd.coeffs.unitarity_defect[jm] = s.unitarity_defect;
    for (int m = 0; m < n; ++m) {
      const double x = v.grid.x(m);
      const Complex eikx = std::exp(Complex(0.0, k * x));
      sd.psi.at(j, m) = inv_s2pi * s.T * d1.m[m] * eikx;            // k > 0
      sd.psi.at(jm, m) = inv_s2pi * s.T * d2.m[m] * std::conj(eikx);  // -k
    }
  }

  sd.map = CMatrix(nk + nb, n);
  const double w = std::sqrt(sd.kgrid.dk * v.grid.dx);
  for (int j = 0; j < nk; ++j)
    for (int m = 0; m < n; ++m) sd.map.at(j, m) = w * std::conj(sd.psi.at(j, m));
  const double wb = std::sqrt(v.grid.dx);
  for (int b = 0; b < nb; ++b)
    for (int m = 0; m < n; ++m)
      sd.map.at(nk + b, m) = wb * std::conj(sd.bound[b].psi[m]);

  // Project the quadrature rows off the bound states before orthonormalizing:
  // the bound block is then exactly orthonormal and Newton-Schulz leaves it
  // untouched, so the map's point-spectrum block stays the eigenfunctions.
  for (int b = 0; b < nb; ++b) {
    const Complex* brow = sd.map.row(nk + b);
    for (int j = 0; j < nk; ++j) {
      Complex* row = sd.map.row(j);
      Complex overlap(0.0, 0.0);
      for (int m = 0; m < n; ++m) overlap += row[m] * std::conj(brow[m]);
      for (int m = 0; m < n; ++m) row[m] -= overlap * brow[m];
    }
  }

  if (opt.unitarize) {
    sd.polar = polar_orthonormalize(sd.map);
    sd.unitarized = true;
  }
  return sd;
}

}  // namespace scatter1d
