#include "scatter1d/nls.hpp"

#include <cmath>

#include "scatter1d/quadrature.hpp"

namespace scatter1d {

void NlsConfig::validate() const {
  if (p < 5.0) throw config_error("NlsConfig: nonlinearity power must satisfy p >= 5");
  if (!(dt > 0.0)) throw config_error("NlsConfig: dt must be positive");
  if (!(t1 > t0)) throw config_error("NlsConfig: empty time span");
  if (!std::isfinite(lambda)) throw config_error("NlsConfig: lambda must be finite");
}

bool NlsConfig::stability_ok(const ComplexField& u0) const {
  double s = 0.0;
  for (const auto& z : u0.v) s = std::max(s, std::abs(z));
  return std::abs(lambda) * std::pow(s, p - 1.0) * dt < 0.1;
}

Complex nonlinearity(Complex u, double lambda, double p) {
  const double a2 = std::norm(u);
  if (a2 == 0.0) return Complex(0.0, 0.0);
  const double amp = p == 5.0 ? a2 * a2 : std::pow(a2, 0.5 * (p - 1.0));
  return lambda * amp * u;
}

namespace {

void rotate_nonlinear(std::vector<Complex>& u, double dt, double lambda, double p) {
  for (auto& z : u) {
    const double a2 = std::norm(z);
    if (a2 == 0.0) continue;
    const double amp = p == 5.0 ? a2 * a2 : std::pow(a2, 0.5 * (p - 1.0));
    const double phase = -dt * lambda * amp;
    z *= Complex(std::cos(phase), std::sin(phase));
  }
}

void phase_multiply(std::vector<Complex>& c, const SpectralData& sd, double t) {
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double lam = sd.row_eigenvalue(static_cast<int>(j));
    c[j] *= Complex(std::cos(lam * t), -std::sin(lam * t));
  }
}

double g_integral(const ComplexField& u, const NlsConfig& cfg, const SpatialGrid& g) {
  // Int G(|u|) dx, G(mu) = lambda mu^{p+1}/(p+1)
  ComplexField dens(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = std::abs(u[i]);
    dens[i] = cfg.p == 5.0 ? a * a * a * a * a * a : std::pow(a, cfg.p + 1.0);
  }
  return cfg.lambda / (cfg.p + 1.0) * quadrature(dens, g).real();
}

Conserved conserved_from(const std::vector<Complex>& coeffs, const ComplexField& u,
                         const NlsConfig& cfg, const SpectralData& sd) {
  Conserved c;
  c.mass = l2_norm(u, sd.grid.dx);
  c.mass *= c.mass;
  double h_form = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    h_form += sd.row_eigenvalue(static_cast<int>(j)) * std::norm(coeffs[j]);
  const double gint = g_integral(u, cfg, sd.grid);
  c.energy = 0.5 * h_form + gint;
  c.energy_x = 0.5 * (h_form + c.mass) + gint;
  return c;
}

}  // namespace

WaveFunction step(const WaveFunction& u, double dt, const NlsConfig& cfg,
                  const SpectralData& sd) {
  cfg.validate();
  std::vector<Complex> c = sd.to_coeffs(u.psi);
  phase_multiply(c, sd, 0.5 * dt);
  ComplexField mid = sd.from_coeffs(c);
  rotate_nonlinear(mid.v, dt, cfg.lambda, cfg.p);
  if (!mid.all_finite())
    throw numeric_error("nls step: non-finite samples (blow-up or instability)");
  c = sd.to_coeffs(mid);
  phase_multiply(c, sd, 0.5 * dt);
  WaveFunction out;
  out.t = u.t + dt;
  out.psi = sd.from_coeffs(c);
  return out;
}

Trajectory evolve_nls(const ComplexField& phi, const NlsConfig& cfg,
                      const SpectralData& sd) {
  cfg.validate();
  require_aligned(phi, sd.grid, "evolve_nls");
  const int steps = static_cast<int>(std::llround((cfg.t1 - cfg.t0) / cfg.dt));
  if (steps < 1) throw config_error("evolve_nls: span shorter than one step");
  const int stride =
      cfg.snapshot_stride > 0 ? cfg.snapshot_stride : std::max(1, steps / 200);

  Trajectory tr;
  tr.times.reserve(steps + 1);

  auto record = [&](double t, const ComplexField& u, const std::vector<Complex>& c,
                    bool snap) {
    const Conserved q = conserved_from(c, u, cfg, sd);
    tr.times.push_back(t);
    tr.mass.push_back(q.mass);
    tr.energy.push_back(q.energy);
    tr.energy_x.push_back(q.energy_x);
    tr.sup.push_back(sup_abs(u));
    if (snap) tr.snapshots.push_back(WaveFunction{t, u});
  };

  // evolve the map-range representative of phi; the maps are unitary on
  // their range, so mass is exactly conserved from here on
  std::vector<Complex> c = sd.to_coeffs(phi);
  ComplexField u = sd.from_coeffs(c);
  record(cfg.t0, u, c, true);

  for (int m = 0; m < steps; ++m) {
    phase_multiply(c, sd, 0.5 * cfg.dt);
    ComplexField mid = sd.from_coeffs(c);
    rotate_nonlinear(mid.v, cfg.dt, cfg.lambda, cfg.p);
    if (!mid.all_finite())
      throw numeric_error("evolve_nls: non-finite samples (blow-up or instability)");
    c = sd.to_coeffs(mid);
    phase_multiply(c, sd, 0.5 * cfg.dt);
    u = sd.from_coeffs(c);
    const double t = cfg.t0 + (m + 1) * cfg.dt;
    record(t, u, c, (m + 1) % stride == 0 || m + 1 == steps);
  }
  return tr;
}

Conserved conserved_quantities(const ComplexField& u, const NlsConfig& cfg,
                               const SpectralData& sd) {
  const std::vector<Complex> c = sd.to_coeffs(u);
  return conserved_from(c, u, cfg, sd);
}

double x_norm(const ComplexField& u, const SpectralData& sd) {
  const std::vector<Complex> c = sd.to_coeffs(u);
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j)
    s += (sd.row_eigenvalue(static_cast<int>(j)) + 1.0) * std::norm(c[j]);
  return std::sqrt(std::max(0.0, s));
}

}  // namespace scatter1d
