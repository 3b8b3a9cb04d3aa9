#include "scatter1d/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "scatter1d/interpolate.hpp"
#include "scatter1d/quadrature.hpp"

namespace scatter1d {

Complex free_kernel(double t, double x, double y) {
  if (!(t > 0.0)) throw config_error("free_kernel: t must be positive");
  const double r = x - y;
  const double mod = 1.0 / std::sqrt(4.0 * std::numbers::pi * t);
  const double phase = r * r / (4.0 * t) - std::numbers::pi / 4.0;
  return mod * Complex(std::cos(phase), std::sin(phase));
}

ComplexField evolve_linear(const ComplexField& phi, double t, const SpectralData& sd,
                           EvolveMode mode) {
  std::vector<Complex> c = sd.to_coeffs(phi);
  const int nk = sd.n_k();
  for (int j = 0; j < nk; ++j) {
    const double lam = sd.row_eigenvalue(j);
    c[j] *= Complex(std::cos(lam * t), -std::sin(lam * t));
  }
  for (std::size_t b = nk; b < c.size(); ++b) {
    if (mode == EvolveMode::continuous_only) {
      c[b] = Complex(0.0, 0.0);
    } else {
      const double lam = sd.row_eigenvalue(static_cast<int>(b));
      c[b] *= Complex(std::cos(lam * t), -std::sin(lam * t));
    }
  }
  return sd.from_coeffs(c);
}

namespace {

constexpr double kKernelTmin = 0.1;

std::vector<int> window_nodes(const SpectralData& sd, const KernelWindow& win,
                              double& x_obs) {
  x_obs = win.x_obs > 0.0 ? win.x_obs : 0.5 * sd.grid.x_max;
  std::vector<int> inside;
  for (int i = 0; i < sd.grid.n; ++i)
    if (std::abs(sd.grid.x(i)) <= x_obs) inside.push_back(i);
  if (inside.size() < 2) throw config_error("kernel window too narrow");
  const int stride =
      std::max<int>(1, static_cast<int>(inside.size() + win.max_nodes - 1) / win.max_nodes);
  std::vector<int> nodes;
  for (std::size_t i = 0; i < inside.size(); i += stride) nodes.push_back(inside[i]);
  return nodes;
}

// The integrand conj(Psi_+(x,k)) Psi_+(y,k) oscillates in k at rates up to
// 2(|x|+|y|), so Psi is split per branch into its two plane-wave channels,
//   sqrt(2pi) Psi_+(x,+kappa) = alpha1 e^{+i kappa x} + beta1 e^{-i kappa x},
//   sqrt(2pi) Psi_+(x,-kappa) = alpha2 e^{-i kappa x} + beta2 e^{+i kappa x},
// whose coefficients, built from V-localized integrals of the Volterra
// solution (alpha1 = T (m_1 + m_1'/2ik), beta1 = -T e^{2ikx} m_1'/2ik, and
// mirrored for m_2), vary in k on the scale of the potential's support and
// interpolate safely. Near k = 0 the split degenerates (1/k), so a band
// [0, k_split] is summed from directly solved columns instead.
struct KernelTables {
  std::vector<int> nodes;
  std::vector<double> xs;
  double x_obs = 0.0;
  double k_split = 0.0;
  double k_max = 0.0;
  double t_max = 0.0;
  // low band, kappa_d = d * dk_low: sqrt(2pi) Psi at the window nodes
  double dk_low = 0.0;
  int n_low = 0;
  CMatrix low_pos, low_neg;  // (n_low+1) x count
  // channel band, kappa_j = k_split + j * dk_ab
  double dk_ab = 0.0;
  int n_ab = 0;
  CMatrix a1, b1, a2, b2;  // (n_ab+1) x count
};

KernelTables make_kernel_tables(const SpectralData& sd, const KernelWindow& win,
                                double t_max) {
  KernelTables tb;
  tb.nodes = window_nodes(sd, win, tb.x_obs);
  const int count = static_cast<int>(tb.nodes.size());
  tb.xs.resize(count);
  for (int i = 0; i < count; ++i) tb.xs[i] = sd.grid.x(tb.nodes[i]);
  tb.k_max = sd.kgrid.k.back();
  tb.k_split = std::min(1.0, 0.5 * tb.k_max);
  tb.t_max = std::max(t_max, kKernelTmin);

  const double rate_geo = 4.0 * tb.x_obs + 1.0;
  tb.dk_low = (std::numbers::pi / 4.0) / (2.0 * tb.k_split * tb.t_max + rate_geo);
  tb.n_low = static_cast<int>(std::ceil(tb.k_split / tb.dk_low));
  tb.dk_low = tb.k_split / tb.n_low;
  tb.low_pos = CMatrix(tb.n_low + 1, count);
  tb.low_neg = CMatrix(tb.n_low + 1, count);

  for (int d = 0; d <= tb.n_low; ++d) {
    const double kappa = d * tb.dk_low;
    if (d == 0) {
      // k -> 0 branch limits: T(0) f_1 from above, T(0) f_2 from below
      const Complex t0 = sd.coeffs.T[sd.n_k() / 2];
      if (t0 == Complex(0.0, 0.0)) continue;  // generic case: rows stay zero
      const JostSolution d1 = solve_m(1, sd.potential, Complex(0.0, 0.0));
      const JostSolution d2 = solve_m(2, sd.potential, Complex(0.0, 0.0));
      for (int j = 0; j < count; ++j) {
        tb.low_pos.at(0, j) = t0 * d1.m[tb.nodes[j]];
        tb.low_neg.at(0, j) = t0 * d2.m[tb.nodes[j]];
      }
      continue;
    }
    const JostSolution d1 = solve_m(1, sd.potential, Complex(kappa, 0.0));
    const JostSolution d2 = solve_m(2, sd.potential, Complex(kappa, 0.0));
    const Complex inv2ik = 1.0 / Complex(0.0, 2.0 * kappa);
    const Complex T = 1.0 / (1.0 - inv2ik * d1.coef_plain);
    for (int j = 0; j < count; ++j) {
      const int node = tb.nodes[j];
      const double x = tb.xs[j];
      const Complex eik = std::exp(Complex(0.0, kappa * x));
      tb.low_pos.at(d, j) = T * d1.m[node] * eik;
      tb.low_neg.at(d, j) = T * d2.m[node] * std::conj(eik);
    }
  }

  tb.dk_ab = 0.02;
  tb.n_ab = std::max(1, static_cast<int>(std::ceil((tb.k_max - tb.k_split) / tb.dk_ab)));
  tb.dk_ab = (tb.k_max - tb.k_split) / tb.n_ab;
  // channel tables transposed (window node, kappa index) so the kappa axis is
  // contiguous for interpolation
  tb.a1 = CMatrix(count, tb.n_ab + 1);
  tb.b1 = CMatrix(count, tb.n_ab + 1);
  tb.a2 = CMatrix(count, tb.n_ab + 1);
  tb.b2 = CMatrix(count, tb.n_ab + 1);
  for (int j = 0; j <= tb.n_ab; ++j) {
    const double kappa = tb.k_split + j * tb.dk_ab;
    const JostSolution d1 = solve_m(1, sd.potential, Complex(kappa, 0.0));
    const JostSolution d2 = solve_m(2, sd.potential, Complex(kappa, 0.0));
    const Complex inv2ik = 1.0 / Complex(0.0, 2.0 * kappa);
    const Complex T = 1.0 / (1.0 - inv2ik * d1.coef_plain);
    for (int w = 0; w < count; ++w) {
      const int node = tb.nodes[w];
      const double x = tb.xs[w];
      const Complex e2 = std::exp(Complex(0.0, 2.0 * kappa * x));
      tb.a1.at(w, j) = T * (d1.m[node] + inv2ik * d1.m_prime[node]);
      tb.b1.at(w, j) = -T * e2 * inv2ik * d1.m_prime[node];
      tb.a2.at(w, j) = T * (d2.m[node] - inv2ik * d2.m_prime[node]);
      tb.b2.at(w, j) = T * inv2ik * d2.m_prime[node] / e2;
    }
  }
  return tb;
}

// C += A * B with A (count x len), B (len x count), two-way threaded.
void accumulate_product(std::vector<Complex>& c, const CMatrix& a, const CMatrix& b) {
  const int count = a.rows, len = a.cols;
  auto body = [&](int r0, int r1) {
    for (int r = r0; r < r1; ++r) {
      Complex* crow = c.data() + static_cast<std::size_t>(r) * count;
      const Complex* arow = a.row(r);
      for (int d = 0; d < len; ++d) {
        const Complex w = arow[d];
        if (w == Complex(0.0, 0.0)) continue;
        const Complex* brow = b.row(d);
        for (int j = 0; j < count; ++j) crow[j] += w * brow[j];
      }
    }
  };
  const int mid = count / 2;
  std::thread th([&] { body(0, mid); });
  body(mid, count);
  th.join();
}

KernelSlice kernel_from_tables(double t, const KernelTables& tb) {
  if (!(t > 0.0)) throw config_error("kernel_continuous: t must be positive");
  if (t < kKernelTmin)
    throw numeric_error("kernel_continuous: t below the resolution floor t_min = 0.1");
  if (t > tb.t_max + 1e-12)
    throw config_error("kernel_continuous: tables built for a shorter horizon");
  const int count = static_cast<int>(tb.nodes.size());
  const double inv2pi = 1.0 / (2.0 * std::numbers::pi);

  // column list: (kappa, weight, branch, source row, interpolate?)
  struct Column {
    double k = 0.0;       // signed momentum
    double wt = 0.0;
    int region = 0;       // 0: low table row, 1: channel interpolation
    int row = 0;          // low-table row when region == 0
    double kappa = 0.0;   // |k|
  };
  std::vector<Column> cols;
  auto taper = [&](double kappa) { return std::exp(-std::pow(kappa / tb.k_max, 8.0)); };
  // Gregory end-corrected trapezoid weights: the oscillatory integrand does
  // not vanish at the region boundaries, so plain trapezoid ends would leave
  // an O(h^2 f') junction error.
  auto gregory = [](int d, int n) {
    static const double edge[4] = {251.0 / 720.0, 299.0 / 240.0, 211.0 / 240.0,
                                   739.0 / 720.0};
    if (n < 8) return (d == 0 || d == n) ? 0.5 : 1.0;
    if (d < 4) return edge[d];
    if (n - d < 4) return edge[n - d];
    return 1.0;
  };
  for (int sign = 0; sign < 2; ++sign) {
    const double sgn = sign == 0 ? 1.0 : -1.0;
    for (int d = 0; d <= tb.n_low; ++d) {
      const double kappa = d * tb.dk_low;
      const double w = tb.dk_low * taper(kappa) * gregory(d, tb.n_low);
      cols.push_back({sgn * kappa, w, 0, d, kappa});
    }
  }
  const double rate_geo = 4.0 * tb.x_obs + 1.0;
  double dk_ch = (std::numbers::pi / 4.0) / (2.0 * tb.k_max * t + rate_geo);
  const int n_ch = std::max(1, static_cast<int>(std::ceil((tb.k_max - tb.k_split) / dk_ch)));
  dk_ch = (tb.k_max - tb.k_split) / n_ch;
  for (int sign = 0; sign < 2; ++sign) {
    const double sgn = sign == 0 ? 1.0 : -1.0;
    for (int e = 0; e <= n_ch; ++e) {
      const double kappa = tb.k_split + e * dk_ch;
      const double w = dk_ch * taper(kappa) * gregory(e, n_ch);
      cols.push_back({sgn * kappa, w, 1, 0, kappa});
    }
  }

  std::vector<Complex> corr(static_cast<std::size_t>(count) * count, Complex(0.0, 0.0));
  const int chunk = 4096;
  CMatrix a, b;
  for (std::size_t c0 = 0; c0 < cols.size(); c0 += chunk) {
    const int len = static_cast<int>(std::min<std::size_t>(chunk, cols.size() - c0));
    if (a.cols != len) {
      a = CMatrix(count, len);
      b = CMatrix(len, count);
    }
    for (int d = 0; d < len; ++d) {
      const Column& col = cols[c0 + d];
      const double root_w = std::sqrt(col.wt);
      const Complex phase =
          root_w * std::exp(Complex(0.0, -col.k * col.k * t));
      for (int j = 0; j < count; ++j) {
        Complex u;
        if (col.region == 0) {
          u = col.k >= 0.0 ? tb.low_pos.at(col.row, j) : tb.low_neg.at(col.row, j);
        } else {
          const Complex eik = std::exp(Complex(0.0, col.kappa * tb.xs[j]));
          if (col.k >= 0.0) {
            const Complex al = quintic_interp(tb.a1.row(j), tb.n_ab + 1, tb.k_split,
                                              tb.dk_ab, col.kappa);
            const Complex be = quintic_interp(tb.b1.row(j), tb.n_ab + 1, tb.k_split,
                                              tb.dk_ab, col.kappa);
            u = al * eik + be / eik;
          } else {
            const Complex al = quintic_interp(tb.a2.row(j), tb.n_ab + 1, tb.k_split,
                                              tb.dk_ab, col.kappa);
            const Complex be = quintic_interp(tb.b2.row(j), tb.n_ab + 1, tb.k_split,
                                              tb.dk_ab, col.kappa);
            u = al / eik + be * eik;
          }
        }
        a.at(j, d) = root_w * std::conj(u);
        b.at(d, j) = phase * u;
      }
    }
    accumulate_product(corr, a, b);
  }

  // plane-wave part with the same weights, per relative offset
  const double hw = tb.xs[1] - tb.xs[0];
  std::vector<Complex> plane(2 * count - 1, Complex(0.0, 0.0));
  for (const Column& col : cols) {
    const Complex phase = std::exp(Complex(0.0, -col.k * col.k * t));
    const Complex step = std::exp(Complex(0.0, col.k * hw));
    Complex z = std::exp(Complex(0.0, col.k * (-(count - 1) * hw)));
    for (int q = 0; q < 2 * count - 1; ++q) {
      plane[q] += col.wt * phase * z;
      z *= step;
    }
  }

  KernelSlice slice;
  slice.t = t;
  slice.nodes = tb.nodes;
  slice.xs = tb.xs;
  slice.values.resize(corr.size());
  for (int ix = 0; ix < count; ++ix) {
    for (int iy = 0; iy < count; ++iy) {
      const Complex p = plane[iy - ix + count - 1];
      const Complex v =
          free_kernel(t, tb.xs[ix], tb.xs[iy]) +
          inv2pi * (corr[static_cast<std::size_t>(ix) * count + iy] - p);
      slice.values[static_cast<std::size_t>(ix) * count + iy] = v;
      slice.sup_abs = std::max(slice.sup_abs, std::abs(v));
    }
  }
  return slice;
}

}  // namespace

KernelSlice kernel_continuous(double t, const SpectralData& sd, const KernelWindow& win) {
  const KernelTables tb = make_kernel_tables(sd, win, t);
  return kernel_from_tables(t, tb);
}

DecayReport2 decay_scan(const SpectralData& sd, const std::vector<double>& times,
                        const KernelWindow& win) {
  DecayReport2 rep;
  double t_max = kKernelTmin;
  for (double t : times) t_max = std::max(t_max, t);
  const KernelTables tb = make_kernel_tables(sd, win, t_max);
  for (double t : times) {
    const KernelSlice slice = kernel_from_tables(t, tb);
    rep.times.push_back(t);
    rep.sup_abs.push_back(slice.sup_abs);
    rep.scaled_sup.push_back(std::sqrt(t) * slice.sup_abs);
  }
  const auto [lo, hi] = std::minmax_element(rep.scaled_sup.begin(), rep.scaled_sup.end());
  if (lo != rep.scaled_sup.end() && *lo > 0.0) rep.max_over_min = *hi / *lo;
  return rep;
}

double lp_ratio(double p, const ComplexField& phi, double t, const SpectralData& sd) {
  if (p < 1.0 || p > 2.0) throw config_error("lp_ratio: p must lie in [1,2]");
  if (!(t > 0.0)) throw config_error("lp_ratio: t must be positive");
  const double dx = sd.grid.dx;
  const double denom = lp_norm(phi, dx, p);
  if (!(denom > 0.0)) throw config_error("lp_ratio: phi must be nonzero");
  const ComplexField u = evolve_linear(phi, t, sd, EvolveMode::continuous_only);
  double num;
  if (p == 1.0) {
    num = sup_abs(u);
  } else {
    const double pp = p / (p - 1.0);
    num = lp_norm(u, dx, pp);
  }
  return std::pow(t, 1.0 / p - 0.5) * num / denom;
}

double spacetime_lq_integral(const ComplexField& phi, const SpectralData& sd, double T,
                             double q, double dt_sample, double* tail_estimate) {
  int steps = static_cast<int>(std::ceil(2.0 * T / dt_sample));
  if (steps % 2 != 0) ++steps;
  const double h = 2.0 * T / steps;
  double integral = 0.0;
  double f_half = 0.0, f_end = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double t = -T + i * h;
    const ComplexField u = evolve_linear(phi, t, sd, EvolveMode::full);
    const double f = std::pow(lp_norm(u, sd.grid.dx, q), q);
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    integral += w * f;
    if (i == 3 * steps / 4) f_half = f;
    if (i == steps) f_end = f;
  }
  integral *= h / 3.0;
  if (tail_estimate) {
    // power-law fit through the samples at T/2 and T
    if (f_half > 0.0 && f_end > 0.0 && f_end < f_half) {
      const double decay = std::log(f_half / f_end) / std::log(2.0);
      *tail_estimate = decay > 1.0 ? 2.0 * f_end * T / (decay - 1.0) : -1.0;
    } else {
      *tail_estimate = -1.0;
    }
  }
  return integral;
}

}  // namespace scatter1d
