#include "scatter1d/potential.hpp"

#include <algorithm>
#include <cmath>

#include "scatter1d/oscillatory.hpp"

namespace scatter1d {

namespace {

double weight_pow(double x, double gamma) { return std::pow(1.0 + std::abs(x), gamma); }

// Exact antiderivative segments of Int (1+|x|)^gamma over [a,b], any sign.
double weight_integral(double a, double b, double gamma) {
  auto prim = [gamma](double t) {  // Int_0^t (1+u)^gamma du, t >= 0
    return (std::pow(1.0 + t, gamma + 1.0) - 1.0) / (gamma + 1.0);
  };
  auto one_sided = [&](double lo, double hi) {  // 0 <= lo <= hi
    return prim(hi) - prim(lo);
  };
  if (a >= 0.0) return one_sided(a, b);
  if (b <= 0.0) return one_sided(-b, -a);
  return one_sided(0.0, -a) + one_sided(0.0, b);
}

}  // namespace

double PotentialSpec::min_value() const {
  double m = 0.0;
  for (double u : values) m = std::min(m, u);
  return m;
}

double PotentialSpec::max_abs() const {
  double m = 0.0;
  for (double u : values) m = std::max(m, std::abs(u));
  return m;
}

PotentialSpec zero_potential() {
  PotentialSpec p;
  p.family = Family::zero;
  return p;
}

PotentialSpec square_well(double v0, double a) {
  if (!(v0 > 0.0) || !(a > 0.0)) throw config_error("square_well: need v0 > 0, a > 0");
  PotentialSpec p;
  p.family = Family::square_well;
  p.v0 = v0;
  p.a = a;
  return p;
}

PotentialSpec poschl_teller(double s) {
  if (!(s > 0.0)) throw config_error("poschl_teller: need s > 0");
  PotentialSpec p;
  p.family = Family::poschl_teller;
  p.s = s;
  return p;
}

PotentialSpec gaussian_potential(double amp, double w) {
  if (!(w > 0.0)) throw config_error("gaussian: need w > 0");
  PotentialSpec p;
  p.family = Family::gaussian;
  p.amp = amp;
  p.w = w;
  return p;
}

PotentialSpec samples_potential(std::vector<double> x, std::vector<double> v) {
  if (x.size() != v.size() || x.size() < 2) throw config_error("samples: bad arrays");
  for (double u : v)
    if (!std::isfinite(u)) throw config_error("samples: non-finite value");
  for (double u : x)
    if (!std::isfinite(u)) throw config_error("samples: non-finite abscissa");
  PotentialSpec p;
  p.family = Family::samples;
  p.file_x = std::move(x);
  p.file_v = std::move(v);
  p.unverified_decay = true;
  return p;
}

SpatialGrid make_aligned_grid(double a, double x_max_target, int n) {
  if (!(a > 0.0)) throw config_error("make_aligned_grid: a must be positive");
  int j = static_cast<int>(std::lround(((n - 1) * a / x_max_target - 1.0) / 2.0));
  if (j < 0) j = 0;
  if (2 * j + 1 >= n - 1) throw config_error("make_aligned_grid: box too small for n");
  const double x_max = a * (n - 1) / (2.0 * j + 1.0);
  return SpatialGrid::symmetric(x_max, n);
}

PotentialSpec build_potential(PotentialSpec spec, const SpatialGrid& g) {
  spec.grid = g;
  spec.values.assign(g.n, 0.0);
  spec.breakpoints.clear();
  spec.segment_values.clear();
  spec.piecewise_constant = false;

  switch (spec.family) {
    case Family::zero:
      break;
    case Family::poschl_teller: {
      const double c = spec.s * (spec.s + 1.0);
      for (int i = 0; i < g.n; ++i) {
        const double sech = 1.0 / std::cosh(g.x(i));
        spec.values[i] = -c * sech * sech;
      }
      break;
    }
    case Family::gaussian:
      for (int i = 0; i < g.n; ++i) {
        const double u = g.x(i) / spec.w;
        spec.values[i] = spec.amp * std::exp(-u * u);
      }
      break;
    case Family::square_well: {
      const int im = g.nearest_node(-spec.a);
      const int ip = g.nearest_node(spec.a);
      if (std::abs(g.x(im) + spec.a) > 1e-9 || std::abs(g.x(ip) - spec.a) > 1e-9)
        throw config_error(
            "square_well: grid nodes must hit +-a exactly; use make_aligned_grid");
      for (int i = im + 1; i < ip; ++i) spec.values[i] = -spec.v0;
      spec.values[im] = -0.5 * spec.v0;  // display midpoint; integrators use segments
      spec.values[ip] = -0.5 * spec.v0;
      spec.breakpoints = {im, ip};
      spec.segment_values = {0.0, -spec.v0, 0.0};
      spec.piecewise_constant = true;
      break;
    }
    case Family::samples: {
      for (double u : spec.file_v)
        if (!std::isfinite(u)) throw config_error("samples: non-finite value");
      for (double u : spec.file_x)
        if (!std::isfinite(u)) throw config_error("samples: non-finite abscissa");
      bool node_exact = spec.file_x.size() == static_cast<std::size_t>(g.n);
      if (node_exact) {
        for (int i = 0; i < g.n; ++i)
          if (std::abs(spec.file_x[i] - g.x(i)) > 1e-9) {
            node_exact = false;
            break;
          }
      }
      if (node_exact) {
        spec.values.assign(spec.file_v.begin(), spec.file_v.end());
      } else {
        // linear interpolation, zero outside the provided range
        for (int i = 0; i < g.n; ++i) {
          const double x = g.x(i);
          auto it = std::lower_bound(spec.file_x.begin(), spec.file_x.end(), x);
          if (it == spec.file_x.begin() || it == spec.file_x.end()) continue;
          const std::size_t hi = it - spec.file_x.begin();
          const double t =
              (x - spec.file_x[hi - 1]) / (spec.file_x[hi] - spec.file_x[hi - 1]);
          spec.values[i] = (1.0 - t) * spec.file_v[hi - 1] + t * spec.file_v[hi];
        }
      }
      break;
    }
  }

  const double scale = spec.max_abs();
  spec.boundary_ok =
      scale == 0.0 ||
      (std::abs(spec.values.front()) < 1e-14 * scale && std::abs(spec.values.back()) < 1e-14 * scale);
  spec.sampled = true;
  return spec;
}

namespace {

// 6th-order integral of node samples f over [x_a, x_b] (whole intervals):
// quintic stencils with exact moments, one-sided near the segment ends.
double segment_integral6(const std::vector<double>& f, int a, int b, double h) {
  if (b <= a) return 0.0;
  double total = 0.0;
  for (int i = a; i < b; ++i) {
    int ws = i - 2, we = i + 3;
    if (ws < a) {
      we += a - ws;
      ws = a;
    }
    if (we > b) {
      ws -= we - b;
      we = b;
    }
    if (ws < a) ws = a;
    const int len = we - ws + 1;
    const osc::Stencil st = osc::make_stencil(ws - i, len);
    const osc::IntervalWeights w = osc::weights_plain(st, h);
    for (int j = 0; j < len; ++j) total += w.w[j].real() * f[ws + j];
  }
  return total;
}

// |V|(1+|x|)^gamma over [x(i0), x(i1)]: the weight's crease at x = 0 sits
// mid-interval on symmetric even-n grids, so each half-line is integrated
// with its own smooth one-sided integrand.
double smooth_weighted_integral(const PotentialSpec& v, double gamma, int i0, int i1) {
  const SpatialGrid& g = v.grid;
  if (i1 <= i0) return 0.0;
  int mid = -1;
  for (int i = i0; i < i1; ++i) {
    if (g.x(i) < 0.0 && g.x(i + 1) > 0.0) {
      mid = i;
      break;
    }
  }
  std::vector<double> f(g.n, 0.0);
  auto fill = [&](int a, int b) {
    for (int i = a; i <= b; ++i)
      f[i] = std::abs(v.values[i]) * weight_pow(g.x(i), gamma);
  };
  if (mid < 0) {
    fill(i0, i1);
    return segment_integral6(f, i0, i1, g.dx);
  }
  double total = 0.0;
  fill(i0, i1);
  total += segment_integral6(f, i0, mid, g.dx);
  total += segment_integral6(f, mid + 1, i1, g.dx);

  // partial pieces [x(mid), 0] and [0, x(mid+1)]: each half-line integrand
  // continues smoothly a little past 0, so centered stencils interpolate
  const double s = -g.x(mid) / g.dx;  // position of 0 inside the interval
  auto one_sided = [&](double sign, double u_lo, double u_hi) {
    const int ws = mid - 2;
    if (ws < i0 || ws + 5 > i1) return 0.0;
    double vals[6];
    for (int j = 0; j < 6; ++j) {
      const double x = g.x(ws + j);
      vals[j] = std::abs(v.values[ws + j]) * std::pow(1.0 + sign * x, gamma);
    }
    const osc::Stencil st = osc::make_stencil(-2, 6);
    double acc = 0.0;
    for (int j = 0; j < 6; ++j) {
      double m = 0.0, plo = u_lo, phi = u_hi;
      for (int r = 0; r < 6; ++r) {
        m += st.c[j][r] * (phi - plo) / (r + 1);
        plo *= u_lo;
        phi *= u_hi;
      }
      acc += m * vals[j];
    }
    return g.dx * acc;
  };
  total += one_sided(-1.0, 0.0, s);  // x < 0: weight (1 - x)^gamma
  total += one_sided(+1.0, s, 1.0);  // x > 0: weight (1 + x)^gamma
  return total;
}

}  // namespace

double weighted_norm_window(const PotentialSpec& v, double gamma, double x_cut) {
  if (!v.sampled) throw config_error("weighted_norm: potential not sampled");
  if (gamma < 0.0) throw config_error("weighted_norm: gamma must be >= 0");
  const SpatialGrid& g = v.grid;
  if (v.piecewise_constant) {
    double total = 0.0;
    std::vector<double> bounds = {g.x_min};
    for (int b : v.breakpoints) bounds.push_back(g.x(b));
    bounds.push_back(g.x_max);
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
      const double lo = std::max(bounds[s], -x_cut);
      const double hi = std::min(bounds[s + 1], x_cut);
      if (hi <= lo) continue;
      total += std::abs(v.segment_values[s]) * weight_integral(lo, hi, gamma);
    }
    return total;
  }
  int i0 = 0, i1 = g.n - 1;
  while (i0 < i1 && g.x(i0) < -x_cut) ++i0;
  while (i1 > i0 && g.x(i1) > x_cut) --i1;
  return smooth_weighted_integral(v, gamma, i0, i1);
}

double weighted_norm(const PotentialSpec& v, double gamma) {
  return weighted_norm_window(v, gamma, v.grid.x_max + 1.0);
}

HypothesisResult hypothesis_check(const PotentialSpec& v, Classification c) {
  HypothesisResult res;
  res.required_gamma = (c == Classification::generic) ? 1.5 + 0.25 : 2.5 + 0.25;
  auto finite_at = [&](double gamma) {
    const double full = weighted_norm(v, gamma);
    if (full < 1e-14) return true;
    const double inner = weighted_norm_window(v, gamma, 0.5 * v.grid.x_max);
    return (full - inner) < 1e-3 * full;
  };
  for (double gamma = 0.0; gamma <= 4.001; gamma += 0.25) {
    res.report.norms.emplace_back(gamma, weighted_norm(v, gamma));
    if (finite_at(gamma)) res.report.gamma_star = gamma;
  }
  res.pass = finite_at(res.required_gamma);
  return res;
}

}  // namespace scatter1d
