#include "scatter1d/jost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scatter1d/oscillatory.hpp"

namespace scatter1d {

Complex dk_kernel(Complex k, double x) {
  if (k.imag() < -1e-12) throw config_error("dk_kernel: requires Im k >= 0");
  const Complex q = Complex(0.0, 2.0) * k * x;  // 2ikx
  if (std::abs(q) < 1e-6)
    return x * (1.0 + q * (0.5 + q * (1.0 / 6.0 + q * (1.0 / 24.0))));
  return (std::exp(q) - 1.0) / (Complex(0.0, 2.0) * k);
}

namespace {

using osc::IntervalWeights;
using osc::Stencil;

struct WeightCache {
  // rel in [-4, 0] -> index rel+4; len in [2, 6]
  IntervalWeights osc_w[5][7], plain_w[5][7], ramp_w[5][7], ramp_osc_w[5][7];
  bool have[5][7] = {};
  Complex theta;
  double h = 0.0;

  void prime(int rel, int len) {
    if (have[rel + 4][len]) return;
    const Stencil st = osc::make_stencil(rel, len);
    osc_w[rel + 4][len] = osc::weights_osc(st, theta, h);
    plain_w[rel + 4][len] = osc::weights_plain(st, h);
    ramp_w[rel + 4][len] = osc::weights_ramp(st, h);
    ramp_osc_w[rel + 4][len] = osc::weights_ramp_osc(st, theta, h);
    have[rel + 4][len] = true;
  }
};

struct Sweep {
  const PotentialSpec* v = nullptr;
  Complex k;
  bool kzero = false;
  int n = 0;
  double h = 0.0;
  Complex P;       // exp(2ikh)
  Complex inv2ik;  // 1/(2ik)
  std::vector<int> segb;     // segment boundary nodes, ascending, incl. 0 and n-1
  std::vector<double> segv;  // per-segment constant (pc mode)
  std::vector<int> iseg;     // per-interval segment index
  bool pc = false;
  WeightCache wc;
  int block_w = 0;

  void init(const PotentialSpec& pot, Complex kk) {
    v = &pot;
    k = kk;
    kzero = (kk == Complex(0.0, 0.0));
    n = pot.grid.n;
    h = pot.grid.dx;
    P = std::exp(Complex(0.0, 2.0) * k * h);
    if (!kzero) inv2ik = 1.0 / (Complex(0.0, 2.0) * k);
    wc.theta = 2.0 * k * h;  // e^{i theta u} = e^{2ik(y - x_i)}
    wc.h = h;
    pc = pot.piecewise_constant;
    segb = {0};
    for (int b : pot.breakpoints)
      if (b > 0 && b < n - 1) segb.push_back(b);
    segb.push_back(n - 1);
    segv = pc ? pot.segment_values : std::vector<double>();
    iseg.assign(n - 1, 0);
    {
      int s = 0;
      for (int i = 0; i < n - 1; ++i) {
        while (s + 1 < static_cast<int>(segb.size()) - 1 && i >= segb[s + 1]) ++s;
        iseg[i] = s;
      }
    }
    block_w = std::max(8, static_cast<int>(std::ceil(0.5 / h)));
  }

  // interval [i, i+1]; nodes restricted to [max(block_lo, seg lo), seg hi]
  void stencil_for(int i, int block_lo, int& rel, int& len) const {
    const int s = iseg[i];
    const int lo_lim = std::max(block_lo, segb[s]);
    const int hi_lim = segb[s + 1];
    int ws = i - 2, we = i + 3;
    if (ws < lo_lim) {
      we += lo_lim - ws;
      ws = lo_lim;
    }
    if (we > hi_lim) {
      ws -= we - hi_lim;
      we = hi_lim;
    }
    if (ws < lo_lim) ws = lo_lim;
    if (ws > i) ws = i;
    len = we - ws + 1;
    if (len > 6) {
      len = 6;
      we = ws + 5;
    }
    rel = ws - i;
  }

  // I_A = Int_i e^{2ik(y-x_i)} V m dy, I_B = Int_i V m dy, I_R = Int_i (y-x_i) V m dy
  void interval(const std::vector<Complex>& m, int i, int block_lo, Complex& ia,
                Complex& ib, Complex& ir) {
    int rel, len;
    stencil_for(i, block_lo, rel, len);
    wc.prime(rel, len);
    const IntervalWeights& wa = wc.osc_w[rel + 4][len];
    const IntervalWeights& wb = wc.plain_w[rel + 4][len];
    const IntervalWeights& wr = wc.ramp_w[rel + 4][len];
    ia = ib = ir = Complex(0.0, 0.0);
    if (pc) {
      const double vs = segv[iseg[i]];
      if (vs == 0.0) return;
      for (int j = 0; j < len; ++j) {
        const Complex mm = m[i + rel + j];
        ia += wa.w[j] * mm;
        ib += wb.w[j] * mm;
        if (kzero) ir += wr.w[j] * mm;
      }
      ia *= vs;
      ib *= vs;
      ir *= vs;
    } else {
      const std::vector<double>& vv = v->values;
      for (int j = 0; j < len; ++j) {
        const Complex ff = vv[i + rel + j] * m[i + rel + j];
        ia += wa.w[j] * ff;
        ib += wb.w[j] * ff;
        if (kzero) ir += wr.w[j] * ff;
      }
    }
  }
};

JostSolution solve_direction1(const PotentialSpec& pot, Complex k) {
  Sweep sw;
  sw.init(pot, k);
  const int n = sw.n;
  const double h = sw.h;

  std::vector<Complex> m(n, Complex(1.0, 0.0)), mnew(n);
  std::vector<Complex> SA(n, Complex(0.0, 0.0)), SB(n, Complex(0.0, 0.0)),
      SL(n, Complex(0.0, 0.0));
  std::vector<Complex> IA(n - 1), IB(n - 1), IR(n - 1);

  int max_its = 0;
  double worst_resid = 0.0;
  int hi = n - 1;
  while (hi > 0) {
    const int lo = std::max(0, hi - sw.block_w);
    double diff = 0.0;
    double mscale = 1.0;
    int it = 0;
    for (; it < 200; ++it) {
      for (int i = hi - 1; i >= lo; --i) sw.interval(m, i, lo, IA[i], IB[i], IR[i]);
      diff = 0.0;
      for (int i = hi - 1; i >= lo; --i) {
        SA[i] = IA[i] + sw.P * SA[i + 1];
        SB[i] = IB[i] + SB[i + 1];
        Complex d;
        if (sw.kzero) {
          SL[i] = IR[i] + SL[i + 1] + h * SB[i + 1];
          d = SL[i];
        } else {
          d = sw.inv2ik * (SA[i] - SB[i]);
        }
        mnew[i] = 1.0 + d;
        diff = std::max(diff, std::abs(mnew[i] - m[i]));
      }
      for (int i = lo; i < hi; ++i) {
        m[i] = mnew[i];
        mscale = std::max(mscale, std::abs(m[i]));
      }
      if (diff < std::max(1e-12, 1e-15 * mscale)) break;
    }
    if (it >= 200)
      throw numeric_error("solve_m: Volterra iteration did not converge", diff);
    max_its = std::max(max_its, it + 1);
    worst_resid = std::max(worst_resid, diff);
    hi = lo;
  }

  JostSolution sol;
  sol.m = ComplexField(static_cast<std::size_t>(n));
  sol.m_prime = ComplexField(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    sol.m[i] = m[i];
    sol.m_prime[i] = sw.kzero ? -SB[i] : -SA[i];
  }
  sol.iterations = max_its;
  sol.residual = worst_resid;
  sol.coef_plain = SB[0];
  if (std::abs(k.imag()) < 1e-12) {
    const double kk = k.real();
    sol.coef_exp = std::exp(Complex(0.0, 2.0 * kk * pot.grid.x_min)) * SA[0];
  }
  if (sw.kzero) sol.coef_exp = SB[0];
  return sol;
}

PotentialSpec reflect_potential(const PotentialSpec& pot) {
  PotentialSpec r = pot;
  std::reverse(r.values.begin(), r.values.end());
  const int n = pot.grid.n;
  r.breakpoints.clear();
  for (auto it = pot.breakpoints.rbegin(); it != pot.breakpoints.rend(); ++it)
    r.breakpoints.push_back(n - 1 - *it);
  r.segment_values.assign(pot.segment_values.rbegin(), pot.segment_values.rend());
  return r;
}

}  // namespace

JostSolution solve_m(int direction, const PotentialSpec& v, Complex k) {
  if (!v.sampled) throw config_error("solve_m: potential not sampled");
  if (k.imag() < -1e-12) throw config_error("solve_m: requires Im k >= 0");
  if (direction == 1) return solve_direction1(v, k);
  if (direction != 2) throw config_error("solve_m: direction must be 1 or 2");
  const PotentialSpec vr = reflect_potential(v);
  JostSolution s = solve_direction1(vr, k);
  std::reverse(s.m.v.begin(), s.m.v.end());
  std::reverse(s.m_prime.v.begin(), s.m_prime.v.end());
  for (auto& z : s.m_prime.v) z = -z;
  return s;
}

ComplexField solve_m_derivative(int direction, const PotentialSpec& v, double k,
                                double k_min) {
  if (std::abs(k) <= k_min)
    throw config_error("solve_m_derivative: |k| must exceed k_min");
  const PotentialSpec* pot = &v;
  PotentialSpec vr;
  if (direction == 2) {
    vr = reflect_potential(v);
    pot = &vr;
  } else if (direction != 1) {
    throw config_error("solve_m_derivative: direction must be 1 or 2");
  }
  const Complex kk(k, 0.0);
  JostSolution base = solve_direction1(*pot, kk);

  Sweep sw;
  sw.init(*pot, kk);
  const int n = sw.n;
  const double h = sw.h;

  // Source: (i/k) * Int (y-x) e^{2ik(y-x)} V m dy - (m-1)/k
  std::vector<Complex> SC(n, Complex(0.0, 0.0)), SAm(n, Complex(0.0, 0.0));
  {
    std::vector<Complex> mvec(base.m.v);
    for (int i = n - 2; i >= 0; --i) {
      int rel, len;
      sw.stencil_for(i, 0, rel, len);
      sw.wc.prime(rel, len);
      const IntervalWeights& wa = sw.wc.osc_w[rel + 4][len];
      const IntervalWeights& wro = sw.wc.ramp_osc_w[rel + 4][len];
      Complex ia(0.0, 0.0), ic(0.0, 0.0);
      if (sw.pc) {
        const double vs = sw.segv[sw.iseg[i]];
        if (vs != 0.0) {
          for (int j = 0; j < len; ++j) {
            const Complex mm = mvec[i + rel + j];
            ia += wa.w[j] * mm;
            ic += wro.w[j] * mm;
          }
          ia *= vs;
          ic *= vs;
        }
      } else {
        for (int j = 0; j < len; ++j) {
          const Complex ff = pot->values[i + rel + j] * mvec[i + rel + j];
          ia += wa.w[j] * ff;
          ic += wro.w[j] * ff;
        }
      }
      SC[i] = ic + sw.P * (SC[i + 1] + h * SAm[i + 1]);
      SAm[i] = ia + sw.P * SAm[i + 1];
    }
  }
  std::vector<Complex> src(n);
  for (int i = 0; i < n; ++i)
    src[i] = SC[i] / k - (base.m[i] - 1.0) / k;

  // Volterra solve for mdot with the same kernel and the source above.
  std::vector<Complex> md(n, Complex(0.0, 0.0)), mdnew(n);
  std::vector<Complex> SA(n, Complex(0.0, 0.0)), SB(n, Complex(0.0, 0.0));
  std::vector<Complex> IA(n - 1), IB(n - 1), IR(n - 1);
  int hi = n - 1;
  md[n - 1] = src[n - 1];
  while (hi > 0) {
    const int lo = std::max(0, hi - sw.block_w);
    int it = 0;
    for (; it < 200; ++it) {
      for (int i = hi - 1; i >= lo; --i) sw.interval(md, i, lo, IA[i], IB[i], IR[i]);
      double diff = 0.0;
      for (int i = hi - 1; i >= lo; --i) {
        SA[i] = IA[i] + sw.P * SA[i + 1];
        SB[i] = IB[i] + SB[i + 1];
        mdnew[i] = src[i] + sw.inv2ik * (SA[i] - SB[i]);
        diff = std::max(diff, std::abs(mdnew[i] - md[i]));
      }
      for (int i = lo; i < hi; ++i) md[i] = mdnew[i];
      if (diff < 1e-12) break;
    }
    if (it >= 200) throw numeric_error("solve_m_derivative: iteration did not converge");
    hi = lo;
  }
  ComplexField out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = md[i];
  if (direction == 2) std::reverse(out.v.begin(), out.v.end());
  return out;
}

ClassifyResult classify(const PotentialSpec& v) {
  if (!v.sampled) throw config_error("classify: potential not sampled");
  const JostSolution s1 = solve_m(1, v, Complex(0.0, 0.0));
  const JostSolution s2 = solve_m(2, v, Complex(0.0, 0.0));
  const int x0 = v.grid.n / 2;  // first node right of the origin
  ClassifyResult res;
  res.wronskian = s1.m_prime[x0] * s2.m[x0] - s1.m[x0] * s2.m_prime[x0];
  res.threshold = 1e-6 * (1.0 + weighted_norm(v, 1.0));
  res.classification = std::abs(res.wronskian) < res.threshold
                           ? Classification::exceptional
                           : Classification::generic;
  res.a = s1.m[0].real();
  res.half_bound_state = s1.m;
  return res;
}

CoefficientSample coefficient_sample(const JostSolution& d1, const JostSolution& d2,
                                     double k) {
  CoefficientSample s;
  const Complex inv2ik = 1.0 / Complex(0.0, 2.0 * k);
  const Complex invT1 = 1.0 - inv2ik * d1.coef_plain;
  const Complex invT2 = 1.0 - inv2ik * d2.coef_plain;
  s.j_disagreement = std::abs(invT1 - invT2);
  if (std::abs(invT1) < 1e-12)
    throw numeric_error("coefficient_sample: degenerate 1/T", std::abs(invT1));
  s.T = 1.0 / invT1;
  s.R2 = inv2ik * d1.coef_exp * s.T;
  s.R1 = inv2ik * d2.coef_exp * s.T;
  const double u1 = std::abs(std::norm(s.T) + std::norm(s.R1) - 1.0);
  const double u2 = std::abs(std::norm(s.T) + std::norm(s.R2) - 1.0);
  s.unitarity_defect = std::max(u1, u2);
  return s;
}

ScatteringCoefficients scattering_coefficients(const PotentialSpec& v,
                                               const MomentumGrid& kgrid) {
  if (!(kgrid.k_min_puncture > 0.0))
    throw config_error("scattering_coefficients: momentum grid must be punctured at 0");
  ScatteringCoefficients out;
  const ClassifyResult cls = classify(v);
  out.classification = cls.classification;
  out.wronskian = cls.wronskian;
  out.a = cls.a;

  // alpha diagnostic: finite difference of T at k = +-0.05
  auto t_of = [&](double kk) {
    const JostSolution d1 = solve_m(1, v, Complex(kk, 0.0));
    const Complex inv2ik = 1.0 / Complex(0.0, 2.0 * kk);
    const Complex invT = 1.0 - inv2ik * d1.coef_plain;
    return 1.0 / invT;
  };
  if (cls.classification == Classification::generic) {
    const Complex t = t_of(0.05);
    out.alpha = Complex(0.0, 1.0) * t.imag() / 0.05;
  }

  out.k = kgrid.k;
  const int nk = kgrid.size();
  out.T.assign(nk, Complex(0.0, 0.0));
  out.R1.assign(nk, Complex(0.0, 0.0));
  out.R2.assign(nk, Complex(0.0, 0.0));
  out.unitarity_defect.assign(nk, 0.0);
  double kmax = 0.0;
  Complex t_kmax(1.0, 0.0);
  for (int j = 0; j < nk; ++j) {
    const double kk = kgrid.k[j];
    if (kk <= 0.0) continue;
    const JostSolution d1 = solve_m(1, v, Complex(kk, 0.0));
    const JostSolution d2 = solve_m(2, v, Complex(kk, 0.0));
    const CoefficientSample s = coefficient_sample(d1, d2, kk);
    out.max_j_disagreement = std::max(out.max_j_disagreement, s.j_disagreement);
    out.T[j] = s.T;
    out.R1[j] = s.R1;
    out.R2[j] = s.R2;
    out.unitarity_defect[j] = s.unitarity_defect;
    if (kk > kmax) {
      kmax = kk;
      t_kmax = s.T;
    }
  }
  // conjugation symmetry fills k < 0
  for (int j = 0; j < nk; ++j) {
    const double kk = kgrid.k[j];
    if (kk >= 0.0) continue;
    // locate the mirror node
    const int jm = nk - 1 - j;
    out.T[j] = std::conj(out.T[jm]);
    out.R1[j] = std::conj(out.R1[jm]);
    out.R2[j] = std::conj(out.R2[jm]);
    out.unitarity_defect[j] = out.unitarity_defect[jm];
  }
  out.high_k_defect = std::abs(t_kmax - 1.0) * kmax;
  return out;
}

Complex ScatteringCoefficients::t_at(double kk) const {
  for (std::size_t j = 0; j < k.size(); ++j)
    if (std::abs(k[j] - kk) < 1e-9) return T[j];
  throw config_error("ScatteringCoefficients::t_at: momentum not on the grid");
}

RelationReport verify_relations(const PotentialSpec& v, const ScatteringCoefficients& c) {
  RelationReport rep;
  const int n = v.grid.n;
  for (std::size_t j = 0; j < c.k.size(); ++j) {
    const double kk = c.k[j];
    rep.unitarity = std::max(rep.unitarity, c.unitarity_defect[j]);
    if (kk <= 0.0) continue;
    const JostSolution d1 = solve_m(1, v, Complex(kk, 0.0));
    const JostSolution d2 = solve_m(2, v, Complex(kk, 0.0));
    for (int i = 0; i < n; i += 8) {
      const double x = v.grid.x(i);
      const Complex e2 = std::exp(Complex(0.0, 2.0 * kk * x));
      const Complex lhs58 = c.T[j] * d2.m[i];
      const Complex rhs58 = c.R1[j] * e2 * d1.m[i] + std::conj(d1.m[i]);
      rep.defect_2_58 = std::max(rep.defect_2_58, std::abs(lhs58 - rhs58));
      const Complex lhs59 = c.T[j] * d1.m[i];
      const Complex rhs59 = c.R2[j] / e2 * d2.m[i] + std::conj(d2.m[i]);
      rep.defect_2_59 = std::max(rep.defect_2_59, std::abs(lhs59 - rhs59));
    }
  }
  return rep;
}

}  // namespace scatter1d
