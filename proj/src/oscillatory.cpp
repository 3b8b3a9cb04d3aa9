#include "scatter1d/oscillatory.hpp"

#include <cmath>

namespace scatter1d::osc {

void moments(Complex theta, Complex* out, int count) {
  const double mag = std::abs(theta);
  if (mag < 2.0) {
    // m_r = sum_s (i theta)^s / (s! (r+s+1)); 30 terms reach ~1e-18 at |theta|=2
    const Complex it = Complex(0.0, 1.0) * theta;
    for (int r = 0; r < count; ++r) {
      Complex term(1.0, 0.0);
      Complex sum = term / static_cast<double>(r + 1);
      for (int s = 1; s <= 30; ++s) {
        term *= it / static_cast<double>(s);
        sum += term / static_cast<double>(r + s + 1);
      }
      out[r] = sum;
    }
    return;
  }
  const Complex it = Complex(0.0, 1.0) * theta;
  const Complex e = std::exp(it);
  out[0] = (e - 1.0) / it;
  for (int r = 1; r < count; ++r) out[r] = (e - static_cast<double>(r) * out[r - 1]) / it;
}

Stencil make_stencil(int rel, int len) {
  Stencil st;
  st.rel = rel;
  st.len = len;
  for (int j = 0; j < len; ++j) {
    // cardinal polynomial through nodes o_l = rel + l, expanded in powers of u
    double poly[6] = {1.0, 0, 0, 0, 0, 0};
    int deg = 0;
    double denom = 1.0;
    for (int l = 0; l < len; ++l) {
      if (l == j) continue;
      const double o = rel + l;
      denom *= (rel + j) - o;
      // poly *= (u - o)
      for (int r = deg + 1; r >= 1; --r) poly[r] = poly[r - 1] - o * poly[r];
      poly[0] = -o * poly[0];
      ++deg;
    }
    for (int r = 0; r <= deg; ++r) st.c[j][r] = poly[r] / denom;
  }
  return st;
}

namespace {

IntervalWeights combine(const Stencil& st, const Complex* mu, double scale) {
  IntervalWeights w;
  w.rel = st.rel;
  w.len = st.len;
  for (int j = 0; j < st.len; ++j) {
    Complex acc(0.0, 0.0);
    for (int r = 0; r < st.len; ++r) acc += st.c[j][r] * mu[r];
    w.w[j] = scale * acc;
  }
  return w;
}

}  // namespace

IntervalWeights weights_osc(const Stencil& st, Complex theta, double h) {
  Complex mu[6];
  moments(theta, mu, st.len);
  return combine(st, mu, h);
}

IntervalWeights weights_plain(const Stencil& st, double h) {
  Complex mu[6];
  for (int r = 0; r < st.len; ++r) mu[r] = 1.0 / static_cast<double>(r + 1);
  return combine(st, mu, h);
}

IntervalWeights weights_ramp(const Stencil& st, double h) {
  Complex mu[6];
  for (int r = 0; r < st.len; ++r) mu[r] = 1.0 / static_cast<double>(r + 2);
  return combine(st, mu, h * h);
}

IntervalWeights weights_ramp_osc(const Stencil& st, Complex theta, double h) {
  Complex mu[7];
  moments(theta, mu, st.len + 1);
  IntervalWeights w;
  w.rel = st.rel;
  w.len = st.len;
  for (int j = 0; j < st.len; ++j) {
    Complex acc(0.0, 0.0);
    for (int r = 0; r < st.len; ++r) acc += st.c[j][r] * mu[r + 1];
    w.w[j] = h * h * acc;
  }
  return w;
}

}  // namespace scatter1d::osc
