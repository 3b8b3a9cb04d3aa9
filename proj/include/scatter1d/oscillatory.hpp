#pragma once

#include "scatter1d/grid.hpp"

namespace scatter1d::osc {

// Filon-type interval rules: on [x_i, x_i + h] with u = (y - x_i)/h, the slow
// factor is interpolated through up to six nodes at integer offsets and the
// oscillation e^{i theta u} (theta = 2 k h, Im theta >= 0) is integrated
// exactly through its moments. Weights depend only on (stencil, theta), so a
// sweep at fixed k prices each stencil shape once.

// m_r(theta) = Int_0^1 u^r e^{i theta u} du, r = 0..count-1.
void moments(Complex theta, Complex* out, int count);

struct Stencil {
  int rel = 0;  // offset of first stencil node relative to the interval-left node
  int len = 0;  // number of nodes (2..6)
  double c[6][6] = {};  // c[j][r]: u^r coefficient of the j-th cardinal polynomial
};

Stencil make_stencil(int rel, int len);

struct IntervalWeights {
  int rel = 0;
  int len = 0;
  Complex w[6] = {};
};

// Int_{0}^{h} f(y) e^{i theta y/h} dy  ~  sum_j w[j] f(node_j)
IntervalWeights weights_osc(const Stencil& st, Complex theta, double h);
// Int f(y) dy
IntervalWeights weights_plain(const Stencil& st, double h);
// Int y f(y) dy (y measured from the interval-left node)
IntervalWeights weights_ramp(const Stencil& st, double h);
// Int y e^{i theta y/h} f(y) dy
IntervalWeights weights_ramp_osc(const Stencil& st, Complex theta, double h);

}  // namespace scatter1d::osc
