#pragma once

#include "scatter1d/potential.hpp"

namespace scatter1d {

// D_k(x) = Int_0^x e^{2iky} dy = (e^{2ikx}-1)/(2ik) for k != 0, x at k = 0.
// Defined for Im k >= 0; |D_k(x)| <= |x|.
Complex dk_kernel(Complex k, double x);

// Solution of the Volterra equation for m_1 (direction 1, integrated inward
// from x_max) or m_2 (direction 2, inward from x_min) at a single momentum,
// Im k >= 0. The equation is solved by the contraction iteration swept
// blockwise from the asymptotic end; each block restarts the 1/l! envelope so
// intermediate iterates stay O(|m|).
struct JostSolution {
  ComplexField m;
  ComplexField m_prime;  // dm/dx from the integral representation
  int iterations = 0;    // largest per-block fixed-point count
  double residual = 0.0; // sup defect of the discrete Volterra equation
  Complex coef_exp{0.0, 0.0};    // dir 1: Int e^{+2iky} V m dy ; dir 2: Int e^{-2iky} V m dy
  Complex coef_plain{0.0, 0.0};  // Int V m dy
};

JostSolution solve_m(int direction, const PotentialSpec& v, Complex k);

// d m/dk at real k != 0 from the differentiated Volterra equation; diagnostic.
ComplexField solve_m_derivative(int direction, const PotentialSpec& v, double k,
                                double k_min = 1e-6);

struct ClassifyResult {
  Classification classification = Classification::generic;
  Complex wronskian{0.0, 0.0};
  double a = 0.0;                 // lim_{x -> -inf} f_1(x, 0), exceptional case
  ComplexField half_bound_state;  // f_1(., 0)
  double threshold = 0.0;
};

ClassifyResult classify(const PotentialSpec& v);

struct ScatteringCoefficients {
  std::vector<double> k;
  std::vector<Complex> T, R1, R2;
  std::vector<double> unitarity_defect;
  double max_j_disagreement = 0.0;  // |1/T| from m_1 vs m_2 routes
  double high_k_defect = 0.0;       // |T(k_max) - 1| * k_max
  Classification classification = Classification::generic;
  double a = 0.0;
  Complex alpha{0.0, 0.0};
  Complex wronskian{0.0, 0.0};

  // Value interpolated/selected at a grid momentum (exact node match).
  Complex t_at(double k) const;
};

// T, R_1, R_2 on a punctured momentum grid (k_min_puncture > 0 required).
ScatteringCoefficients scattering_coefficients(const PotentialSpec& v,
                                               const MomentumGrid& kgrid);

// T, R_1, R_2 at one momentum from converged direction-1/2 solutions.
struct CoefficientSample {
  Complex T{1.0, 0.0}, R1{0.0, 0.0}, R2{0.0, 0.0};
  double j_disagreement = 0.0;
  double unitarity_defect = 0.0;
};
CoefficientSample coefficient_sample(const JostSolution& d1, const JostSolution& d2,
                                     double k);

struct RelationReport {
  double defect_2_58 = 0.0;
  double defect_2_59 = 0.0;
  double unitarity = 0.0;
};

RelationReport verify_relations(const PotentialSpec& v, const ScatteringCoefficients& c);

}  // namespace scatter1d
