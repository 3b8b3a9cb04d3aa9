#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scatter1d/grid.hpp"

namespace scatter1d {

enum class Classification { generic, exceptional };

enum class Family { zero, square_well, poschl_teller, gaussian, samples };

// Analytic potential family plus node samples on a SpatialGrid.
//   square_well(v0, a):   V = -v0 on [-a, a], 0 outside (v0 > 0, a > 0)
//   poschl_teller(s):     V = -s(s+1) sech^2(x)
//   gaussian(amp, w):     V = amp * exp(-(x/w)^2)
//   samples(file):        two-column CSV (x, V), zero outside the file range
// Square wells carry a piecewise-constant description (breakpoints at the
// +-a nodes); integrators use it so the jumps never smear.
struct PotentialSpec {
  Family family = Family::zero;
  double v0 = 0.0;
  double a = 0.0;
  double s = 0.0;
  double amp = 0.0;
  double w = 1.0;
  std::string sample_file;
  std::vector<double> file_x, file_v;  // raw samples for the samples family

  SpatialGrid grid;
  std::vector<double> values;
  bool sampled = false;
  bool boundary_ok = true;
  bool unverified_decay = false;

  // piecewise-constant structure: interior breakpoint node indices (sorted)
  // and the constant value on each of the breakpoints.size()+1 segments
  std::vector<int> breakpoints;
  std::vector<double> segment_values;
  bool piecewise_constant = false;

  double min_value() const;
  double max_abs() const;
};

PotentialSpec zero_potential();
PotentialSpec square_well(double v0, double a);
PotentialSpec poschl_teller(double s);
PotentialSpec gaussian_potential(double amp, double w);
PotentialSpec samples_potential(std::vector<double> x, std::vector<double> v);

// Symmetric grid whose nodes hit +-a exactly (required by square wells):
// dx = a/(j + 1/2) with j chosen so x_max lands near x_max_target.
SpatialGrid make_aligned_grid(double a, double x_max_target, int n);

PotentialSpec build_potential(PotentialSpec spec, const SpatialGrid& g);

// ||V||_{L^1_gamma} = Int |V(x)| (1+|x|)^gamma dx, kink-aware: the weight's
// |x| crease and square-well jumps are integrated piecewise exactly.
double weighted_norm(const PotentialSpec& v, double gamma);
// Same integral restricted to |x| <= x_cut.
double weighted_norm_window(const PotentialSpec& v, double gamma, double x_cut);

struct DecayReport {
  double gamma_star = 0.0;
  std::vector<std::pair<double, double>> norms;  // (gamma, ||V||_{L^1_gamma})
};

struct HypothesisResult {
  bool pass = false;
  double required_gamma = 0.0;
  DecayReport report;
};

// Decay hypothesis: finite discrete norm at gamma = 3/2 + 1/4 (generic) or
// 5/2 + 1/4 (exceptional). "Finite" on a box means the outer half of the box
// contributes a negligible share of the integral.
HypothesisResult hypothesis_check(const PotentialSpec& v, Classification c);

}  // namespace scatter1d
