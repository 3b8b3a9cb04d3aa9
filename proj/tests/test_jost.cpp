#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "scatter1d/jost.hpp"

using namespace scatter1d;

namespace {

PotentialSpec pt1() {
  return build_potential(poschl_teller(1.0), SpatialGrid::symmetric(40.0, 2048));
}

}  // namespace

TEST_SUITE("jost") {

TEST_CASE("dk_kernel: branch values and bound") {
  CHECK(dk_kernel(Complex(0.0, 0.0), 3.5) == Complex(3.5, 0.0));
  CHECK(std::abs(dk_kernel(Complex(1.7, 0.0), 0.0)) == 0.0);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dk(-10.0, 10.0), dx(-30.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    const double k = dk(rng), x = dx(rng);
    CHECK(std::abs(dk_kernel(Complex(k, 0.0), x)) <= std::abs(x) + 1e-12);
  }
  // both branches agree with the truncated series near the switch point
  for (double q : {0.5e-6, 2e-6}) {
    const double kk = q / 2.0;
    const Complex qq(0.0, q);  // 2ikx with x = 1
    const Complex series = 1.0 + qq * (0.5 + qq * (1.0 / 6.0 + qq / 24.0));
    CHECK(std::abs(dk_kernel(Complex(kk, 0.0), 1.0) - series) < 1e-9);
  }
  CHECK_THROWS_AS(dk_kernel(Complex(1.0, -0.1), 1.0), config_error);
}

TEST_CASE("solve_m: zero potential gives m == 1") {
  const PotentialSpec v =
      build_potential(zero_potential(), SpatialGrid::symmetric(40.0, 256));
  for (Complex k : {Complex(0.0, 0.0), Complex(1.3, 0.0), Complex(0.0, 0.7)}) {
    const JostSolution s = solve_m(1, v, k);
    for (const auto& z : s.m.v) CHECK(std::abs(z - 1.0) < 1e-14);
    CHECK(s.residual < 1e-12);
  }
}

TEST_CASE("solve_m: poschl_teller closed form, including the far left at k = 0") {
  const PotentialSpec v = pt1();
  for (double k : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const JostSolution s = solve_m(1, v, Complex(k, 0.0));
    double worst = 0.0;
    for (int i = 0; i < v.grid.n; ++i) {
      const double x = v.grid.x(i);
      if (std::abs(x) > 10.0) continue;
      worst = std::max(worst, std::abs(s.m[i] - oracles::pt_m1(x, k)));
    }
    CHECK(worst < 1e-6);
    CHECK(s.residual < 1e-10);
  }
  // k = 0: m_1(x,0) = tanh(x); the far-left value is the regression guard for
  // the blockwise iteration (the naive Neumann sum overflows there)
  const JostSolution s0 = solve_m(1, v, Complex(0.0, 0.0));
  double worst = 0.0;
  for (int i = 0; i < v.grid.n; ++i)
    worst = std::max(worst, std::abs(s0.m[i] - std::tanh(v.grid.x(i))));
  CHECK(worst < 1e-8);
  CHECK(std::abs(s0.m[0] - (-1.0)) < 1e-8);
}

TEST_CASE("solve_m: matches direct ODE integration for a gaussian well") {
  const PotentialSpec v =
      build_potential(gaussian_potential(-1.0, 1.0), SpatialGrid::symmetric(40.0, 2048));
  for (double k : {0.5, 2.0}) {
    const JostSolution s = solve_m(1, v, Complex(k, 0.0));
    const ComplexField oracle = oracles::ode_m1(v, k, 8);
    double worst = 0.0;
    for (int i = 0; i < v.grid.n; ++i)
      worst = std::max(worst, std::abs(s.m[i] - oracle[i]));
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("solve_m: envelope |m1 - 1| <= C (1+max(-x,0))/(1+|k|), C stable in k") {
  const PotentialSpec v = pt1();
  auto fit_c = [&](double k) {
    const JostSolution s = solve_m(1, v, Complex(k, 0.0));
    double c = 0.0;
    for (int i = 0; i < v.grid.n; ++i) {
      const double x = v.grid.x(i);
      const double envelope = (1.0 + std::max(-x, 0.0)) / (1.0 + std::abs(k));
      c = std::max(c, std::abs(s.m[i] - 1.0) / envelope);
    }
    return c;
  };
  const double c2 = fit_c(2.0), c4 = fit_c(4.0), c8 = fit_c(8.0);
  CHECK(c4 < 1.5 * c2);
  CHECK(c8 < 1.5 * c2);
}

TEST_CASE("solve_m: conjugation symmetry m(x,-k) = conj m(x,k)") {
  const PotentialSpec v =
      build_potential(gaussian_potential(-0.6, 1.2), SpatialGrid::symmetric(40.0, 1024));
  for (double k : {0.4, 1.7}) {
    const JostSolution sp = solve_m(1, v, Complex(k, 0.0));
    const JostSolution sm = solve_m(1, v, Complex(-k, 0.0));
    double worst = 0.0;
    for (int i = 0; i < v.grid.n; ++i)
      worst = std::max(worst, std::abs(sm.m[i] - std::conj(sp.m[i])));
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("solve_m_derivative: finite-difference oracle and 1/|k| envelope") {
  const PotentialSpec v = pt1();
  const double k = 1.0, h = 1e-4;
  const ComplexField md = solve_m_derivative(1, v, k);
  const JostSolution sp = solve_m(1, v, Complex(k + h, 0.0));
  const JostSolution sm = solve_m(1, v, Complex(k - h, 0.0));
  double worst = 0.0;
  for (int i = 0; i < v.grid.n; ++i) {
    const Complex fd = (sp.m[i] - sm.m[i]) / (2.0 * h);
    worst = std::max(worst, std::abs(md[i] - fd));
  }
  CHECK(worst < 1e-4);

  // zero potential: derivative vanishes
  const PotentialSpec z =
      build_potential(zero_potential(), SpatialGrid::symmetric(40.0, 256));
  const ComplexField zd = solve_m_derivative(1, z, 0.7);
  for (const auto& u : zd.v) CHECK(std::abs(u) < 1e-13);

  // |mdot_1(x,k)| <= C/|k| for x >= 0, C stable across k
  double cmax = 0.0, cmin = 1e300;
  for (double kk : {0.1, 0.5, 2.0, 10.0}) {
    const ComplexField d = solve_m_derivative(1, v, kk);
    double c = 0.0;
    for (int i = v.grid.n / 2; i < v.grid.n; ++i)
      c = std::max(c, std::abs(d[i]) * std::abs(kk));
    cmax = std::max(cmax, c);
    cmin = std::min(cmin, c);
  }
  CHECK(cmax < 100.0 * std::max(cmin, 1e-6));
  CHECK_THROWS_AS(solve_m_derivative(1, v, 1e-9), config_error);
}

TEST_CASE("scattering_coefficients: zero potential is transparent") {
  const PotentialSpec v =
      build_potential(zero_potential(), SpatialGrid::symmetric(40.0, 256));
  const MomentumGrid kg = MomentumGrid::uniform_punctured(0.3, 3.0, 10);
  const ScatteringCoefficients c = scattering_coefficients(v, kg);
  for (std::size_t j = 0; j < c.k.size(); ++j) {
    CHECK(std::abs(c.T[j] - 1.0) < 1e-13);
    CHECK(std::abs(c.R1[j]) < 1e-13);
    CHECK(std::abs(c.R2[j]) < 1e-13);
  }
}

TEST_CASE("scattering_coefficients: poschl_teller is reflectionless with T = (k+i)/(k-i)") {
  const PotentialSpec v = pt1();
  const MomentumGrid kg = MomentumGrid::uniform_punctured(1.0, 2.0, 2);
  const ScatteringCoefficients c = scattering_coefficients(v, kg);
  const std::size_t j1 = 2;  // k = +1
  REQUIRE(c.k[j1] == doctest::Approx(1.0));
  CHECK(std::abs(c.T[j1] - Complex(0.0, 1.0)) < 1e-6);
  CHECK(std::abs(c.R1[j1]) < 1e-6);
  CHECK(std::abs(c.R2[j1]) < 1e-6);
  CHECK(c.max_j_disagreement < 1e-6);
}

TEST_CASE("scattering_coefficients: square well textbook formula at k = 0.8") {
  const SpatialGrid g = make_aligned_grid(1.0, 40.0, 2048);
  const PotentialSpec v = build_potential(square_well(1.0, 1.0), g);
  const MomentumGrid kg = MomentumGrid::uniform_punctured(0.8, 1.6, 2);
  const ScatteringCoefficients c = scattering_coefficients(v, kg);
  const std::size_t j = 2;  // k = 0.8
  REQUIRE(c.k[j] == doctest::Approx(0.8));
  const Complex t_expected = 1.0 / oracles::well_inv_T(0.8, 1.0, 1.0);
  CHECK(std::abs(c.T[j] - t_expected) < 1e-6);
}

TEST_CASE("scattering_coefficients: gaussian well against the ODE oracle") {
  const PotentialSpec v =
      build_potential(gaussian_potential(-1.0, 1.0), SpatialGrid::symmetric(40.0, 2048));
  const MomentumGrid kg = MomentumGrid::uniform_punctured(0.6, 2.4, 4);
  const ScatteringCoefficients c = scattering_coefficients(v, kg);
  for (std::size_t j = 0; j < c.k.size(); ++j) {
    const double k = c.k[j];
    if (k <= 0.0) continue;
    const oracles::OdeCoefficients o = oracles::ode_coefficients(v, k, 16);
    CHECK(std::abs(c.T[j] - o.T) < 1e-7);
    CHECK(std::abs(c.R1[j] - o.R1) < 1e-7);
    CHECK(std::abs(c.R2[j] - o.R2) < 1e-7);
    CHECK(c.unitarity_defect[j] < 1e-7);
  }
}

TEST_CASE("scattering_coefficients: unpunctured grids are rejected") {
  const PotentialSpec v =
      build_potential(zero_potential(), SpatialGrid::symmetric(40.0, 256));
  const MomentumGrid kg = MomentumGrid::dual_subset(v.grid, 32);
  CHECK_THROWS_AS(scattering_coefficients(v, kg), config_error);
}

TEST_CASE("classify: canonical verdicts") {
  const SpatialGrid g1024 = SpatialGrid::symmetric(40.0, 1024);

  const ClassifyResult zr = classify(build_potential(zero_potential(), g1024));
  CHECK(zr.classification == Classification::exceptional);
  CHECK(zr.a == doctest::Approx(1.0));

  const ClassifyResult pt = classify(build_potential(poschl_teller(1.0), g1024));
  CHECK(pt.classification == Classification::exceptional);
  CHECK(pt.a == doctest::Approx(-1.0).epsilon(1e-6));

  const double v0 = std::numbers::pi * std::numbers::pi / 4.0;
  const ClassifyResult res = classify(
      build_potential(square_well(v0, 1.0), make_aligned_grid(1.0, 40.0, 1024)));
  CHECK(res.classification == Classification::exceptional);

  const ClassifyResult gen = classify(
      build_potential(square_well(1.0, 1.0), make_aligned_grid(1.0, 40.0, 1024)));
  CHECK(gen.classification == Classification::generic);

  // verdicts stable under grid refinement
  const SpatialGrid g2048 = SpatialGrid::symmetric(40.0, 2048);
  CHECK(classify(build_potential(poschl_teller(1.0), g2048)).classification ==
        Classification::exceptional);
  CHECK(classify(build_potential(square_well(1.0, 1.0), make_aligned_grid(1.0, 40.0, 2048)))
            .classification == Classification::generic);
}

TEST_CASE("low-momentum laws: generic linear vanishing, exceptional limit") {
  // generic: |T(k)|/k settles (drift < 15% per halving)
  const SpatialGrid g = make_aligned_grid(1.0, 40.0, 2048);
  const PotentialSpec v = build_potential(square_well(1.0, 1.0), g);
  std::vector<double> ratio;
  for (double k : {0.1, 0.05, 0.025}) {
    const MomentumGrid kg = MomentumGrid::uniform_punctured(k, 2.0 * k, 2);
    const ScatteringCoefficients c = scattering_coefficients(v, kg);
    ratio.push_back(std::abs(c.t_at(k)) / k);
  }
  CHECK(std::abs(ratio[1] / ratio[0] - 1.0) < 0.15);
  CHECK(std::abs(ratio[2] / ratio[1] - 1.0) < 0.15);

  // exceptional: V = 0 has T(0+) = 1 = 2a/(1+a^2)
  const PotentialSpec z = build_potential(zero_potential(), SpatialGrid::symmetric(40.0, 256));
  const MomentumGrid kg = MomentumGrid::uniform_punctured(0.05, 0.1, 2);
  const ScatteringCoefficients cz = scattering_coefficients(z, kg);
  CHECK(std::abs(cz.t_at(0.05) - 1.0) < 1e-12);
}

TEST_CASE("asymmetric potential: independent j = 1 / j = 2 routes and ODE oracle") {
  // For symmetric V the two transmission routes coincide by construction, so
  // the cross-validation only bites here.
  const SpatialGrid g = SpatialGrid::symmetric(40.0, 2048);
  auto fn = [](double x) {
    return -0.8 * std::exp(-(x - 1.0) * (x - 1.0)) -
           0.3 * std::exp(-(x + 2.0) * (x + 2.0) / 4.0);
  };
  std::vector<double> xs(g.n), vs(g.n);
  for (int i = 0; i < g.n; ++i) {
    xs[i] = g.x(i);
    vs[i] = fn(g.x(i));
  }
  const PotentialSpec v = build_potential(samples_potential(xs, vs), g);
  const MomentumGrid kg = MomentumGrid::uniform_punctured(0.4, 2.0, 3);
  const ScatteringCoefficients c = scattering_coefficients(v, kg);
  CHECK(c.max_j_disagreement < 1e-8);
  CHECK(std::abs(c.R1[3] - c.R2[3]) > 1e-2);  // genuinely asymmetric at k = 0.4
  for (std::size_t j = 0; j < c.k.size(); ++j) {
    const double k = c.k[j];
    if (k <= 0.0) continue;
    const oracles::OdeCoefficients o = oracles::ode_coefficients_fn(fn, g, k, 16);
    CHECK(std::abs(c.T[j] - o.T) < 1e-7);
    CHECK(std::abs(c.R1[j] - o.R1) < 1e-7);
    CHECK(std::abs(c.R2[j] - o.R2) < 1e-7);
    CHECK(c.unitarity_defect[j] < 1e-8);
  }
}

TEST_CASE("alpha estimate agrees with the zero-energy Wronskian route") {
  // generic case: T(k) = 2ik/W(k) vanishes linearly, so the finite-difference
  // slope at k = +-0.05 should match 2i/W(0)
  const SpatialGrid g = make_aligned_grid(1.0, 40.0, 2048);
  const PotentialSpec v = build_potential(square_well(1.0, 1.0), g);
  const MomentumGrid kg = MomentumGrid::uniform_punctured(0.5, 1.0, 2);
  const ScatteringCoefficients c = scattering_coefficients(v, kg);
  REQUIRE(c.classification == Classification::generic);
  const Complex alpha_w = Complex(0.0, 2.0) / c.wronskian;
  CHECK(std::abs(c.alpha - alpha_w) < 0.1 * std::abs(alpha_w));
}

TEST_CASE("verify_relations: consistency defects") {
  const PotentialSpec z =
      build_potential(zero_potential(), SpatialGrid::symmetric(40.0, 256));
  const MomentumGrid kgz = MomentumGrid::uniform_punctured(0.5, 2.0, 4);
  const RelationReport rz = verify_relations(z, scattering_coefficients(z, kgz));
  CHECK(rz.defect_2_58 < 1e-12);
  CHECK(rz.defect_2_59 < 1e-12);
  CHECK(rz.unitarity < 1e-12);

  const PotentialSpec pt = pt1();
  const MomentumGrid kg1 = MomentumGrid::uniform_punctured(0.4, 3.0, 6);
  const RelationReport r1 = verify_relations(pt, scattering_coefficients(pt, kg1));
  CHECK(r1.unitarity < 1e-8);
  CHECK(r1.defect_2_58 < 1e-6);
  CHECK(r1.defect_2_59 < 1e-6);

  const PotentialSpec gs =
      build_potential(gaussian_potential(-1.0, 1.0), SpatialGrid::symmetric(40.0, 2048));
  const RelationReport r2 = verify_relations(gs, scattering_coefficients(gs, kg1));
  CHECK(r2.unitarity < 1e-7);
}

TEST_CASE("volterra residual invariant across the fixture set") {
  const SpatialGrid g = SpatialGrid::symmetric(40.0, 1024);
  for (const PotentialSpec& raw :
       {poschl_teller(1.0), gaussian_potential(-0.8, 1.1), gaussian_potential(0.3, 1.0)}) {
    const PotentialSpec v = build_potential(raw, g);
    for (double k : {0.05, 0.7, 3.0}) {
      for (int dir : {1, 2}) {
        const JostSolution s = solve_m(dir, v, Complex(k, 0.0));
        CHECK(s.residual < 1e-10);
        CHECK(s.iterations <= 200);
      }
    }
  }
}

}  // TEST_SUITE
