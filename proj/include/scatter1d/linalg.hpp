#pragma once

#include <vector>

#include "scatter1d/grid.hpp"

namespace scatter1d {

// Row-major dense complex matrix. Sized for the generalized-Fourier maps
// (a few hundred rows by a few thousand columns), so plain loops with a
// two-way thread split are enough.
struct CMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Complex> a;

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  Complex* row(int r) { return a.data() + static_cast<std::size_t>(r) * cols; }
  const Complex* row(int r) const { return a.data() + static_cast<std::size_t>(r) * cols; }
  Complex& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const Complex& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

// y = M x
std::vector<Complex> matvec(const CMatrix& m, const std::vector<Complex>& x);
// y = M^H x
std::vector<Complex> matvec_adjoint(const CMatrix& m, const std::vector<Complex>& x);
// G = M M^H (Hermitian, rows x rows)
CMatrix gram(const CMatrix& m);
// C = A B
CMatrix matmul(const CMatrix& a, const CMatrix& b);

struct PolarResult {
  double initial_defect = 0.0;  // max |(MM^H - I)_{rs}| before
  double final_defect = 0.0;    // and after
  int iterations = 0;
};

// Newton-Schulz iteration M <- (3 M - (M M^H) M)/2 driving M M^H -> I.
// Converges for singular values in (0, sqrt(3)); exactly-zero rows are left
// zero and exempt from the convergence test.
PolarResult polar_orthonormalize(CMatrix& m, int max_iters = 60, double tol = 1e-13);

}  // namespace scatter1d
