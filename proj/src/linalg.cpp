#include "scatter1d/linalg.hpp"

#include <cmath>
#include <functional>
#include <thread>

#include "scatter1d/errors.hpp"

namespace scatter1d {

namespace {

void parallel_rows(int rows, const std::function<void(int, int)>& body) {
  if (rows < 64) {
    body(0, rows);
    return;
  }
  const int mid = rows / 2;
  std::thread t([&] { body(0, mid); });
  body(mid, rows);
  t.join();
}

}  // namespace

std::vector<Complex> matvec(const CMatrix& m, const std::vector<Complex>& x) {
  if (static_cast<int>(x.size()) != m.cols) throw config_error("matvec: size mismatch");
  std::vector<Complex> y(m.rows);
  parallel_rows(m.rows, [&](int r0, int r1) {
    for (int r = r0; r < r1; ++r) {
      const Complex* row = m.row(r);
      Complex s(0.0, 0.0);
      for (int c = 0; c < m.cols; ++c) s += row[c] * x[c];
      y[r] = s;
    }
  });
  return y;
}

std::vector<Complex> matvec_adjoint(const CMatrix& m, const std::vector<Complex>& x) {
  if (static_cast<int>(x.size()) != m.rows) throw config_error("matvec_adjoint: size mismatch");
  std::vector<Complex> y(m.cols, Complex(0.0, 0.0));
  for (int r = 0; r < m.rows; ++r) {
    const Complex* row = m.row(r);
    const Complex w = x[r];
    if (w == Complex(0.0, 0.0)) continue;
    for (int c = 0; c < m.cols; ++c) y[c] += std::conj(row[c]) * w;
  }
  return y;
}

CMatrix gram(const CMatrix& m) {
  CMatrix g(m.rows, m.rows);
  parallel_rows(m.rows, [&](int r0, int r1) {
    for (int r = r0; r < r1; ++r) {
      const Complex* a = m.row(r);
      for (int s = r; s < m.rows; ++s) {
        const Complex* b = m.row(s);
        Complex acc(0.0, 0.0);
        for (int c = 0; c < m.cols; ++c) acc += a[c] * std::conj(b[c]);
        g.at(r, s) = acc;
      }
    }
  });
  for (int r = 0; r < m.rows; ++r)
    for (int s = 0; s < r; ++s) g.at(r, s) = std::conj(g.at(s, r));
  return g;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols != b.rows) throw config_error("matmul: size mismatch");
  CMatrix c(a.rows, b.cols);
  parallel_rows(a.rows, [&](int r0, int r1) {
    for (int r = r0; r < r1; ++r) {
      Complex* crow = c.row(r);
      for (int s = 0; s < a.cols; ++s) {
        const Complex w = a.at(r, s);
        if (w == Complex(0.0, 0.0)) continue;
        const Complex* brow = b.row(s);
        for (int j = 0; j < b.cols; ++j) crow[j] += w * brow[j];
      }
    }
  });
  return c;
}

PolarResult polar_orthonormalize(CMatrix& m, int max_iters, double tol) {
  PolarResult res;
  std::vector<char> zero_row(m.rows, 0);
  for (int r = 0; r < m.rows; ++r) {
    double s = 0.0;
    const Complex* row = m.row(r);
    for (int c = 0; c < m.cols; ++c) s += std::norm(row[c]);
    if (std::sqrt(s) < 1e-12) zero_row[r] = 1;
  }
  auto defect = [&](const CMatrix& g) {
    double d = 0.0;
    for (int r = 0; r < g.rows; ++r) {
      if (zero_row[r]) continue;
      for (int s = 0; s < g.rows; ++s) {
        if (zero_row[s]) continue;
        const double e = std::abs(g.at(r, s) - (r == s ? Complex(1.0, 0.0) : Complex(0.0, 0.0)));
        d = std::max(d, e);
      }
    }
    return d;
  };

  CMatrix g = gram(m);
  res.initial_defect = defect(g);
  if (res.initial_defect >= 2.0)
    throw numeric_error("polar_orthonormalize: map too far from isometry", res.initial_defect);

  double d = res.initial_defect;
  int it = 0;
  while (d > tol && it < max_iters) {
    CMatrix gm = matmul(g, m);
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = 1.5 * m.a[i] - 0.5 * gm.a[i];
    g = gram(m);
    d = defect(g);
    ++it;
  }
  res.final_defect = d;
  res.iterations = it;
  if (d > 1e-10)
    throw numeric_error("polar_orthonormalize: Newton-Schulz did not converge", d);
  return res;
}

}  // namespace scatter1d
