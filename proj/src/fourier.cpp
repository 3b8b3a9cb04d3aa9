#include "scatter1d/fourier.hpp"

#include <cmath>
#include <numbers>

namespace scatter1d {

void fft(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  if (n < 2) return;
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const Complex wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        Complex u = a[i + j];
        Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

FourierField fourier_forward(const ComplexField& phi, const SpatialGrid& g) {
  require_aligned(phi, g, "fourier_forward");
  if (!g.is_symmetric()) throw config_error("fourier_forward: grid must be symmetric");
  const int n = g.n;
  std::vector<Complex> a = phi.v;
  fft(a, -1);

  MomentumGrid kg;
  kg.dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * g.dx);
  const int half = n / 2 - 1;  // Nyquist dropped
  kg.k.reserve(2 * half + 1);
  for (int j = -half; j <= half; ++j) kg.k.push_back(j * kg.dk);

  const double scale = g.dx / std::sqrt(2.0 * std::numbers::pi);
  ComplexField out(kg.k.size());
  for (int j = -half; j <= half; ++j) {
    const double k = j * kg.dk;
    const int bin = j >= 0 ? j : j + n;
    const Complex phase(std::cos(-k * g.x_min), std::sin(-k * g.x_min));
    out[j + half] = scale * phase * a[bin];
  }
  return FourierField{std::move(kg), std::move(out)};
}

ComplexField fourier_inverse(const ComplexField& phi_hat, const MomentumGrid& kg,
                             const SpatialGrid& g) {
  if (phi_hat.size() != kg.k.size())
    throw config_error("fourier_inverse: field length does not match momentum grid");
  if (!g.is_symmetric()) throw config_error("fourier_inverse: grid must be symmetric");
  const int n = g.n;
  const int half = static_cast<int>(kg.k.size()) / 2;
  std::vector<Complex> a(n, Complex(0.0, 0.0));
  for (int j = -half; j <= half; ++j) {
    const double k = j * kg.dk;
    const int bin = j >= 0 ? j : j + n;
    const Complex phase(std::cos(k * g.x_min), std::sin(k * g.x_min));
    a[bin] = phase * phi_hat[j + half];
  }
  fft(a, +1);
  const double scale = kg.dk / std::sqrt(2.0 * std::numbers::pi);
  ComplexField out(n);
  for (int m = 0; m < n; ++m) out[m] = scale * a[m];
  return out;
}

}  // namespace scatter1d
