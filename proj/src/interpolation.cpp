#include "ergodamp/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ergodamp {

namespace {

constexpr double kKeepRelative = 1e-15;

// Cubic B-spline weights for the four nodes floor(s)-1 .. floor(s)+2.
std::array<double, 4> bspline_weights(double u) {
  const double u2 = u * u, u3 = u2 * u;
  return {(1.0 - u) * (1.0 - u) * (1.0 - u) / 6.0, (3.0 * u3 - 6.0 * u2 + 4.0) / 6.0,
          (-3.0 * u3 + 3.0 * u2 + 3.0 * u + 1.0) / 6.0, u3 / 6.0};
}

}  // namespace

FieldInterpolant::FieldInterpolant(const GridField& f, InterpolationScheme scheme)
    : grid_(f.grid()), scheme_(scheme), nodes_(f.values().begin(), f.values().end()) {
  const SpectralField spec = to_spectral(f);
  const int d = grid_.dim();
  const int n = grid_.n();

  if (scheme_ == InterpolationScheme::Trigonometric) {
    series_ = FourierSeries(d, 1, n / 2);
    double peak = 0.0;
    for (const auto& c : spec.coefficients()) peak = std::max(peak, std::abs(c));
    const double keep = kKeepRelative * peak;
    std::array<int, kMaxDim> k{};
    for (size_t i = 0; i < spec.size(); ++i) {
      const auto& c = spec.coefficients()[i];
      if (peak == 0.0 || std::abs(c) <= keep) continue;
      const auto idx = grid_.multi_index(i);
      for (int a = 0; a < d; ++a) k[a] = grid_.wavenumber(idx[a]);
      series_.add_term(std::span<const int>(k.data(), d), std::span<const std::complex<double>>(&c, 1));
    }
    return;
  }

  // B-spline coefficients solve (c_{i-1} + 4 c_i + c_{i+1}) / 6 = f_i per axis,
  // which is diagonal in Fourier space.
  SpectralField coeffs = spec;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const auto idx = grid_.multi_index(i);
    double factor = 1.0;
    for (int a = 0; a < d; ++a) {
      const double w = 2.0 * std::numbers::pi * grid_.wavenumber(idx[a]) / n;
      factor *= 6.0 / (4.0 + 2.0 * std::cos(w));
    }
    coeffs.coefficients()[i] *= factor;
  }
  const GridField c = from_spectral(coeffs);
  spline_coeffs_.assign(c.values().begin(), c.values().end());
}

double FieldInterpolant::operator()(const TorusPoint& p) const {
  const TorusPoint q = canonicalize(p);
  const int n = grid_.n();
  std::array<int, kMaxDim> idx{};
  bool on_node = true;
  for (int a = 0; a < grid_.dim() && on_node; ++a) {
    const double s = q[a] * n;
    const double r = std::floor(s);
    on_node = (s == r);
    idx[a] = static_cast<int>(r) % n;
  }
  if (on_node) return nodes_[grid_.flat_index(idx)];

  if (scheme_ == InterpolationScheme::CubicSpline) return spline(q);
  double v = 0.0;
  series_.evaluate(q, std::span<double>(&v, 1));
  return v;
}

double FieldInterpolant::spline(const TorusPoint& p) const {
  const int d = grid_.dim();
  const int n = grid_.n();
  std::array<int, kMaxDim> base{};
  std::array<std::array<double, 4>, kMaxDim> w{};
  for (int a = 0; a < d; ++a) {
    const double s = p[a] * n;
    const double fl = std::floor(s);
    base[a] = static_cast<int>(fl) - 1;
    w[a] = bspline_weights(s - fl);
  }
  int combos = 1;
  for (int a = 0; a < d; ++a) combos *= 4;
  double acc = 0.0;
  std::array<int, kMaxDim> idx{};
  for (int c = 0; c < combos; ++c) {
    int rem = c;
    double weight = 1.0;
    for (int a = d - 1; a >= 0; --a) {
      const int o = rem % 4;
      rem /= 4;
      idx[a] = ((base[a] + o) % n + n) % n;
      weight *= w[a][o];
    }
    acc += weight * spline_coeffs_[grid_.flat_index(idx)];
  }
  return acc;
}

double interpolate(const GridField& f, const TorusPoint& p, InterpolationScheme scheme) {
  return FieldInterpolant(f, scheme)(p);
}

}  // namespace ergodamp
