#include "ergodamp/fourier_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ergodamp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Per-axis powers e^{2 pi i m x_a}, m = 0..kmax_a. Small tables live on the
// stack; larger ones (dense interpolants) fall back to the heap.
constexpr int kStackModes = 48;

}  // namespace

namespace detail {

// Row a holds e^{2 pi i m x_a} for m = -kmax_a..kmax_a, centred so that
// row[a][m] is valid for negative m. The Nyquist slot stores the real cosine.
struct PhaseTables {
  std::array<double*, kMaxDim> row{};
  // raw doubles so the buffer is not zero-filled on every evaluation
  double local[kMaxDim][2 * (2 * kStackModes + 1)];
  std::vector<double> heap;

  PhaseTables(int dim, const std::array<int, kMaxDim>& kmax, int nyquist, const TorusPoint& x) {
    size_t need = 0;
    for (int a = 0; a < dim; ++a)
      if (kmax[a] > kStackModes) need += 2 * (2 * static_cast<size_t>(kmax[a]) + 1);
    if (need) heap.resize(need);
    size_t off = 0;
    for (int a = 0; a < dim; ++a) {
      const int km = kmax[a];
      double* base;
      if (km > kStackModes) {
        base = heap.data() + off;
        off += 2 * (2 * static_cast<size_t>(km) + 1);
      } else {
        base = local[a];
      }
      double* r = base + 2 * km;
      row[a] = r;
      r[0] = 1.0;
      r[1] = 0.0;
      if (km == 0) continue;
      const double xr = x[a] - std::floor(x[a]);
      const double zr = std::cos(kTwoPi * xr), zi = std::sin(kTwoPi * xr);
      double pr = 1.0, pi = 0.0;
      for (int m = 1; m <= km; ++m) {
        // re-seed periodically to bound recurrence drift
        if (m % 32 == 0) {
          pr = std::cos(kTwoPi * m * xr);
          pi = std::sin(kTwoPi * m * xr);
        } else {
          const double t = pr * zr - pi * zi;
          pi = pr * zi + pi * zr;
          pr = t;
        }
        r[2 * m] = pr;
        r[2 * m + 1] = pi;
        r[-2 * m] = pr;
        r[-2 * m + 1] = -pi;
      }
      if (nyquist > 0 && nyquist <= km) r[-2 * nyquist + 1] = 0.0;
    }
  }
};

}  // namespace detail

FourierSeries::FourierSeries(int dim, int components, int nyquist)
    : dim_(dim), components_(components), nyquist_(nyquist) {
  if (dim < 1 || dim > kMaxDim) throw UnsupportedDimension("Fourier series dimension out of range");
}

void FourierSeries::add_term(std::span<const int> k, std::span<const std::complex<double>> coeffs) {
  std::array<int, kMaxDim> kk{};
  for (int a = 0; a < dim_; ++a) {
    kk[a] = k[a];
    kmax_[a] = std::max(kmax_[a], std::abs(k[a]));
    if (k[a] != 0) constant_only_ = false;
  }
  k_.push_back(kk);
  coeffs_.insert(coeffs_.end(), coeffs.begin(), coeffs.begin() + components_);
}

std::complex<double> FourierSeries::basis(const detail::PhaseTables& tb, size_t t) const noexcept {
  const auto& k = k_[t];
  const double* e0 = tb.row[0] + 2 * k[0];
  double br = e0[0], bi = e0[1];
  for (int a = 1; a < dim_; ++a) {
    const double* e = tb.row[a] + 2 * k[a];
    const double nr = br * e[0] - bi * e[1];
    bi = br * e[1] + bi * e[0];
    br = nr;
  }
  return {br, bi};
}

void FourierSeries::evaluate(const TorusPoint& x, std::span<double> out) const {
  std::fill(out.begin(), out.begin() + components_, 0.0);
  if (constant_only_) {
    for (size_t t = 0; t < k_.size(); ++t)
      for (int r = 0; r < components_; ++r) out[r] += coeffs_[t * components_ + r].real();
    return;
  }
  const detail::PhaseTables tb(dim_, kmax_, nyquist_, x);
  for (size_t t = 0; t < k_.size(); ++t) {
    const auto b = basis(tb, t);
    const auto* c = coeffs_.data() + t * components_;
    for (int r = 0; r < components_; ++r) out[r] += c[r].real() * b.real() - c[r].imag() * b.imag();
  }
}

void FourierSeries::evaluate_with_gradient(const TorusPoint& x, std::span<double> out, Mat& grad) const {
  std::fill(out.begin(), out.begin() + components_, 0.0);
  grad = Mat(dim_);
  if (k_.empty()) return;
  const detail::PhaseTables tb(dim_, kmax_, nyquist_, x);
  for (size_t t = 0; t < k_.size(); ++t) {
    const auto cb = basis(tb, t);
    const auto* c = coeffs_.data() + t * components_;
    for (int r = 0; r < components_; ++r) {
      const double re = c[r].real() * cb.real() - c[r].imag() * cb.imag();
      const double im = c[r].real() * cb.imag() + c[r].imag() * cb.real();
      const std::complex<double> term(re, im);
      out[r] += term.real();
      // d/dx_a Re(term) = Re(2 pi i k_a term) = -2 pi k_a Im(term)
      for (int a = 0; a < dim_; ++a) grad(r, a) -= kTwoPi * k_[t][a] * term.imag();
    }
  }
}

}  // namespace ergodamp
