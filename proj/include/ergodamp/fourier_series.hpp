#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "ergodamp/torus.hpp"

namespace ergodamp {

namespace detail {
struct PhaseTables;
}

/// Sparse real-valued Fourier series with `components` outputs:
///   f_c(x) = Re sum_k c_{k,c} b(k, x),   b(k, x) = prod_a e^{2 pi i k_a x_a}.
/// When `nyquist` > 0 the factor for k_a = -nyquist is cos(2 pi nyquist x_a),
/// which keeps trigonometric interpolants real and exact at the nodes.
class FourierSeries {
 public:
  FourierSeries() = default;
  FourierSeries(int dim, int components, int nyquist = 0);

  void add_term(std::span<const int> k, std::span<const std::complex<double>> coeffs);

  int dim() const noexcept { return dim_; }
  int components() const noexcept { return components_; }
  size_t term_count() const noexcept { return k_.size(); }
  std::span<const int> wavevector(size_t t) const noexcept { return {k_[t].data(), static_cast<size_t>(dim_)}; }
  std::span<const std::complex<double>> coefficients(size_t t) const noexcept {
    return {coeffs_.data() + t * components_, static_cast<size_t>(components_)};
  }

  /// Writes `components` values into out.
  void evaluate(const TorusPoint& x, std::span<double> out) const;
  /// Values and the Jacobian grad(r, c) = d f_r / d x_c. Requires nyquist == 0.
  void evaluate_with_gradient(const TorusPoint& x, std::span<double> out, Mat& grad) const;

 private:
  std::complex<double> basis(const detail::PhaseTables& tb, size_t t) const noexcept;

  int dim_ = 0;
  int components_ = 0;
  int nyquist_ = 0;
  bool constant_only_ = true;
  std::array<int, kMaxDim> kmax_{};
  std::vector<std::array<int, kMaxDim>> k_;
  std::vector<std::complex<double>> coeffs_;
};

}  // namespace ergodamp
