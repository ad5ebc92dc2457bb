#pragma once

#include <vector>

#include "ergodamp/fourier_series.hpp"
#include "ergodamp/torus.hpp"

namespace ergodamp {

enum class InterpolationScheme {
  /// Band-limited trigonometric interpolant of the node values (default).
  Trigonometric,
  /// Tensor-product periodic cubic B-spline; O(4^d) per query.
  CubicSpline,
};

/// Evaluates a sampled field at arbitrary torus points.
///
/// Both schemes reproduce node values exactly (node queries return the stored
/// sample) and reproduce constants. The trigonometric scheme keeps only
/// coefficients above 1e-15 of the largest one, so evaluation cost scales with
/// the number of significant modes rather than with n^d.
class FieldInterpolant {
 public:
  explicit FieldInterpolant(const GridField& f, InterpolationScheme scheme = InterpolationScheme::Trigonometric);

  double operator()(const TorusPoint& p) const;

  const Grid& grid() const noexcept { return grid_; }
  InterpolationScheme scheme() const noexcept { return scheme_; }
  /// Number of retained Fourier terms (trigonometric scheme).
  size_t mode_count() const noexcept { return series_.term_count(); }
  const std::vector<double>& node_values() const noexcept { return nodes_; }

 private:
  double spline(const TorusPoint& p) const;

  Grid grid_;
  InterpolationScheme scheme_;
  std::vector<double> nodes_;
  FourierSeries series_;
  std::vector<double> spline_coeffs_;
};

/// One-off interpolation; builds a FieldInterpolant internally.
double interpolate(const GridField& f, const TorusPoint& p,
                   InterpolationScheme scheme = InterpolationScheme::Trigonometric);

}  // namespace ergodamp
