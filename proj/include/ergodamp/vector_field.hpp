#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "ergodamp/fourier_series.hpp"
#include "ergodamp/torus.hpp"

namespace ergodamp {

/// What the experiment author asserts about the mean-drift ratio a00/b00.
/// Irrationality cannot be decided from floating-point data.
enum class RatioRationality { Unknown, Rational, Irrational };

std::string to_string(RatioRationality r);
RatioRationality parse_rationality(const std::string& s);

/// One Fourier coefficient of a vector field: v_hat(k), one complex entry per component.
struct FourierMode {
  std::array<int, kMaxDim> k{};
  std::array<std::complex<double>, kMaxDim> coeff{};
  friend bool operator==(const FourierMode&, const FourierMode&) = default;
};

/// Real vector field v(x) = sum_k v_hat(k) e^{2 pi i k.x} with finitely many modes.
///
/// Construction rejects non-Hermitian data (v must be real) and duplicate
/// wavevectors with InvalidSpec. Divergence is not enforced here; see
/// check_divergence_free().
class FourierVectorField {
 public:
  FourierVectorField(int dim, std::vector<FourierMode> modes,
                     RatioRationality rationality = RatioRationality::Unknown);

  /// v(x) = drift everywhere.
  static FourierVectorField constant(const Vec& drift, RatioRationality rationality = RatioRationality::Unknown);
  /// v = (amplitude cos(2 pi x_2) + mean, 0): a shear along the first axis (d = 2).
  static FourierVectorField shear(double mean, double amplitude);

  int dim() const noexcept { return dim_; }
  const std::vector<FourierMode>& modes() const noexcept { return modes_; }
  RatioRationality rationality() const noexcept { return rationality_; }

  Vec evaluate(const TorusPoint& x) const;
  /// Velocity and its Jacobian grad(i, j) = d v_i / d x_j.
  Vec evaluate(const TorusPoint& x, Mat& grad) const;

  /// k = 0 coefficient (the mean drift).
  Vec mean_drift() const;
  /// Upper bound on sup |v| from the triangle inequality.
  double sup_bound() const;

 private:
  int dim_;
  std::vector<FourierMode> modes_;
  RatioRationality rationality_;
  FourierSeries series_;
  Vec drift_;
  bool constant_ = false;
};

struct DivergenceCheck {
  bool divergence_free;
  /// max_k |k . v_hat(k)|; the divergence coefficient is 2 pi i times this.
  double max_violation;
};

DivergenceCheck check_divergence_free(const FourierVectorField& v);

/// sum_k 2 pi |k| |v_hat(k)|, an upper bound on sup ||grad v||.
double lipschitz_estimate(const FourierVectorField& v);

}  // namespace ergodamp
