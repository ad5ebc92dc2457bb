#pragma once

// Geometry of the flat torus T^d = [0,1)^d: points, uniform periodic grids,
// sampled fields, quadrature norms and the spectral transform.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include "ergodamp/errors.hpp"

namespace ergodamp {

/// Largest torus dimension supported by the fixed-capacity point types.
inline constexpr int kMaxDim = 3;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Real d-vector with d <= kMaxDim (velocities, lifted positions).
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim) : dim_(dim) { check_dim(dim); }
  Vec(std::initializer_list<double> values);
  explicit Vec(std::span<const double> values);

  int dim() const noexcept { return dim_; }
  double operator[](int i) const noexcept { return v_[i]; }
  double& operator[](int i) noexcept { return v_[i]; }
  std::span<const double> values() const noexcept { return {v_.data(), static_cast<size_t>(dim_)}; }

  double norm() const noexcept;

  Vec& operator+=(const Vec& o) noexcept {
    for (int i = 0; i < kMaxDim; ++i) v_[i] += o.v_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) noexcept {
    for (int i = 0; i < kMaxDim; ++i) v_[i] -= o.v_[i];
    return *this;
  }
  Vec& operator*=(double s) noexcept {
    for (int i = 0; i < kMaxDim; ++i) v_[i] *= s;
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) noexcept { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) noexcept { return a -= b; }
  friend Vec operator*(Vec a, double s) noexcept { return a *= s; }
  friend Vec operator*(double s, Vec a) noexcept { return a *= s; }

 private:
  static void check_dim(int dim) {
    if (dim < 1 || dim > kMaxDim) throw UnsupportedDimension("dimension must be in [1, 3]");
  }
  // unused trailing slots stay zero, so whole-array arithmetic is safe
  std::array<double, kMaxDim> v_{};
  int dim_ = 0;
};

/// Dense d x d matrix, row-major.
class Mat {
 public:
  Mat() = default;
  explicit Mat(int dim) : dim_(dim) {}
  static Mat identity(int dim);

  int dim() const noexcept { return dim_; }
  double operator()(int r, int c) const noexcept { return a_[r * kMaxDim + c]; }
  double& operator()(int r, int c) noexcept { return a_[r * kMaxDim + c]; }

  double determinant() const noexcept;
  /// Largest singular value.
  double operator_norm() const;

  friend Mat operator*(const Mat& a, const Mat& b) noexcept;
  Mat& operator+=(const Mat& o) noexcept;
  Mat& operator*=(double s) noexcept;
  friend Mat operator+(Mat a, const Mat& b) noexcept { return a += b; }
  friend Mat operator*(Mat a, double s) noexcept { return a *= s; }

 private:
  std::array<double, kMaxDim * kMaxDim> a_{};
  int dim_ = 0;
};

/// Point of T^d. Construction does not reduce modulo 1; canonicalize() does.
class TorusPoint {
 public:
  TorusPoint() = default;
  TorusPoint(std::initializer_list<double> coords) : c_(coords) {}
  explicit TorusPoint(const Vec& coords) : c_(coords) {}
  explicit TorusPoint(std::span<const double> coords) : c_(coords) {}

  int dim() const noexcept { return c_.dim(); }
  double operator[](int i) const noexcept { return c_[i]; }
  double& operator[](int i) noexcept { return c_[i]; }
  const Vec& coords() const noexcept { return c_; }

 private:
  Vec c_;
};

/// Reduces every coordinate into [0, 1). Throws InvalidInput on non-finite input.
TorusPoint canonicalize(const TorusPoint& p);

/// Geodesic distance on the flat torus (minimum over periodic images).
double torus_distance(const TorusPoint& a, const TorusPoint& b);

/// Uniform periodic grid with n (even) nodes per axis, nodes at i/n.
class Grid {
 public:
  Grid(int dim, int points_per_axis);

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  double spacing() const noexcept { return 1.0 / n_; }
  /// h^d, the quadrature weight of each node.
  double cell_volume() const noexcept;
  size_t size() const noexcept { return size_; }

  /// Row-major multi-index (first axis slowest).
  std::array<int, kMaxDim> multi_index(size_t flat) const noexcept;
  size_t flat_index(std::span<const int> idx) const noexcept;
  TorusPoint node(size_t flat) const noexcept;
  /// Signed wavenumber of FFT slot i along an axis: i for i < n/2, else i - n.
  int wavenumber(int i) const noexcept { return i < n_ / 2 ? i : i - n_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dim_;
  int n_;
  size_t size_;
};

/// Real samples of a field at every grid node, row-major.
class GridField {
 public:
  GridField(Grid grid, std::vector<double> values);
  explicit GridField(Grid grid, double fill = 0.0);

  static GridField sample(const Grid& grid, const std::function<double(const TorusPoint&)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](size_t i) const noexcept { return values_[i]; }
  double& operator[](size_t i) noexcept { return values_[i]; }
  size_t size() const noexcept { return values_.size(); }

  double min() const;
  double max() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Fourier coefficients on the grid's wavevectors, stored in FFT order.
/// Normalised so that the k = 0 coefficient is the spatial average.
class SpectralField {
 public:
  SpectralField(Grid grid, std::vector<std::complex<double>> coefficients);
  explicit SpectralField(Grid grid);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const std::complex<double>> coefficients() const noexcept { return coeffs_; }
  std::span<std::complex<double>> coefficients() noexcept { return coeffs_; }
  size_t size() const noexcept { return coeffs_.size(); }

  /// Coefficient for signed wavevector k, each component in [-n/2, n/2).
  std::complex<double> at(std::span<const int> k) const;

 private:
  Grid grid_;
  std::vector<std::complex<double>> coeffs_;
};

/// Grid quadrature of the L^p norm; p = kInf gives the node maximum.
double lp_norm(const GridField& f, double p);
double lp_norm(std::span<const double> values, const Grid& grid, double p);

/// h^d * sum of node values.
double spatial_average(const GridField& f);

SpectralField to_spectral(const GridField& f);
GridField from_spectral(const SpectralField& s);

/// sqrt(sum |c_k|^2), equal to the grid L^2 norm by Parseval.
double spectral_l2_norm(const SpectralField& s);

}  // namespace ergodamp
