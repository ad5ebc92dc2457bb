#include "ergodamp/torus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ergodamp/fft.hpp"

namespace ergodamp {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw UnsupportedDimension("dimension must be in [1, " + std::to_string(kMaxDim) +
                               "], got " + std::to_string(dim));
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
std::array<double, kMaxDim> symmetric_eigenvalues(Mat a) {
  const int d = a.dim();
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < d; ++p) {
      for (int q = p + 1; q < d; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < d; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::array<double, kMaxDim> ev{};
  for (int i = 0; i < d; ++i) ev[i] = a(i, i);
  return ev;
}

}  // namespace

// ---------------------------------------------------------------------------
// Vec / Mat

Vec::Vec(std::initializer_list<double> values) : dim_(static_cast<int>(values.size())) {
  check_dim(dim_);
  std::copy(values.begin(), values.end(), v_.begin());
}

Vec::Vec(std::span<const double> values) : dim_(static_cast<int>(values.size())) {
  check_dim(dim_);
  std::copy(values.begin(), values.end(), v_.begin());
}

double Vec::norm() const noexcept {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += v_[i] * v_[i];
  return std::sqrt(s);
}

Mat Mat::identity(int dim) {
  Mat m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

double Mat::determinant() const noexcept {
  const Mat& m = *this;
  switch (dim_) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default:
      return 0.0;
  }
}

double Mat::operator_norm() const {
  Mat ata(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      double s = 0.0;
      for (int k = 0; k < dim_; ++k) s += (*this)(k, i) * (*this)(k, j);
      ata(i, j) = s;
    }
  const auto ev = symmetric_eigenvalues(ata);
  double top = 0.0;
  for (int i = 0; i < dim_; ++i) top = std::max(top, ev[i]);
  return std::sqrt(top);
}

Mat operator*(const Mat& a, const Mat& b) noexcept {
  Mat c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      double s = 0.0;
      for (int k = 0; k < a.dim(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

Mat& Mat::operator+=(const Mat& o) noexcept {
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Mat& Mat::operator*=(double s) noexcept {
  for (auto& x : a_) x *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// points

TorusPoint canonicalize(const TorusPoint& p) {
  TorusPoint out = p;
  for (int i = 0; i < p.dim(); ++i) {
    const double x = p[i];
    if (!std::isfinite(x)) throw InvalidInput("torus coordinate is not finite");
    double r = x - std::floor(x);
    // x slightly below an integer can round up to exactly 1.
    if (r >= 1.0) r = 0.0;
    out[i] = r;
  }
  return out;
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    double d = a[i] - b[i];
    d -= std::round(d);
    s += d * d;
  }
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// grids and fields

Grid::Grid(int dim, int points_per_axis) : dim_(dim), n_(points_per_axis) {
  check_dim(dim);
  if (n_ < 2 || n_ % 2 != 0)
    throw InvalidGrid("points per axis must be a positive even integer, got " + std::to_string(n_));
  size_ = 1;
  for (int i = 0; i < dim_; ++i) size_ *= static_cast<size_t>(n_);
}

double Grid::cell_volume() const noexcept { return 1.0 / static_cast<double>(size_); }

std::array<int, kMaxDim> Grid::multi_index(size_t flat) const noexcept {
  std::array<int, kMaxDim> idx{};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % static_cast<size_t>(n_));
    flat /= static_cast<size_t>(n_);
  }
  return idx;
}

size_t Grid::flat_index(std::span<const int> idx) const noexcept {
  size_t flat = 0;
  for (int a = 0; a < dim_; ++a) flat = flat * static_cast<size_t>(n_) + static_cast<size_t>(idx[a]);
  return flat;
}

TorusPoint Grid::node(size_t flat) const noexcept {
  const auto idx = multi_index(flat);
  TorusPoint p{Vec(dim_)};
  for (int a = 0; a < dim_; ++a) p[a] = static_cast<double>(idx[a]) / n_;
  return p;
}

GridField::GridField(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw InvalidInput("field has " + std::to_string(values_.size()) + " values, grid needs " +
                       std::to_string(grid_.size()));
}

GridField::GridField(Grid grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

GridField GridField::sample(const Grid& grid, const std::function<double(const TorusPoint&)>& f) {
  std::vector<double> v(grid.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = f(grid.node(i));
  return GridField(grid, std::move(v));
}

double GridField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridField::max() const { return *std::max_element(values_.begin(), values_.end()); }

SpectralField::SpectralField(Grid grid, std::vector<std::complex<double>> coefficients)
    : grid_(grid), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != grid_.size()) throw InvalidInput("spectral field size does not match its grid");
}

SpectralField::SpectralField(Grid grid) : grid_(grid), coeffs_(grid.size()) {}

std::complex<double> SpectralField::at(std::span<const int> k) const {
  std::array<int, kMaxDim> idx{};
  const int n = grid_.n();
  for (int a = 0; a < grid_.dim(); ++a) {
    if (k[a] < -n / 2 || k[a] >= n / 2) throw InvalidInput("wavevector outside the grid's band");
    idx[a] = k[a] >= 0 ? k[a] : k[a] + n;
  }
  return coeffs_[grid_.flat_index(idx)];
}

// ---------------------------------------------------------------------------
// quadrature

double lp_norm(std::span<const double> values, const Grid& grid, double p) {
  if (std::isnan(p) || p < 1.0) throw InvalidParameter("norm order p must be >= 1");
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (std::isinf(p) || peak == 0.0) return peak;
  // scale by the peak so that |f|^p neither overflows nor underflows
  double s = 0.0;
  if (p == 2.0) {
    for (double v : values) {
      const double r = v / peak;
      s += r * r;
    }
    return peak * std::sqrt(s * grid.cell_volume());
  }
  for (double v : values) s += std::pow(std::abs(v) / peak, p);
  return peak * std::pow(s * grid.cell_volume(), 1.0 / p);
}

double lp_norm(const GridField& f, double p) { return lp_norm(f.values(), f.grid(), p); }

double spatial_average(const GridField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().cell_volume();
}

SpectralField to_spectral(const GridField& f) {
  std::vector<std::complex<double>> data(f.values().begin(), f.values().end());
  fft::forward(f.grid(), data);
  return SpectralField(f.grid(), std::move(data));
}

GridField from_spectral(const SpectralField& s) {
  std::vector<std::complex<double>> data(s.coefficients().begin(), s.coefficients().end());
  fft::inverse(s.grid(), data);
  std::vector<double> out(data.size());
  for (size_t i = 0; i < data.size(); ++i) out[i] = data[i].real();
  return GridField(s.grid(), std::move(out));
}

double spectral_l2_norm(const SpectralField& s) {
  double acc = 0.0;
  for (const auto& c : s.coefficients()) acc += std::norm(c);
  return std::sqrt(acc);
}

}  // namespace ergodamp
