#include "ergodamp/vector_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ergodamp {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kDivergenceTol = 1e-14;

bool same_k(const FourierMode& a, const std::array<int, kMaxDim>& k, int dim) {
  for (int i = 0; i < dim; ++i)
    if (a.k[i] != k[i]) return false;
  return true;
}

}  // namespace

std::string to_string(RatioRationality r) {
  switch (r) {
    case RatioRationality::Rational:
      return "rational";
    case RatioRationality::Irrational:
      return "irrational";
    default:
      return "unknown";
  }
}

RatioRationality parse_rationality(const std::string& s) {
  if (s == "rational") return RatioRationality::Rational;
  if (s == "irrational") return RatioRationality::Irrational;
  if (s == "unknown") return RatioRationality::Unknown;
  throw InvalidParameter("rationality must be rational, irrational or unknown, got '" + s + "'");
}

FourierVectorField::FourierVectorField(int dim, std::vector<FourierMode> modes, RatioRationality rationality)
    : dim_(dim), modes_(std::move(modes)), rationality_(rationality), series_(dim, dim) {
  if (dim < 1 || dim > kMaxDim) throw UnsupportedDimension("vector field dimension out of range");
  double scale = 0.0;
  for (const auto& m : modes_)
    for (int c = 0; c < dim_; ++c) {
      if (!std::isfinite(m.coeff[c].real()) || !std::isfinite(m.coeff[c].imag()))
        throw InvalidSpec("vector field coefficient is not finite");
      scale = std::max(scale, std::abs(m.coeff[c]));
    }
  const double tol = kHermitianTol * std::max(1.0, scale);

  for (size_t i = 0; i < modes_.size(); ++i) {
    for (size_t j = i + 1; j < modes_.size(); ++j)
      if (same_k(modes_[j], modes_[i].k, dim_)) throw InvalidSpec("duplicate wavevector in vector field");

    std::array<int, kMaxDim> neg{};
    for (int a = 0; a < dim_; ++a) neg[a] = -modes_[i].k[a];
    const FourierMode* partner = nullptr;
    for (const auto& m : modes_)
      if (same_k(m, neg, dim_)) partner = &m;
    // a mode with all-zero coefficients needs no partner
    double mag = 0.0;
    for (int c = 0; c < dim_; ++c) mag = std::max(mag, std::abs(modes_[i].coeff[c]));
    if (partner == nullptr) {
      if (mag > tol) throw InvalidSpec("vector field is not Hermitian: wavevector has no conjugate partner");
      continue;
    }
    for (int c = 0; c < dim_; ++c)
      if (std::abs(partner->coeff[c] - std::conj(modes_[i].coeff[c])) > tol)
        throw InvalidSpec("vector field is not Hermitian: v_hat(-k) != conj(v_hat(k))");
  }

  for (const auto& m : modes_) series_.add_term(std::span<const int>(m.k.data(), dim_), m.coeff);
  drift_ = mean_drift();
  constant_ = true;
  for (const auto& m : modes_)
    for (int a = 0; a < dim_; ++a) constant_ = constant_ && m.k[a] == 0;
}

FourierVectorField FourierVectorField::constant(const Vec& drift, RatioRationality rationality) {
  FourierMode m;
  for (int c = 0; c < drift.dim(); ++c) m.coeff[c] = drift[c];
  return FourierVectorField(drift.dim(), {m}, rationality);
}

FourierVectorField FourierVectorField::shear(double mean, double amplitude) {
  FourierMode m0, mp, mm;
  m0.coeff[0] = mean;
  mp.k = {0, 1, 0};
  mp.coeff[0] = 0.5 * amplitude;
  mm.k = {0, -1, 0};
  mm.coeff[0] = 0.5 * amplitude;
  return FourierVectorField(2, {m0, mp, mm}, RatioRationality::Unknown);
}

Vec FourierVectorField::evaluate(const TorusPoint& x) const {
  if (constant_) return drift_;
  Vec v(dim_);
  std::array<double, kMaxDim> out{};
  series_.evaluate(x, out);
  for (int c = 0; c < dim_; ++c) v[c] = out[c];
  return v;
}

Vec FourierVectorField::evaluate(const TorusPoint& x, Mat& grad) const {
  Vec v(dim_);
  std::array<double, kMaxDim> out{};
  series_.evaluate_with_gradient(x, out, grad);
  for (int c = 0; c < dim_; ++c) v[c] = out[c];
  return v;
}

Vec FourierVectorField::mean_drift() const {
  Vec v(dim_);
  for (const auto& m : modes_) {
    bool zero = true;
    for (int a = 0; a < dim_; ++a) zero = zero && m.k[a] == 0;
    if (zero)
      for (int c = 0; c < dim_; ++c) v[c] = m.coeff[c].real();
  }
  return v;
}

double FourierVectorField::sup_bound() const {
  std::array<double, kMaxDim> per{};
  for (const auto& m : modes_)
    for (int c = 0; c < dim_; ++c) per[c] += std::abs(m.coeff[c]);
  double s = 0.0;
  for (int c = 0; c < dim_; ++c) s += per[c] * per[c];
  return std::sqrt(s);
}

DivergenceCheck check_divergence_free(const FourierVectorField& v) {
  double worst = 0.0;
  for (const auto& m : v.modes()) {
    std::complex<double> dot = 0.0;
    for (int a = 0; a < v.dim(); ++a) dot += static_cast<double>(m.k[a]) * m.coeff[a];
    worst = std::max(worst, std::abs(dot));
  }
  return {worst <= kDivergenceTol, worst};
}

double lipschitz_estimate(const FourierVectorField& v) {
  double s = 0.0;
  for (const auto& m : v.modes()) {
    double k2 = 0.0, c2 = 0.0;
    for (int a = 0; a < v.dim(); ++a) {
      k2 += double(m.k[a]) * m.k[a];
      c2 += std::norm(m.coeff[a]);
    }
    s += 2.0 * std::numbers::pi * std::sqrt(k2) * std::sqrt(c2);
  }
  return s;
}

}  // namespace ergodamp
