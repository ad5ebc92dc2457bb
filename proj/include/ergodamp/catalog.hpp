#pragma once

// Closed-form scalar fields used as damping coefficients and initial data.
// Each entry knows its exact mean and a bound on its gradient, which the
// log-window constant needs.

#include <map>
#include <string>
#include <vector>

#include "ergodamp/torus.hpp"

namespace ergodamp {

enum class FieldKind {
  Constant,     // c
  Cosine,       // a + b cos(2 pi freq x_axis)
  Sine,         // a + b sin(2 pi freq x_axis)
  CosProduct,   // a + b prod_i cos(2 pi x_i)
  Bump,         // amplitude exp(-(1 - cos 2 pi (x - center)) / sigma^2), on one axis or summed over all
  CompactBump,  // amplitude exp(1 - 1/(1 - (s/radius)^2)) for periodic distance |s| < radius, else 0
  Random,       // offset + amplitude * seeded trigonometric polynomial of degree kmax
};

class AnalyticField {
 public:
  /// Parses "<kind> key=value ...", e.g. "cosprod a=1 b=1". Throws InvalidParameter.
  static AnalyticField parse(const std::string& text, int dim);

  static AnalyticField constant(int dim, double c);
  static AnalyticField cosine(int dim, double a, double b, int axis = 0, int freq = 1);
  static AnalyticField sine(int dim, double a, double b, int axis = 0, int freq = 1);
  static AnalyticField cos_product(int dim, double a, double b);
  static AnalyticField bump(int dim, double amplitude, double center, double sigma, int axis = 0);
  static AnalyticField compact_bump(int dim, double amplitude, double center, double radius, int axis = 0);
  static AnalyticField random(int dim, unsigned long long seed, int kmax, double amplitude, double offset = 0.0);

  FieldKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }

  double value(const TorusPoint& x) const;
  Vec gradient(const TorusPoint& x) const;

  /// Upper bound on sup |grad f| (exact for the trigonometric kinds).
  double gradient_sup() const;
  /// Lower bound on inf f (exact except for Random, where it is a bound).
  double lower_bound() const;
  double mean() const;

  GridField sample(const Grid& grid) const;

  /// Canonical text form; parse(to_string()) reproduces the field.
  std::string to_string() const;

  friend bool operator==(const AnalyticField& a, const AnalyticField& b) {
    return a.kind_ == b.kind_ && a.dim_ == b.dim_ && a.params_ == b.params_;
  }

 private:
  AnalyticField(FieldKind kind, int dim, std::map<std::string, double> params);
  double p(const char* key) const { return params_.at(key); }
  void build_random_terms();

  struct Term {
    std::array<int, kMaxDim> k;
    double cos_coeff;
    double sin_coeff;
  };

  FieldKind kind_;
  int dim_;
  std::map<std::string, double> params_;
  std::vector<Term> random_terms_;
};

std::string to_string(FieldKind kind);

}  // namespace ergodamp
