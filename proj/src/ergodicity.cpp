#include "ergodamp/ergodicity.hpp"

#include <cmath>
#include <limits>

namespace ergodamp {

namespace {

constexpr int kSearchNodes = 256;
constexpr double kZeroSpeed = 1e-6;
constexpr double kDriftZero = 1e-14;
constexpr long long kSmallDenominator = 1000000;

double speed2(const FourierVectorField& v, const TorusPoint& x) {
  const Vec u = v.evaluate(x);
  return u[0] * u[0] + u[1] * u[1];
}

// An undeclared ratio whose expansion terminates with a small denominator is
// taken at face value as rational.
bool exact_small_fraction(const ErgodicityReport& r) {
  if (r.convergents.empty()) return false;
  const auto& c = r.convergents.back();
  if (c.denominator > kSmallDenominator) return false;
  return static_cast<double>(c.numerator) / static_cast<double>(c.denominator) == std::abs(r.ratio);
}

}  // namespace

std::string to_string(ErgodicityVerdict v) {
  switch (v) {
    case ErgodicityVerdict::UniquelyErgodic:
      return "uniquely_ergodic";
    case ErgodicityVerdict::NotErgodic:
      return "not_ergodic";
    default:
      return "undetermined";
  }
}

std::vector<Convergent> continued_fraction_convergents(double x, int max_terms) {
  std::vector<Convergent> out;
  if (!std::isfinite(x) || x < 0) return out;
  long long p_prev = 0, q_prev = 1, p = 1, q = 0;
  double rem = x;
  constexpr double kLimit = 9.0e18;
  for (int i = 0; i < max_terms; ++i) {
    const double a = std::floor(rem);
    if (a > kLimit) break;
    const long double pn = static_cast<long double>(a) * p + p_prev;
    const long double qn = static_cast<long double>(a) * q + q_prev;
    if (pn > kLimit || qn > kLimit) break;
    p_prev = p;
    q_prev = q;
    p = static_cast<long long>(pn);
    q = static_cast<long long>(qn);
    out.push_back({p, q});
    const double frac = rem - a;
    if (frac <= 0.0) break;
    rem = 1.0 / frac;
  }
  return out;
}

ErgodicityReport ergodicity_criterion(const FourierVectorField& v) {
  if (v.dim() != 2) throw UnsupportedDimension("the ergodicity criterion is stated for the 2-torus");
  ErgodicityReport r;
  const Vec drift = v.mean_drift();
  r.a00 = drift[0];
  r.b00 = drift[1];

  // (c) no zero: coarse search, then compass descent from the best node
  double best = std::numeric_limits<double>::infinity();
  TorusPoint arg{0.0, 0.0};
  for (int i = 0; i < kSearchNodes; ++i)
    for (int j = 0; j < kSearchNodes; ++j) {
      const TorusPoint x{double(i) / kSearchNodes, double(j) / kSearchNodes};
      const double s = speed2(v, x);
      if (s < best) {
        best = s;
        arg = x;
      }
    }
  for (double h = 1.0 / kSearchNodes; h > 1e-12; h *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int a = 0; a < 2; ++a)
        for (double sgn : {-1.0, 1.0}) {
          TorusPoint y = arg;
          y[a] += sgn * h;
          const double s = speed2(v, y);
          if (s < best) {
            best = s;
            arg = y;
            moved = true;
          }
        }
    }
  }
  r.min_speed = std::sqrt(best);
  r.argmin = canonicalize(arg);

  const bool zero_drift = std::abs(r.a00) <= kDriftZero || std::abs(r.b00) <= kDriftZero;
  if (!zero_drift) {
    r.ratio = r.a00 / r.b00;
    r.convergents = continued_fraction_convergents(std::abs(r.ratio));
  }

  if (zero_drift) {
    r.verdict = ErgodicityVerdict::NotErgodic;
    r.notes.push_back("a00 * b00 = 0");
  } else if (v.rationality() == RatioRationality::Rational) {
    r.verdict = ErgodicityVerdict::NotErgodic;
    r.notes.push_back("a00 / b00 declared rational");
  } else if (v.rationality() == RatioRationality::Unknown && exact_small_fraction(r)) {
    r.verdict = ErgodicityVerdict::NotErgodic;
    const auto& c = r.convergents.back();
    r.notes.push_back("a00 / b00 is exactly " + std::to_string(c.numerator) + "/" + std::to_string(c.denominator));
  } else if (r.min_speed < kZeroSpeed) {
    r.verdict = ErgodicityVerdict::Undetermined;
    r.notes.push_back("field has a zero or near-zero (min |v| < 1e-6)");
  } else if (v.rationality() == RatioRationality::Unknown) {
    r.verdict = ErgodicityVerdict::Undetermined;
    r.notes.push_back("rationality of a00 / b00 not declared");
  } else {
    r.verdict = ErgodicityVerdict::UniquelyErgodic;
  }
  if (!check_divergence_free(v).divergence_free) r.notes.push_back("field is not divergence-free");
  return r;
}

}  // namespace ergodamp
