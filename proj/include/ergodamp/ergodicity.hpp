#pragma once

#include <string>
#include <vector>

#include "ergodamp/vector_field.hpp"

namespace ergodamp {

enum class ErgodicityVerdict { UniquelyErgodic, NotErgodic, Undetermined };

std::string to_string(ErgodicityVerdict v);

struct Convergent {
  long long numerator;
  long long denominator;
};

struct ErgodicityReport {
  ErgodicityVerdict verdict = ErgodicityVerdict::Undetermined;
  double a00 = 0.0;
  double b00 = 0.0;
  /// a00 / b00 when b00 != 0.
  double ratio = 0.0;
  /// Leading continued-fraction convergents of |a00 / b00| (at most 20).
  std::vector<Convergent> convergents;
  /// Smallest |v| found by grid search plus local descent, and where.
  double min_speed = 0.0;
  TorusPoint argmin;
  std::vector<std::string> notes;
};

/// Criterion for unique ergodicity of a smooth solenoidal field on T^2:
/// a00 b00 != 0, a00/b00 irrational, and v has no zero.
///
/// Irrationality comes from the field's declared flag. The no-zero test
/// searches a 256^2 grid, refines from the best node, and reports
/// Undetermined when min |v| < 1e-6. Throws UnsupportedDimension when d != 2.
ErgodicityReport ergodicity_criterion(const FourierVectorField& v);

/// Continued-fraction convergents of x >= 0, stopping at `max_terms`,
/// on an exact remainder, or on 64-bit overflow.
std::vector<Convergent> continued_fraction_convergents(double x, int max_terms = 20);

}  // namespace ergodamp
