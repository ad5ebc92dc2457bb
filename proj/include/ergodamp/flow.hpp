#pragma once

#include <span>
#include <vector>

#include "ergodamp/interpolation.hpp"
#include "ergodamp/torus.hpp"
#include "ergodamp/vector_field.hpp"

namespace ergodamp {

struct FlowSettings {
  /// Upper bound on the fixed RK4 step; intervals are split into equal steps <= dt.
  double dt = 1e-3;
};

struct Trajectory {
  TorusPoint base;
  std::vector<double> times;
  std::vector<TorusPoint> positions;  // canonical
  std::vector<Vec> lifted;            // unwrapped in R^d
};

/// Positions and accumulated damping along one orbit.
struct OrbitTrace {
  std::vector<Vec> lifted;
  /// integral of phi over the traversed time, |tau| from 0 to times[k]
  std::vector<double> damping;
};

/// Flow map psi(t, x) of dx/dt = v(x) on T^d, integrated with classical RK4.
///
/// Negative times integrate the ODE backwards. The object is immutable and
/// every method may be called concurrently.
class FlowMap {
 public:
  explicit FlowMap(FourierVectorField field, FlowSettings settings = {});

  const FourierVectorField& field() const noexcept { return field_; }
  const FlowSettings& settings() const noexcept { return settings_; }

  TorusPoint flow(double t, const TorusPoint& x) const;
  Vec flow_lifted(double t, const Vec& x) const;

  /// Jacobian of x -> psi(t, x) from the variational equation J' = grad v(psi) J.
  Mat gradient(double t, const TorusPoint& x) const;

  /// Samples psi at the given times (any order, any sign).
  Trajectory trajectory(const TorusPoint& x, std::span<const double> times) const;

  /// Follows the orbit for tau = direction * s, s in [0, times.back()], and
  /// records lifted positions and int_0^{times[k]} phi(psi(direction s, x)) ds.
  /// times must be nonnegative and nondecreasing; direction is +1 or -1.
  /// The quadrature is composite Simpson on the RK4 nodes with cubic Hermite
  /// midpoints, so it is fourth order like the integrator.
  OrbitTrace trace(const TorusPoint& x, std::span<const double> times, int direction,
                   const FieldInterpolant* phi) const;

 private:
  FourierVectorField field_;
  FlowSettings settings_;
};

}  // namespace ergodamp
