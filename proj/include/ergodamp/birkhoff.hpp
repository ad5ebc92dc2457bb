#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "ergodamp/flow.hpp"
#include "ergodamp/interpolation.hpp"
#include "ergodamp/torus.hpp"

namespace ergodamp {

/// Finite-horizon time average (1/T) int_0^T phi(psi(tau, x)) dtau.
struct BirkhoffEstimate {
  TorusPoint base;
  double horizon = 0.0;
  double value = 0.0;
  /// Largest quadrature node spacing used along the orbit.
  double step = 0.0;
};

/// Running integral V(t_k, x) = int_0^{t_k} phi(psi(tau, x)) dtau.
struct DampingAccumulator {
  TorusPoint base;
  std::vector<double> times;
  std::vector<double> values;
};

BirkhoffEstimate birkhoff_average(const FieldInterpolant& phi, const FlowMap& map, const TorusPoint& x, double horizon);
BirkhoffEstimate birkhoff_average(const GridField& phi, const FlowMap& map, const TorusPoint& x, double horizon);

/// times must start at 0 and be strictly increasing.
DampingAccumulator accumulate_damping(const FieldInterpolant& phi, const FlowMap& map, const TorusPoint& x,
                                      std::span<const double> times);
DampingAccumulator accumulate_damping(const GridField& phi, const FlowMap& map, const TorusPoint& x,
                                      std::span<const double> times);

/// Birkhoff averages at every node of a probe grid, returned as a field on that grid.
GridField estimate_phi_star(const FieldInterpolant& phi, const FlowMap& map, double horizon, const Grid& probe);
GridField estimate_phi_star(const GridField& phi, const FlowMap& map, double horizon, const Grid& probe);

/// max over probe nodes of |average - <phi>|, with <phi> the grid mean of phi.
double uniform_convergence_gap(const FieldInterpolant& phi, const FlowMap& map, double horizon, const Grid& probe);
double uniform_convergence_gap(const GridField& phi, const FlowMap& map, double horizon, const Grid& probe);

/// Writes "probe,x0,..,T,average,gap" rows for a probe-grid estimate.
void write_probe_csv(std::ostream& out, const GridField& estimate, double horizon, double mean);

}  // namespace ergodamp
