#include "ergodamp/birkhoff.hpp"

#include <cmath>
#include <iomanip>

#include "ergodamp/parallel.hpp"

namespace ergodamp {

namespace {

void check_horizon(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidParameter("Birkhoff horizon must be positive");
}

double step_for(double horizon, double dt) { return horizon / std::max(1.0, std::ceil(horizon / dt - 1e-9)); }

}  // namespace

BirkhoffEstimate birkhoff_average(const FieldInterpolant& phi, const FlowMap& map, const TorusPoint& x,
                                  double horizon) {
  check_horizon(horizon);
  const double times[] = {horizon};
  const OrbitTrace tr = map.trace(x, times, +1, &phi);
  return {x, horizon, tr.damping.back() / horizon, step_for(horizon, map.settings().dt)};
}

BirkhoffEstimate birkhoff_average(const GridField& phi, const FlowMap& map, const TorusPoint& x, double horizon) {
  return birkhoff_average(FieldInterpolant(phi), map, x, horizon);
}

DampingAccumulator accumulate_damping(const FieldInterpolant& phi, const FlowMap& map, const TorusPoint& x,
                                      std::span<const double> times) {
  if (times.empty() || times.front() != 0.0) throw InvalidInput("damping time grid must start at 0");
  for (size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw InvalidInput("damping time grid must be strictly increasing");
  OrbitTrace tr = map.trace(x, times, +1, &phi);
  return {x, std::vector<double>(times.begin(), times.end()), std::move(tr.damping)};
}

DampingAccumulator accumulate_damping(const GridField& phi, const FlowMap& map, const TorusPoint& x,
                                      std::span<const double> times) {
  return accumulate_damping(FieldInterpolant(phi), map, x, times);
}

GridField estimate_phi_star(const FieldInterpolant& phi, const FlowMap& map, double horizon, const Grid& probe) {
  check_horizon(horizon);
  if (probe.dim() != map.field().dim()) throw InvalidParameter("probe grid dimension does not match the flow");
  GridField out(probe);
  auto values = out.values();
  parallel_for(probe.size(), [&](size_t i) { values[i] = birkhoff_average(phi, map, probe.node(i), horizon).value; });
  return out;
}

GridField estimate_phi_star(const GridField& phi, const FlowMap& map, double horizon, const Grid& probe) {
  return estimate_phi_star(FieldInterpolant(phi), map, horizon, probe);
}

double uniform_convergence_gap(const FieldInterpolant& phi, const FlowMap& map, double horizon, const Grid& probe) {
  const double mean = spatial_average(GridField(phi.grid(), phi.node_values()));
  const GridField est = estimate_phi_star(phi, map, horizon, probe);
  double gap = 0.0;
  for (double v : est.values()) gap = std::max(gap, std::abs(v - mean));
  return gap;
}

double uniform_convergence_gap(const GridField& phi, const FlowMap& map, double horizon, const Grid& probe) {
  return uniform_convergence_gap(FieldInterpolant(phi), map, horizon, probe);
}

void write_probe_csv(std::ostream& out, const GridField& estimate, double horizon, double mean) {
  const Grid& g = estimate.grid();
  out << "probe";
  for (int a = 0; a < g.dim(); ++a) out << ",x" << a;
  out << ",T,average,gap\n";
  out << std::setprecision(17);
  for (size_t i = 0; i < g.size(); ++i) {
    const TorusPoint x = g.node(i);
    out << i;
    for (int a = 0; a < g.dim(); ++a) out << ',' << x[a];
    out << ',' << horizon << ',' << estimate[i] << ',' << std::abs(estimate[i] - mean) << '\n';
  }
}

}  // namespace ergodamp
