#include "ergodamp/inviscid.hpp"

#include <cmath>

#include "ergodamp/parallel.hpp"

namespace ergodamp {

namespace {

constexpr double kNegativeDampingTol = 1e-12;

void check_times(std::span<const double> times) {
  double prev = 0.0;
  for (double t : times) {
    if (!std::isfinite(t) || t < 0.0) throw InvalidParameter("inviscid solve needs nonnegative finite times");
    if (t < prev) throw InvalidInput("time grid must be nondecreasing");
    prev = t;
  }
}

// values[k][i]: quantity at time k and node i
using TimeNodeTable = std::vector<std::vector<double>>;

}  // namespace

InviscidProblem make_inviscid_problem(FourierVectorField field, GridField damping, GridField initial,
                                      FlowSettings settings, std::string id) {
  if (damping.grid().dim() != field.dim() || initial.grid().dim() != field.dim())
    throw InvalidParameter("field, damping and initial datum must share the dimension");
  if (damping.grid() != initial.grid()) throw InvalidParameter("damping and initial datum must share a grid");
  if (damping.min() < -kNegativeDampingTol) throw InvalidParameter("damping must be nonnegative");
  if (!check_divergence_free(field).divergence_free) throw InvalidSpec("vector field is not divergence-free");
  return {FlowMap(std::move(field), settings), std::move(damping), std::move(initial), std::move(id)};
}

std::vector<InviscidSolution> solve_inviscid(const InviscidProblem& prob, std::span<const double> times) {
  check_times(times);
  const Grid& grid = prob.initial.grid();
  const FieldInterpolant phi(prob.damping);
  const FieldInterpolant theta0(prob.initial);

  std::vector<InviscidSolution> out;
  out.reserve(times.size());
  for (double t : times) out.push_back({t, GridField(grid)});

  parallel_for(grid.size(), [&](size_t i) {
    const TorusPoint y = grid.node(i);
    const OrbitTrace tr = prob.flow.trace(y, times, -1, &phi);
    for (size_t k = 0; k < times.size(); ++k) {
      const double foot = times[k] == 0.0 ? prob.initial[i] : theta0(TorusPoint(tr.lifted[k]));
      out[k].field[i] = foot * std::exp(-tr.damping[k]);
    }
  });
  return out;
}

InviscidSolution solve_inviscid(const InviscidProblem& prob, double t) {
  const double times[] = {t};
  return std::move(solve_inviscid(prob, times).front());
}

CrossValidatedHistory norm_history_inviscid(const InviscidProblem& prob, std::span<const double> times,
                                            std::span<const double> orders, bool with_lagrangian) {
  check_times(times);
  const Grid& grid = prob.initial.grid();
  std::vector<double> tv(times.begin(), times.end());
  std::vector<double> pv(orders.begin(), orders.end());
  CrossValidatedHistory h{NormHistory(tv, pv), NormHistory(tv, pv), 0.0};
  h.eulerian.problem_id = h.lagrangian.problem_id = prob.id;

  const auto solutions = solve_inviscid(prob, times);
  for (size_t k = 0; k < times.size(); ++k)
    for (size_t j = 0; j < pv.size(); ++j) h.eulerian.series(j)[k] = lp_norm(solutions[k].field, pv[j]);

  if (!with_lagrangian) return h;

  // |theta0(x)| exp(-V(t, x)) along forward orbits from the initial nodes
  const FieldInterpolant phi(prob.damping);
  TimeNodeTable pulled(times.size(), std::vector<double>(grid.size()));
  parallel_for(grid.size(), [&](size_t i) {
    const OrbitTrace tr = prob.flow.trace(grid.node(i), times, +1, &phi);
    const double a = std::abs(prob.initial[i]);
    for (size_t k = 0; k < times.size(); ++k) pulled[k][i] = a * std::exp(-tr.damping[k]);
  });
  for (size_t k = 0; k < times.size(); ++k)
    for (size_t j = 0; j < pv.size(); ++j) {
      const double lag = lp_norm(pulled[k], grid, pv[j]);
      h.lagrangian.series(j)[k] = lag;
      if (std::isinf(pv[j]) || lag == 0.0) continue;
      h.max_relative_gap = std::max(h.max_relative_gap, std::abs(h.eulerian.series(j)[k] - lag) / lag);
    }
  return h;
}

}  // namespace ergodamp
