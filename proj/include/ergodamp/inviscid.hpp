#pragma once

// Solver for the inviscid equation  d_t theta + v . grad theta = -phi theta
// by the method of characteristics:
//   theta(t, y) = theta0(psi(-t, y)) exp(-int_{-t}^0 phi(psi(tau, y)) dtau).

#include <span>
#include <string>
#include <vector>

#include "ergodamp/flow.hpp"
#include "ergodamp/norm_history.hpp"
#include "ergodamp/torus.hpp"

namespace ergodamp {

struct InviscidProblem {
  FlowMap flow;
  GridField damping;
  /// Initial datum; its grid is also the evaluation grid.
  GridField initial;
  std::string id;
};

/// Validates and assembles a problem. Throws InvalidParameter for negative
/// damping or mismatched grids, InvalidSpec for a field that is not divergence-free.
InviscidProblem make_inviscid_problem(FourierVectorField field, GridField damping, GridField initial,
                                      FlowSettings settings = {}, std::string id = {});

struct InviscidSolution {
  double time;
  GridField field;
};

InviscidSolution solve_inviscid(const InviscidProblem& prob, double t);

/// All requested times from one backward trace per node. times must be
/// nonnegative and nondecreasing.
std::vector<InviscidSolution> solve_inviscid(const InviscidProblem& prob, std::span<const double> times);

/// Norm histories computed two ways: from the Eulerian solution on the grid,
/// and by Lagrangian quadrature of |theta0(x)|^p exp(-p V(t, x)) over initial nodes.
struct CrossValidatedHistory {
  NormHistory eulerian;
  NormHistory lagrangian;
  /// max over finite p and sample times of |eulerian - lagrangian| / lagrangian
  double max_relative_gap = 0.0;
};

CrossValidatedHistory norm_history_inviscid(const InviscidProblem& prob, std::span<const double> times,
                                            std::span<const double> orders, bool with_lagrangian = true);

}  // namespace ergodamp
