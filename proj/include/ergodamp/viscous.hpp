#pragma once

// Pseudo-spectral solver for  d_t theta + v . grad theta - nu Lap theta = -phi theta.
// Diffusion is integrated exactly through the factor exp(-4 pi^2 nu |k|^2 t);
// advection and damping are advanced with a fourth-order Lawson Runge-Kutta
// step, products formed on the grid and truncated by the 2/3 rule.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "ergodamp/catalog.hpp"
#include "ergodamp/norm_history.hpp"
#include "ergodamp/torus.hpp"
#include "ergodamp/vector_field.hpp"

namespace ergodamp {

/// Default stability constant in dt <= cfl * h / sup|v|.
inline constexpr double kDefaultCfl = 0.5;

struct ViscousProblem {
  FourierVectorField field;
  GridField damping;
  /// Initial datum; its grid is the solver grid.
  GridField initial;
  double viscosity;
  /// Largest time step; sample intervals are split into equal steps no longer than this.
  double dt;
  std::string id;
};

/// Validates and assembles a problem. dt = 0 picks the largest step allowed
/// by the stability bounds. Throws InvalidParameter for nu <= 0, negative
/// damping, mismatched grids or a step that violates the CFL bound, and
/// InvalidSpec for a field that is not divergence-free.
ViscousProblem make_viscous_problem(FourierVectorField field, GridField damping, GridField initial, double viscosity,
                                    double dt = 0.0, double cfl = kDefaultCfl, std::string id = {});

/// Largest step satisfying both the advective CFL bound and real-axis RK4
/// stability for the damping term, capped at 1e-2 so that the damping term
/// is also resolved accurately.
double stable_time_step(const FourierVectorField& field, const GridField& damping, double cfl = kDefaultCfl);

/// Zeroes every coefficient with some |k_a| > n/3.
void dealias(SpectralField& s);

/// Reusable stepping workspace for one problem. Not thread-safe; use one per thread.
class ViscousStepper {
 public:
  explicit ViscousStepper(const ViscousProblem& prob);

  const Grid& grid() const noexcept { return grid_; }

  /// Advances a dealiased state by h (0 < h).
  void advance(SpectralField& state, double h);

  /// -v . grad theta - phi theta, dealiased.
  void nonlinear(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

 private:
  void refresh_factors(double h);

  Grid grid_;
  int dim_;
  double viscosity_;
  std::vector<std::vector<double>> velocity_;  // per component, on the grid
  std::vector<double> damping_;
  std::vector<std::array<double, kMaxDim>> wave_;  // 2 pi k per coefficient
  std::vector<double> k2_;                          // |2 pi k|^2
  std::vector<unsigned char> keep_;                 // 2/3-rule mask
  double cached_h_ = -1.0;
  std::vector<double> e_full_, e_half_;
  std::vector<std::complex<double>> theta_, grad_, acc_;
  std::vector<std::complex<double>> k1_, k2s_, k3_, k4_, tmp_;
};

/// One step of length prob.dt.
SpectralField step(const SpectralField& state, const ViscousProblem& prob);

/// Spectral state of the initial datum after dealiasing.
SpectralField initial_state(const ViscousProblem& prob);

struct Snapshot {
  double time;
  GridField field;
};

struct ViscousResult {
  NormHistory history;
  std::vector<Snapshot> snapshots;
  long steps = 0;
};

/// Advances from t = 0 through the nonnegative increasing sample times,
/// recording grid L^p norms and field snapshots at the requested times.
/// Throws Instability naming the first step whose state is not finite.
ViscousResult solve_viscous(const ViscousProblem& prob, std::span<const double> times, std::span<const double> orders,
                            std::span<const double> snapshot_times = {});

/// max(sup|grad phi|^2, 2 lipschitz_estimate(v) + 1).
double compute_c0(const FourierVectorField& field, const AnalyticField& damping);
/// Sampled damping has no certified gradient bound; always throws Unsupported.
double compute_c0(const FourierVectorField& field, const GridField& damping);

struct LogWindow {
  double c0;
  double viscosity;
  /// ln(1/nu) / c0
  double end;
};

/// Throws EmptyWindow for nu >= 1 and InvalidParameter for nu <= 0 or c0 <= 0.
LogWindow log_window(double c0, double viscosity);

}  // namespace ergodamp
