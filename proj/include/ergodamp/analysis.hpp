#pragma once

// Decay-rate fitting and the comparative experiments built on the inviscid
// and viscous solvers.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ergodamp/inviscid.hpp"
#include "ergodamp/norm_history.hpp"
#include "ergodamp/viscous.hpp"

namespace ergodamp {

struct FitWindow {
  double lo;
  double hi;
  friend bool operator==(const FitWindow&, const FitWindow&) = default;
};

/// Least-squares affine fit of ln ||theta(t)|| over a window; rate = -slope.
struct DecayFit {
  double lo = 0.0;
  double hi = 0.0;
  double rate = 0.0;
  double intercept = 0.0;
  /// max |ln norm - fit| over the window samples
  double residual = 0.0;
  size_t samples = 0;
};

/// Needs at least 10 samples in [lo, hi] (InvalidParameter); a zero norm in the
/// window raises DegenerateFit.
DecayFit fit_decay_rate(const NormHistory& hist, double p, FitWindow window);
DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> norms, FitWindow window);

/// Earliest sample time t_k with norms[j] <= norm0 exp(-mu t_j) for every j >= k.
std::optional<double> norm_bound_onset(std::span<const double> times, std::span<const double> norms, double norm0,
                                       double mu);

/// Earliest positive sample time after which max_x |V(t, x)/t - mean| stays
/// within `slack` at every later sample.
std::optional<double> uniform_onset(std::span<const double> times, std::span<const double> gaps, double slack);

struct RateSettings {
  std::vector<double> times;
  /// order used for the fit and the bound
  double p = 2.0;
  /// further orders recorded in the histories
  std::vector<double> extra_orders;
  FitWindow window{50.0, 100.0};
  double mu_target = 0.8;
  /// exact space average of phi; the grid mean is used when absent
  std::optional<double> phi_mean;
  double rate_tolerance = 0.1;
  /// the final norm must fall below this fraction of the initial one
  double decay_threshold = 1e-3;
  /// probe nodes per axis for the Birkhoff gap that locates T0
  int probe_n = 16;
  bool cross_validate = true;
};

struct RateReport {
  CrossValidatedHistory histories;
  DecayFit fit;
  double phi_mean = 0.0;
  double mu_target = 0.0;
  /// time after which V(t, .)/t stays uniformly within <phi> - mu_target of <phi>
  std::optional<double> t0;
  /// earliest time after which the sampled norms respect the target bound
  std::optional<double> bound_onset;
  std::vector<double> uniform_gaps;
  double final_ratio = 0.0;

  bool decayed = false;
  bool rate_ok = false;
  bool bound_ok = false;
  bool passed() const noexcept { return decayed && rate_ok && bound_ok; }
};

RateReport verify_inviscid_rate(const InviscidProblem& prob, const RateSettings& settings);

/// Expectation for a problem whose hypotheses fail: norms do not decay.
struct NoDecayReport {
  NormHistory history;
  double min_ratio = 0.0;
  /// max_t | ||theta(t)|| / ||theta0|| - 1 |
  double max_deviation = 0.0;
  bool bounded_below = false;
  bool conserved = false;
  bool passed() const noexcept { return bounded_below && conserved; }
};

NoDecayReport verify_no_decay(const InviscidProblem& prob, std::span<const double> times, double p = 2.0,
                              double floor = 0.5, double conservation_tol = 1e-6);

struct PhiStarSettings {
  /// sample times for the norm history; {0, check_time} when empty
  std::vector<double> times;
  double horizon = 1e3;
  int probe_n = 16;
  /// phi_star must stay at or above this on every probe
  double phi_star_floor = 0.0;
  double check_time = 60.0;
  double decay_threshold = 0.01;
  double p = 2.0;
};

struct PhiStarReport {
  GridField phi_star;
  NormHistory history;
  double phi_star_min = 0.0;
  /// phi_star_min above 1e-6 and at or above the configured floor
  bool hypothesis_holds = false;
  double check_time = 0.0;
  double norm_ratio = 0.0;
  bool decayed = false;
  bool passed() const noexcept { return hypothesis_holds && decayed; }
};

PhiStarReport verify_phi_star_positivity_decay(const InviscidProblem& prob, const PhiStarSettings& settings);

struct SweepEntry {
  double viscosity = 0.0;
  LogWindow window{};
  double c_hat = 0.0;
  long steps = 0;
  NormHistory history;
};

struct SweepReport {
  double mu_target = 0.0;
  double c0 = 0.0;
  double factor = 2.0;
  std::vector<SweepEntry> entries;
  /// max c_hat / min c_hat; 1 for an empty sweep
  double ratio = 1.0;
  bool all_finite = true;
  bool passed() const noexcept { return all_finite && ratio <= factor; }
};

/// For each nu solves `base` with that viscosity on [0, T_nu] at `samples`
/// evenly spaced times and records C_hat = max_t ||theta(t)|| e^{mu t} / ||theta0||.
SweepReport sweep_viscosity(const ViscousProblem& base, std::span<const double> viscosities, double mu_target,
                            double c0, double factor = 2.0, double p = 2.0, int samples = 50);

}  // namespace ergodamp
