#pragma once

// Experiment configuration: a flat "key = value" text format with '#'
// comments. Repeatable keys (mode, point, snapshot) accumulate.
//
//   kind = inviscid
//   dim = 2
//   n = 128
//   mode = 0 0  1 0  1.618 0      # wavevector, then re/im per component
//   ratio = irrational
//   damping = cosprod a=1 b=1
//   initial = sine a=1 b=1
//   t_final = 100
//   output_stride = 0.5
//   fit_window = 50 100

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ergodamp/analysis.hpp"
#include "ergodamp/catalog.hpp"
#include "ergodamp/vector_field.hpp"

namespace ergodamp {

enum class ExperimentKind { Flow, Birkhoff, Inviscid, Viscous, Sweep };
enum class Expectation { Decay, NoDecay, PhiStarDecay };

std::string to_string(ExperimentKind k);
std::string to_string(Expectation e);

/// Every numeric default of the experiment pipeline.
namespace defaults {
inline constexpr int dim = 2;
inline constexpr int n = 64;
inline constexpr double viscosity = 1e-3;
inline constexpr double t_final = 10.0;
inline constexpr double output_stride = 0.5;
inline constexpr double flow_dt = 1e-3;
inline constexpr double dt = 0.0;  // automatic
inline constexpr double cfl = 0.5;
inline constexpr double horizon = 100.0;
inline constexpr int probe_n = 16;
inline constexpr double rate_tolerance = 0.1;
inline constexpr double uniformity_factor = 2.0;
inline constexpr double decay_threshold = 1e-3;
inline constexpr double phi_star_decay_threshold = 0.01;
inline constexpr double no_decay_floor = 0.5;
inline constexpr double conservation_tol = 1e-6;
inline constexpr double cross_validation_tol = 1e-5;
inline constexpr double phi_star_floor = 0.0;
inline constexpr int sweep_samples = 50;
inline constexpr std::uint64_t seed = 1;
/// mu_target as a fraction of <phi> for decay checks and for sweeps
inline constexpr double decay_mu_fraction = 0.8;
inline constexpr double sweep_mu_fraction = 0.5;
}  // namespace defaults

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Inviscid;
  int dim = defaults::dim;
  int n = defaults::n;
  std::vector<FourierMode> modes;
  RatioRationality ratio = RatioRationality::Unknown;
  std::string damping = "constant c=1";
  std::string initial = "constant c=1";
  double viscosity = defaults::viscosity;
  std::vector<double> viscosities;
  double t_final = defaults::t_final;
  double output_stride = defaults::output_stride;
  std::vector<double> p{2.0};
  std::optional<FitWindow> fit_window;
  std::optional<double> c0;
  std::optional<double> mu_target;
  double flow_dt = defaults::flow_dt;
  double dt = defaults::dt;
  double cfl = defaults::cfl;
  double horizon = defaults::horizon;
  int probe_n = defaults::probe_n;
  Expectation expect = Expectation::Decay;
  std::uint64_t seed = defaults::seed;
  std::vector<std::array<double, kMaxDim>> points;
  std::vector<double> snapshots;
  double rate_tolerance = defaults::rate_tolerance;
  double uniformity_factor = defaults::uniformity_factor;
  std::optional<double> decay_threshold;
  double phi_star_floor = defaults::phi_star_floor;
  bool cross_validate = true;
  std::string out;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses and validates. Every problem found is collected into one ValidationError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical text form; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& c);

/// Objects built from a validated config.
FourierVectorField build_field(const ExperimentConfig& c);
AnalyticField build_damping(const ExperimentConfig& c);
AnalyticField build_initial(const ExperimentConfig& c);
/// Sample times 0, stride, 2 stride, ..., ending exactly at t_final.
std::vector<double> sample_times(double t_final, double stride);

}  // namespace ergodamp
