#include "ergodamp/viscous.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ergodamp/fft.hpp"

namespace ergodamp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNegativeDampingTol = 1e-12;
// Classical RK4 is stable on the negative real axis down to about -2.785.
constexpr double kRk4RealLimit = 2.785;
constexpr double kMaxAutoStep = 1e-2;

int substeps(double span, double dt) {
  const double n = std::ceil(span / dt - 1e-9);
  return std::max(1, static_cast<int>(n));
}

bool outside_two_thirds(const Grid& grid, const std::array<int, kMaxDim>& idx) {
  const int cut = grid.n() / 3;
  for (int a = 0; a < grid.dim(); ++a)
    if (std::abs(grid.wavenumber(idx[a])) > cut) return true;
  return false;
}

}  // namespace

double stable_time_step(const FourierVectorField& field, const GridField& damping, double cfl) {
  if (!(cfl > 0.0) || cfl > 1.0) throw InvalidParameter("cfl constant must lie in (0, 1]");
  double dt = kInf;
  const double vmax = field.sup_bound();
  if (vmax > 0.0) dt = std::min(dt, cfl * damping.grid().spacing() / vmax);
  const double pmax = damping.max();
  if (pmax > 0.0) dt = std::min(dt, cfl * kRk4RealLimit / pmax);
  return std::min(dt, kMaxAutoStep);
}

ViscousProblem make_viscous_problem(FourierVectorField field, GridField damping, GridField initial, double viscosity,
                                    double dt, double cfl, std::string id) {
  if (!(viscosity > 0.0) || !std::isfinite(viscosity)) throw InvalidParameter("viscosity must be positive");
  if (damping.grid() != initial.grid()) throw InvalidParameter("damping and initial datum must share a grid");
  if (field.dim() != initial.grid().dim()) throw InvalidParameter("vector field and grid dimensions differ");
  if (damping.min() < -kNegativeDampingTol) throw InvalidParameter("damping must be nonnegative");
  if (!check_divergence_free(field).divergence_free) throw InvalidSpec("vector field is not divergence-free");
  const double limit = stable_time_step(field, damping, cfl);
  if (dt == 0.0) {
    dt = limit;
  } else {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("time step must be positive");
    const double vmax = field.sup_bound();
    if (vmax > 0.0 && dt > cfl * initial.grid().spacing() / vmax * (1.0 + 1e-12))
      throw InvalidParameter("time step violates the CFL bound dt <= cfl * h / sup|v|");
    if (dt * damping.max() > kRk4RealLimit) throw InvalidParameter("time step too large for the damping term");
  }
  return {std::move(field), std::move(damping), std::move(initial), viscosity, dt, std::move(id)};
}

void dealias(SpectralField& s) {
  const Grid& g = s.grid();
  auto c = s.coefficients();
  for (size_t i = 0; i < c.size(); ++i)
    if (outside_two_thirds(g, g.multi_index(i))) c[i] = 0.0;
}

ViscousStepper::ViscousStepper(const ViscousProblem& prob)
    : grid_(prob.initial.grid()),
      dim_(grid_.dim()),
      viscosity_(prob.viscosity),
      damping_(prob.damping.values().begin(), prob.damping.values().end()) {
  const size_t n = grid_.size();
  velocity_.assign(dim_, std::vector<double>(n));
  for (size_t i = 0; i < n; ++i) {
    const Vec v = prob.field.evaluate(grid_.node(i));
    for (int a = 0; a < dim_; ++a) velocity_[a][i] = v[a];
  }
  wave_.resize(n);
  k2_.resize(n);
  keep_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const auto idx = grid_.multi_index(i);
    double s = 0.0;
    for (int a = 0; a < dim_; ++a) {
      // the Nyquist mode has no real derivative; it is removed by dealiasing anyway
      const int k = 2 * idx[a] == grid_.n() ? 0 : grid_.wavenumber(idx[a]);
      wave_[i][a] = kTwoPi * k;
      s += wave_[i][a] * wave_[i][a];
    }
    k2_[i] = s;
    keep_[i] = outside_two_thirds(grid_, idx) ? 0 : 1;
  }
  for (auto* buf : {&theta_, &grad_, &acc_, &k1_, &k2s_, &k3_, &k4_, &tmp_}) buf->resize(n);
  e_full_.resize(n);
  e_half_.resize(n);
}

void ViscousStepper::refresh_factors(double h) {
  if (h == cached_h_) return;
  for (size_t i = 0; i < k2_.size(); ++i) {
    e_full_[i] = std::exp(-viscosity_ * k2_[i] * h);
    e_half_[i] = std::exp(-viscosity_ * k2_[i] * 0.5 * h);
  }
  cached_h_ = h;
}

void ViscousStepper::nonlinear(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  const size_t n = grid_.size();
  std::copy(in.begin(), in.end(), theta_.begin());
  fft::inverse(grid_, theta_);
  for (size_t i = 0; i < n; ++i) acc_[i] = -damping_[i] * theta_[i].real();
  for (int a = 0; a < dim_; ++a) {
    const auto& v = velocity_[a];
    bool moving = false;
    for (double x : v) moving = moving || x != 0.0;
    if (!moving) continue;
    for (size_t i = 0; i < n; ++i) grad_[i] = std::complex<double>(-wave_[i][a] * in[i].imag(), wave_[i][a] * in[i].real());
    fft::inverse(grid_, grad_);
    for (size_t i = 0; i < n; ++i) acc_[i] -= v[i] * grad_[i].real();
  }
  std::copy(acc_.begin(), acc_.end(), out.begin());
  fft::forward(grid_, out);
  for (size_t i = 0; i < n; ++i)
    if (!keep_[i]) out[i] = 0.0;
}

void ViscousStepper::advance(SpectralField& state, double h) {
  if (state.grid() != grid_) throw InvalidInput("state grid does not match the problem grid");
  if (!(h > 0.0)) throw InvalidParameter("step length must be positive");
  refresh_factors(h);
  auto u = state.coefficients();
  const size_t n = u.size();

  nonlinear(u, k1_);
  for (size_t i = 0; i < n; ++i) tmp_[i] = e_half_[i] * (u[i] + 0.5 * h * k1_[i]);
  nonlinear(tmp_, k2s_);
  for (size_t i = 0; i < n; ++i) tmp_[i] = e_half_[i] * u[i] + 0.5 * h * k2s_[i];
  nonlinear(tmp_, k3_);
  for (size_t i = 0; i < n; ++i) tmp_[i] = e_full_[i] * u[i] + h * e_half_[i] * k3_[i];
  nonlinear(tmp_, k4_);
  for (size_t i = 0; i < n; ++i)
    u[i] = e_full_[i] * u[i] +
           (h / 6.0) * (e_full_[i] * k1_[i] + 2.0 * e_half_[i] * (k2s_[i] + k3_[i]) + k4_[i]);
}

SpectralField initial_state(const ViscousProblem& prob) {
  SpectralField s = to_spectral(prob.initial);
  dealias(s);
  return s;
}

SpectralField step(const SpectralField& state, const ViscousProblem& prob) {
  ViscousStepper stepper(prob);
  SpectralField out = state;
  stepper.advance(out, prob.dt);
  return out;
}

ViscousResult solve_viscous(const ViscousProblem& prob, std::span<const double> times, std::span<const double> orders,
                            std::span<const double> snapshot_times) {
  std::vector<double> events;
  double prev = -1.0;
  for (double t : times) {
    if (!std::isfinite(t) || t < 0.0) throw InvalidParameter("sample times must be nonnegative and finite");
    if (t <= prev) throw InvalidInput("sample times must be strictly increasing");
    prev = t;
    events.push_back(t);
  }
  for (double t : snapshot_times) {
    if (!std::isfinite(t) || t < 0.0) throw InvalidParameter("snapshot times must be nonnegative and finite");
    events.push_back(t);
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  ViscousResult result;
  result.history = NormHistory(std::vector<double>(times.begin(), times.end()),
                               std::vector<double>(orders.begin(), orders.end()));
  result.history.problem_id = prob.id;
  result.history.viscosity = prob.viscosity;

  ViscousStepper stepper(prob);
  SpectralField state = initial_state(prob);
  double t = 0.0;
  size_t next_sample = 0;
  for (double target : events) {
    if (target > t) {
      const int count = substeps(target - t, prob.dt);
      const double h = (target - t) / count;
      for (int s = 0; s < count; ++s) {
        stepper.advance(state, h);
        ++result.steps;
        double mag = 0.0;
        for (const auto& c : state.coefficients()) mag += std::abs(c.real()) + std::abs(c.imag());
        if (!std::isfinite(mag)) throw Instability(result.steps, t + (s + 1) * h);
      }
      t = target;
    }
    const GridField field = from_spectral(state);
    if (next_sample < times.size() && times[next_sample] == target) {
      for (size_t j = 0; j < orders.size(); ++j) result.history.series(j)[next_sample] = lp_norm(field, orders[j]);
      ++next_sample;
    }
    if (std::find(snapshot_times.begin(), snapshot_times.end(), target) != snapshot_times.end())
      result.snapshots.push_back({target, field});
  }
  return result;
}

double compute_c0(const FourierVectorField& field, const AnalyticField& damping) {
  const double g = damping.gradient_sup();
  return std::max(g * g, 2.0 * lipschitz_estimate(field) + 1.0);
}

double compute_c0(const FourierVectorField&, const GridField&) {
  throw Unsupported("C0 needs a catalog damping field with a certified gradient bound");
}

LogWindow log_window(double c0, double viscosity) {
  if (!(c0 > 0.0) || !std::isfinite(c0)) throw InvalidParameter("C0 must be positive");
  if (std::isnan(viscosity) || viscosity <= 0.0) throw InvalidParameter("viscosity must be positive");
  if (viscosity >= 1.0) throw EmptyWindow("the logarithmic window is empty for viscosity >= 1");
  return {c0, viscosity, std::log(1.0 / viscosity) / c0};
}

}  // namespace ergodamp
