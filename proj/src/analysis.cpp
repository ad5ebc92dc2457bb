#include "ergodamp/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "ergodamp/birkhoff.hpp"
#include "ergodamp/parallel.hpp"

namespace ergodamp {

namespace {

constexpr size_t kMinFitSamples = 10;
constexpr double kBoundSlack = 1e-12;
// smallest phi_star minimum that counts as positive
constexpr double kPositiveFloor = 1e-6;

}  // namespace

DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> norms, FitWindow window) {
  if (times.size() != norms.size()) throw InvalidInput("times and norms differ in length");
  if (!(window.lo < window.hi)) throw InvalidParameter("fit window needs lo < hi");
  std::vector<double> ts, ys;
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window.lo || times[i] > window.hi) continue;
    if (!(norms[i] > 0.0))
      throw DegenerateFit("zero norm at t = " + std::to_string(times[i]) + "; shorten the fit window");
    ts.push_back(times[i]);
    ys.push_back(std::log(norms[i]));
  }
  if (ts.size() < kMinFitSamples)
    throw InvalidParameter("fit window holds " + std::to_string(ts.size()) + " samples, at least 10 are needed");

  const double m = static_cast<double>(ts.size());
  double tbar = 0.0, ybar = 0.0;
  for (size_t i = 0; i < ts.size(); ++i) {
    tbar += ts[i];
    ybar += ys[i];
  }
  tbar /= m;
  ybar /= m;
  double stt = 0.0, sty = 0.0;
  for (size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - tbar) * (ts[i] - tbar);
    sty += (ts[i] - tbar) * (ys[i] - ybar);
  }
  const double slope = sty / stt;
  DecayFit fit;
  fit.lo = window.lo;
  fit.hi = window.hi;
  fit.rate = -slope;
  fit.intercept = ybar - slope * tbar;
  fit.samples = ts.size();
  for (size_t i = 0; i < ts.size(); ++i)
    fit.residual = std::max(fit.residual, std::abs(ys[i] - (fit.intercept + slope * ts[i])));
  return fit;
}

DecayFit fit_decay_rate(const NormHistory& hist, double p, FitWindow window) {
  return fit_decay_rate(hist.times(), hist.series_for(p), window);
}

std::optional<double> norm_bound_onset(std::span<const double> times, std::span<const double> norms, double norm0,
                                       double mu) {
  std::optional<double> onset;
  for (size_t i = times.size(); i-- > 0;) {
    if (norms[i] > norm0 * std::exp(-mu * times[i]) * (1.0 + kBoundSlack)) break;
    onset = times[i];
  }
  return onset;
}

std::optional<double> uniform_onset(std::span<const double> times, std::span<const double> gaps, double slack) {
  std::optional<double> onset;
  for (size_t i = times.size(); i-- > 0;) {
    if (!(times[i] > 0.0) || !(gaps[i] <= slack)) break;
    onset = times[i];
  }
  return onset;
}

RateReport verify_inviscid_rate(const InviscidProblem& prob, const RateSettings& s) {
  if (s.times.empty()) throw InvalidParameter("rate check needs sample times");
  RateReport r;
  r.mu_target = s.mu_target;
  r.phi_mean = s.phi_mean ? *s.phi_mean : spatial_average(prob.damping);
  std::vector<double> orders{s.p};
  for (double q : s.extra_orders)
    if (std::find(orders.begin(), orders.end(), q) == orders.end()) orders.push_back(q);
  r.histories = norm_history_inviscid(prob, s.times, orders, s.cross_validate);
  const auto& norms = r.histories.eulerian.series(0);
  const double norm0 = lp_norm(prob.initial, s.p);

  r.fit = fit_decay_rate(r.histories.eulerian, s.p, s.window);
  r.final_ratio = norm0 > 0.0 ? norms.back() / norm0 : 0.0;

  // T0 from the uniform closeness of V(t, .)/t to <phi> on a probe grid
  std::vector<double> probe_times;
  if (s.times.front() > 0.0) probe_times.push_back(0.0);
  probe_times.insert(probe_times.end(), s.times.begin(), s.times.end());
  probe_times.erase(std::unique(probe_times.begin(), probe_times.end()), probe_times.end());
  const Grid probe(prob.initial.grid().dim(), s.probe_n);
  const FieldInterpolant phi(prob.damping);
  std::vector<std::vector<double>> v_per_probe(probe.size());
  parallel_for(probe.size(), [&](size_t i) {
    v_per_probe[i] = accumulate_damping(phi, prob.flow, probe.node(i), probe_times).values;
  });
  r.uniform_gaps.assign(s.times.size(), kInf);
  for (size_t k = 0; k < s.times.size(); ++k) {
    const double t = s.times[k];
    if (t <= 0.0) continue;
    const size_t pk = static_cast<size_t>(std::lower_bound(probe_times.begin(), probe_times.end(), t) -
                                          probe_times.begin());
    double gap = 0.0;
    for (const auto& v : v_per_probe) gap = std::max(gap, std::abs(v[pk] / t - r.phi_mean));
    r.uniform_gaps[k] = gap;
  }
  r.t0 = uniform_onset(s.times, r.uniform_gaps, r.phi_mean - s.mu_target);
  r.bound_onset = norm_bound_onset(s.times, norms, norm0, s.mu_target);

  r.decayed = r.final_ratio <= s.decay_threshold;
  r.rate_ok = std::abs(r.fit.rate - r.phi_mean) <= s.rate_tolerance * r.phi_mean;
  if (r.t0) {
    r.bound_ok = true;
    for (size_t k = 0; k < s.times.size(); ++k)
      if (s.times[k] >= *r.t0 && norms[k] > norm0 * std::exp(-s.mu_target * s.times[k]) * (1.0 + kBoundSlack))
        r.bound_ok = false;
  }
  return r;
}

NoDecayReport verify_no_decay(const InviscidProblem& prob, std::span<const double> times, double p, double floor,
                              double conservation_tol) {
  NoDecayReport r;
  const double orders[] = {p};
  r.history = norm_history_inviscid(prob, times, orders, false).eulerian;
  const double norm0 = lp_norm(prob.initial, p);
  if (!(norm0 > 0.0)) throw InvalidParameter("initial datum is identically zero");
  r.min_ratio = kInf;
  for (double n : r.history.series(0)) {
    const double ratio = n / norm0;
    r.min_ratio = std::min(r.min_ratio, ratio);
    r.max_deviation = std::max(r.max_deviation, std::abs(ratio - 1.0));
  }
  r.bounded_below = r.min_ratio >= floor;
  r.conserved = r.max_deviation <= conservation_tol;
  return r;
}

PhiStarReport verify_phi_star_positivity_decay(const InviscidProblem& prob, const PhiStarSettings& s) {
  const Grid probe(prob.initial.grid().dim(), s.probe_n);
  const FieldInterpolant phi(prob.damping);
  PhiStarReport r{estimate_phi_star(phi, prob.flow, s.horizon, probe), {}};
  r.phi_star_min = r.phi_star.min();
  r.hypothesis_holds = r.phi_star_min > kPositiveFloor && r.phi_star_min >= s.phi_star_floor;
  r.check_time = s.check_time;
  const double norm0 = lp_norm(prob.initial, s.p);
  if (!(norm0 > 0.0)) throw InvalidParameter("initial datum is identically zero");
  std::vector<double> times = s.times;
  if (times.empty()) times = {0.0, s.check_time};
  if (times.back() != s.check_time) throw InvalidParameter("phi_star history must end at the check time");
  const double orders[] = {s.p};
  r.history = norm_history_inviscid(prob, times, orders, false).eulerian;
  r.norm_ratio = r.history.series(0).back() / norm0;
  r.decayed = r.norm_ratio <= s.decay_threshold;
  return r;
}

SweepReport sweep_viscosity(const ViscousProblem& base, std::span<const double> viscosities, double mu_target,
                            double c0, double factor, double p, int samples) {
  if (samples < 2) throw InvalidParameter("sweep needs at least two samples per window");
  SweepReport r;
  r.mu_target = mu_target;
  r.c0 = c0;
  r.factor = factor;
  r.entries.resize(viscosities.size());
  for (size_t i = 0; i < viscosities.size(); ++i) {
    r.entries[i].viscosity = viscosities[i];
    r.entries[i].window = log_window(c0, viscosities[i]);
  }
  parallel_for(r.entries.size(), [&](size_t i) {
    SweepEntry& e = r.entries[i];
    ViscousProblem prob = base;
    prob.viscosity = e.viscosity;
    std::vector<double> times(static_cast<size_t>(samples) + 1);
    for (int k = 0; k <= samples; ++k) times[k] = e.window.end * k / samples;
    const double orders[] = {p};
    ViscousResult res = solve_viscous(prob, times, orders);
    const auto& norms = res.history.series(0);
    const double norm0 = norms.front();
    if (!(norm0 > 0.0)) throw InvalidParameter("initial datum is identically zero");
    e.c_hat = 0.0;
    for (size_t k = 0; k < times.size(); ++k) e.c_hat = std::max(e.c_hat, norms[k] * std::exp(mu_target * times[k]) / norm0);
    e.steps = res.steps;
    e.history = std::move(res.history);
  });
  if (!r.entries.empty()) {
    double lo = kInf, hi = 0.0;
    for (const auto& e : r.entries) {
      r.all_finite = r.all_finite && std::isfinite(e.c_hat);
      lo = std::min(lo, e.c_hat);
      hi = std::max(hi, e.c_hat);
    }
    r.ratio = hi / lo;
  }
  return r;
}

}  // namespace ergodamp
