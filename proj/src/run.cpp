#include "ergodamp/run.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>

#include "ergodamp/birkhoff.hpp"
#include "ergodamp/ergodicity.hpp"
#include "ergodamp/field_io.hpp"

namespace ergodamp {

using nlohmann::json;

namespace {

std::string short_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

double primary_order(const ExperimentConfig& c) {
  return std::find(c.p.begin(), c.p.end(), 2.0) != c.p.end() ? 2.0 : c.p.front();
}

bool constant_drift(const FourierVectorField& f) {
  for (const auto& m : f.modes())
    for (int a = 0; a < f.dim(); ++a)
      if (m.k[a] != 0) return false;
  return true;
}

class Writer {
 public:
  explicit Writer(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }
  bool enabled() const { return !dir_.empty(); }
  std::string path(const std::string& name) const { return (std::filesystem::path(dir_) / name).string(); }

  template <class Fn>
  void text(const std::string& name, Fn&& fn) const {
    if (!enabled()) return;
    std::ofstream out(path(name));
    if (!out) throw InvalidInput("cannot write '" + path(name) + "'");
    fn(out);
  }

  void snapshot(double t, const GridField& f) const {
    if (enabled()) save_field(path("snapshot_" + short_number(t) + ".field"), f);
  }

 private:
  std::string dir_;
};

struct Context {
  const ExperimentConfig& cfg;
  const Writer& out;
  json& results;
  std::vector<CheckResult>& checks;

  void check(const std::string& name, bool ok, const std::string& detail) { checks.push_back({name, ok, detail}); }
};

json field_diagnostics(const FourierVectorField& field) {
  const auto div = check_divergence_free(field);
  json j{{"sup_bound", field.sup_bound()},
         {"lipschitz_estimate", lipschitz_estimate(field)},
         {"divergence_violation", div.max_violation},
         {"mode_count", field.modes().size()}};
  if (field.dim() == 2) {
    const auto rep = ergodicity_criterion(field);
    json conv = json::array();
    for (const auto& c : rep.convergents) conv.push_back({c.numerator, c.denominator});
    j["ergodicity"] = {{"verdict", to_string(rep.verdict)}, {"a00", rep.a00},       {"b00", rep.b00},
                       {"min_speed", rep.min_speed},       {"notes", rep.notes},    {"convergents", conv}};
  }
  return j;
}

void run_flow(Context& cx, const FourierVectorField& field) {
  const auto& c = cx.cfg;
  const FlowMap map(field, {c.flow_dt});
  const auto times = sample_times(c.t_final, c.output_stride);
  std::vector<TorusPoint> points;
  for (const auto& p : c.points) points.emplace_back(std::span<const double>(p.data(), c.dim));
  if (points.empty()) {
    std::vector<double> x{0.1, 0.2, 0.3};
    points.emplace_back(std::span<const double>(x.data(), c.dim));
  }
  const bool closed_form = constant_drift(field);
  const Vec drift = field.mean_drift();
  double worst = 0.0;
  std::vector<Trajectory> trs;
  for (const auto& p : points) {
    trs.push_back(map.trajectory(p, times));
    for (size_t k = 0; k < times.size(); ++k)
      for (int a = 0; a < c.dim; ++a)
        worst = std::max(worst, std::abs(trs.back().lifted[k][a] - (p[a] + drift[a] * times[k])));
  }
  cx.out.text("trajectory.csv", [&](std::ostream& o) {
    o << "point,t";
    for (int a = 0; a < c.dim; ++a) o << ",x" << a;
    for (int a = 0; a < c.dim; ++a) o << ",lifted" << a;
    o << '\n' << std::setprecision(17);
    for (size_t i = 0; i < trs.size(); ++i)
      for (size_t k = 0; k < times.size(); ++k) {
        o << i << ',' << times[k];
        for (int a = 0; a < c.dim; ++a) o << ',' << trs[i].positions[k][a];
        for (int a = 0; a < c.dim; ++a) o << ',' << trs[i].lifted[k][a];
        o << '\n';
      }
  });
  const Mat jac = map.gradient(c.t_final, points.front());
  cx.results["jacobian_determinant"] = jac.determinant();
  cx.results["jacobian_norm"] = jac.operator_norm();
  cx.results["point_count"] = points.size();
  if (closed_form) {
    cx.results["closed_form_error"] = worst;
    const double scale = std::max(1.0, drift.norm() * c.t_final);
    cx.check("closed_form_orbit", worst <= 1e-9 * scale, "max deviation from x + v t = " + short_number(worst));
  }
}

void run_birkhoff(Context& cx, const FourierVectorField& field, const AnalyticField& damping) {
  const auto& c = cx.cfg;
  const FlowMap map(field, {c.flow_dt});
  const Grid grid(c.dim, c.n);
  const Grid probe(c.dim, c.probe_n);
  const FieldInterpolant phi(damping.sample(grid));
  const GridField est = estimate_phi_star(phi, map, c.horizon, probe);
  const double mean = damping.mean();
  double gap = 0.0;
  for (double v : est.values()) gap = std::max(gap, std::abs(v - mean));
  cx.out.text("probes.csv", [&](std::ostream& o) { write_probe_csv(o, est, c.horizon, mean); });
  cx.results["phi_star_min"] = est.min();
  cx.results["phi_star_max"] = est.max();
  cx.results["uniform_gap"] = gap;
  cx.results["horizon"] = c.horizon;
  if (c.phi_star_floor > 0.0)
    cx.check("phi_star_floor", est.min() >= c.phi_star_floor,
             "min phi_star = " + short_number(est.min()) + ", floor " + short_number(c.phi_star_floor));
}

void run_inviscid(Context& cx, const FourierVectorField& field, const AnalyticField& damping,
                  const AnalyticField& initial) {
  const auto& c = cx.cfg;
  const Grid grid(c.dim, c.n);
  const InviscidProblem prob =
      make_inviscid_problem(field, damping.sample(grid), initial.sample(grid), {c.flow_dt}, "inviscid");
  const auto times = sample_times(c.t_final, c.output_stride);
  const double p = primary_order(c);
  const double mean = damping.mean();
  NormHistory history;

  switch (c.expect) {
    case Expectation::Decay: {
      RateSettings s;
      s.times = times;
      s.p = p;
      s.extra_orders = c.p;
      s.window = c.fit_window.value_or(FitWindow{c.t_final / 2, c.t_final});
      s.mu_target = c.mu_target.value_or(defaults::decay_mu_fraction * mean);
      s.phi_mean = mean;
      s.rate_tolerance = c.rate_tolerance;
      s.decay_threshold = c.decay_threshold.value_or(defaults::decay_threshold);
      s.probe_n = c.probe_n;
      s.cross_validate = c.cross_validate;
      const RateReport r = verify_inviscid_rate(prob, s);
      history = r.histories.eulerian;
      cx.results["phi_mean"] = r.phi_mean;
      cx.results["mu_target"] = r.mu_target;
      cx.results["mu_hat"] = r.fit.rate;
      cx.results["fit"] = {{"lo", r.fit.lo}, {"hi", r.fit.hi}, {"intercept", r.fit.intercept},
                           {"residual", r.fit.residual}, {"samples", r.fit.samples}};
      cx.results["t0"] = optional_number(r.t0);
      cx.results["bound_onset"] = optional_number(r.bound_onset);
      cx.results["final_ratio"] = r.final_ratio;
      cx.check("decay", r.decayed, "final norm ratio " + short_number(r.final_ratio));
      cx.check("rate", r.rate_ok,
               "mu_hat = " + short_number(r.fit.rate) + ", <phi> = " + short_number(r.phi_mean));
      cx.check("bound_after_t0", r.bound_ok,
               r.t0 ? "T0 = " + short_number(*r.t0) : std::string("no T0: Birkhoff gap never settles"));
      if (c.cross_validate) {
        cx.results["cross_validation_gap"] = r.histories.max_relative_gap;
        cx.check("cross_validation", r.histories.max_relative_gap <= defaults::cross_validation_tol,
                 "max relative gap " + short_number(r.histories.max_relative_gap));
        cx.out.text("lagrangian_history.csv", [&](std::ostream& o) { r.histories.lagrangian.write_csv(o); });
      }
      break;
    }
    case Expectation::NoDecay: {
      const NoDecayReport r = verify_no_decay(prob, times, p, defaults::no_decay_floor, defaults::conservation_tol);
      history = r.history;
      cx.results["min_ratio"] = r.min_ratio;
      cx.results["max_deviation"] = r.max_deviation;
      cx.results["note"] = "no decay (expected)";
      cx.check("no_decay", r.bounded_below, "min norm ratio " + short_number(r.min_ratio));
      cx.check("conserved", r.conserved, "max deviation " + short_number(r.max_deviation));
      break;
    }
    case Expectation::PhiStarDecay: {
      PhiStarSettings s;
      s.times = times;
      s.horizon = c.horizon;
      s.probe_n = c.probe_n;
      s.phi_star_floor = c.phi_star_floor;
      s.check_time = c.t_final;
      s.decay_threshold = c.decay_threshold.value_or(defaults::phi_star_decay_threshold);
      s.p = p;
      const PhiStarReport r = verify_phi_star_positivity_decay(prob, s);
      history = r.history;
      cx.out.text("probes.csv", [&](std::ostream& o) { write_probe_csv(o, r.phi_star, c.horizon, mean); });
      cx.results["phi_star_min"] = r.phi_star_min;
      cx.results["norm_ratio"] = r.norm_ratio;
      cx.check("phi_star_positive", r.hypothesis_holds, "min phi_star = " + short_number(r.phi_star_min));
      cx.check("decay", r.decayed, "norm ratio at t_final " + short_number(r.norm_ratio));
      break;
    }
  }
  cx.out.text("history.csv", [&](std::ostream& o) { history.write_csv(o); });
  if (!c.snapshots.empty() && cx.out.enabled()) {
    std::vector<double> snaps = c.snapshots;
    std::sort(snaps.begin(), snaps.end());
    for (const auto& s : solve_inviscid(prob, snaps)) cx.out.snapshot(s.time, s.field);
  }
}

double resolve_c0(const ExperimentConfig& c, const FourierVectorField& field, const AnalyticField& damping) {
  return c.c0 ? *c.c0 : compute_c0(field, damping);
}

void run_viscous(Context& cx, const FourierVectorField& field, const AnalyticField& damping,
                 const AnalyticField& initial) {
  const auto& c = cx.cfg;
  const Grid grid(c.dim, c.n);
  const ViscousProblem prob =
      make_viscous_problem(field, damping.sample(grid), initial.sample(grid), c.viscosity, c.dt, c.cfl, "viscous");
  const auto times = sample_times(c.t_final, c.output_stride);
  const ViscousResult res = solve_viscous(prob, times, c.p, c.snapshots);
  const double c0 = resolve_c0(c, field, damping);
  cx.results["c0"] = c0;
  cx.results["dt"] = prob.dt;
  cx.results["steps"] = res.steps;
  cx.results["viscosity"] = c.viscosity;
  cx.results["phi_mean"] = damping.mean();
  cx.results["log_window_end"] = c.viscosity < 1.0 ? json(log_window(c0, c.viscosity).end) : json(nullptr);
  if (c.fit_window) {
    const DecayFit fit = fit_decay_rate(res.history, primary_order(c), *c.fit_window);
    cx.results["mu_hat"] = fit.rate;
    cx.results["fit"] = {{"lo", fit.lo}, {"hi", fit.hi}, {"intercept", fit.intercept}, {"residual", fit.residual}};
  }
  if (std::find(c.p.begin(), c.p.end(), 2.0) != c.p.end()) {
    const auto& l2 = res.history.series_for(2.0);
    bool monotone = true;
    for (size_t k = 1; k < l2.size(); ++k) monotone = monotone && l2[k] <= l2[k - 1] * (1.0 + 1e-10);
    cx.check("l2_monotone", monotone, "L2 norm nonincreasing along the samples");
  }
  cx.out.text("history.csv", [&](std::ostream& o) { res.history.write_csv(o); });
  for (const auto& s : res.snapshots) cx.out.snapshot(s.time, s.field);
}

void run_sweep(Context& cx, const FourierVectorField& field, const AnalyticField& damping,
               const AnalyticField& initial) {
  const auto& c = cx.cfg;
  const Grid grid(c.dim, c.n);
  const double base_nu = c.viscosities.empty() ? c.viscosity : c.viscosities.front();
  const ViscousProblem base =
      make_viscous_problem(field, damping.sample(grid), initial.sample(grid), base_nu, c.dt, c.cfl, "sweep");
  const double c0 = resolve_c0(c, field, damping);
  const double mu = c.mu_target.value_or(defaults::sweep_mu_fraction * damping.mean());
  const SweepReport r =
      sweep_viscosity(base, c.viscosities, mu, c0, c.uniformity_factor, primary_order(c), defaults::sweep_samples);
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"viscosity", e.viscosity}, {"log_window_end", e.window.end}, {"c_hat", e.c_hat}, {"steps", e.steps}});
  cx.results["c0"] = c0;
  cx.results["mu_target"] = mu;
  cx.results["phi_mean"] = damping.mean();
  cx.results["entries"] = entries;
  cx.results["c_hat_ratio"] = r.ratio;
  cx.check("c_hat_finite", r.all_finite, "every C_hat finite");
  cx.check("uniformity", r.ratio <= r.factor,
           "max/min C_hat = " + short_number(r.ratio) + ", factor " + short_number(r.factor));
  cx.out.text("history.csv", [&](std::ostream& o) {
    bool header = true;
    for (const auto& e : r.entries) {
      e.history.write_csv(o, header);
      header = false;
    }
  });
}

}  // namespace

std::string version_string() { return ERGODAMP_VERSION; }

bool RunSummary::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

json RunSummary::to_json() const {
  json checks_json = json::object();
  for (const auto& c : checks) checks_json[c.name] = {{"passed", c.passed}, {"detail", c.detail}};
  return {{"version", version_string()},
          {"kind", to_string(config.kind)},
          {"config", emit_config(config)},
          {"results", results},
          {"checks", checks_json},
          {"passed", passed()},
          {"wall_clock_seconds", wall_clock_seconds}};
}

RunSummary run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  RunSummary summary;
  summary.config = config;
  summary.results = json::object();
  const Writer out(out_dir);
  Context cx{config, out, summary.results, summary.checks};
  try {
    const FourierVectorField field = build_field(config);
    const AnalyticField damping = build_damping(config);
    const AnalyticField initial = build_initial(config);
    summary.results["field"] = field_diagnostics(field);
    switch (config.kind) {
      case ExperimentKind::Flow:
        run_flow(cx, field);
        break;
      case ExperimentKind::Birkhoff:
        run_birkhoff(cx, field, damping);
        break;
      case ExperimentKind::Inviscid:
        run_inviscid(cx, field, damping, initial);
        break;
      case ExperimentKind::Viscous:
        run_viscous(cx, field, damping, initial);
        break;
      case ExperimentKind::Sweep:
        run_sweep(cx, field, damping, initial);
        break;
    }
  } catch (const Error& e) {
    summary.checks.push_back({"run", false, e.what()});
  }
  summary.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.text("summary.json", [&](std::ostream& o) { o << summary.to_json().dump(2) << '\n'; });
  return summary;
}

}  // namespace ergodamp
