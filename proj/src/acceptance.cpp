#include "ergodamp/acceptance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "ergodamp/analysis.hpp"
#include "ergodamp/birkhoff.hpp"
#include "ergodamp/catalog.hpp"
#include "ergodamp/config.hpp"
#include "ergodamp/ergodicity.hpp"

namespace ergodamp {

namespace {

constexpr double kPi = std::numbers::pi;
const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 4);
  return std::string(buf, res.ptr);
}

// Collects named sub-checks of one criterion.
struct Tally {
  bool ok = true;
  std::string detail;
  void add(const std::string& what, bool pass) {
    ok = ok && pass;
    if (!detail.empty()) detail += ", ";
    detail += what + (pass ? "" : " (FAIL)");
  }
};

std::vector<double> uniform_times(double end, double stride) { return sample_times(end, stride); }

FourierVectorField golden_drift() {
  return FourierVectorField::constant(Vec{1.0, kGolden}, RatioRationality::Irrational);
}

// v = (0.5 + cos 2 pi x2, 0.3 + 0.5 cos 2 pi x1): divergence-free, not constant.
FourierVectorField cellular_field() {
  FourierMode m0, a, b, c, d;
  m0.coeff = {0.5, 0.3, 0.0};
  a.k = {0, 1, 0};
  a.coeff = {0.5, 0.0, 0.0};
  b.k = {0, -1, 0};
  b.coeff = {0.5, 0.0, 0.0};
  c.k = {1, 0, 0};
  c.coeff = {0.0, 0.25, 0.0};
  d.k = {-1, 0, 0};
  d.coeff = {0.0, 0.25, 0.0};
  return FourierVectorField(2, {m0, a, b, c, d});
}

FourierVectorField shear_field() { return FourierVectorField::shear(1.0, 0.5); }

double l2_distance(const GridField& a, const GridField& b) {
  std::vector<double> diff(a.size());
  for (size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return lp_norm(diff, a.grid(), 2.0);
}

// Restriction of a field on an n-grid to the nodes of the n/2-grid.
GridField restrict_to_half(const GridField& f) {
  const Grid& g = f.grid();
  const Grid half(g.dim(), g.n() / 2);
  GridField out(half);
  for (size_t i = 0; i < half.size(); ++i) {
    auto idx = half.multi_index(i);
    for (int a = 0; a < g.dim(); ++a) idx[a] *= 2;
    out[i] = f[g.flat_index(idx)];
  }
  return out;
}

CriterionResult criterion_inviscid_rate() {
  const Grid grid(2, 128);
  const auto phi = AnalyticField::cos_product(2, 1.0, 1.0);
  const auto theta0 = AnalyticField::sine(2, 1.0, 1.0);
  const auto prob = make_inviscid_problem(golden_drift(), phi.sample(grid), theta0.sample(grid), {1e-3}, "c1");
  RateSettings s;
  s.times = uniform_times(100.0, 0.5);
  s.window = {50.0, 100.0};
  s.mu_target = 0.8;
  s.phi_mean = phi.mean();
  s.cross_validate = false;
  const RateReport r = verify_inviscid_rate(prob, s);
  Tally t;
  t.add("mu_hat = " + fmt(r.fit.rate), std::abs(r.fit.rate - 1.0) <= 0.1);
  t.add(r.t0 ? "T0 = " + fmt(*r.t0) : std::string("no T0"), r.t0.has_value());
  t.add("bound e^{-0.8t} after T0", r.bound_ok);
  t.add("final ratio " + fmt(r.final_ratio), r.decayed);
  return {1, "inviscid ergodic decay rate", t.ok, t.detail};
}

CriterionResult criterion_no_decay() {
  const Grid grid(2, 64);
  const auto field = FourierVectorField::constant(Vec{1.0, 0.0});
  const auto verdict = ergodicity_criterion(field).verdict;
  // vanishes for periodic |x2| <= 0.2; initial datum supported in |x2| < 0.1
  const auto phi = AnalyticField::compact_bump(2, 1.0, 0.5, 0.3, 1);
  const auto theta0 = AnalyticField::compact_bump(2, 1.0, 0.0, 0.1, 1);
  const auto prob = make_inviscid_problem(field, phi.sample(grid), theta0.sample(grid), {1e-3}, "c2");
  const NoDecayReport r = verify_no_decay(prob, uniform_times(100.0, 1.0), 2.0, 0.5, 1e-6);
  Tally t;
  t.add("verdict " + to_string(verdict), verdict == ErgodicityVerdict::NotErgodic);
  t.add("max |ratio - 1| = " + fmt(r.max_deviation), r.conserved);
  t.add("min ratio " + fmt(r.min_ratio), r.bounded_below);
  return {2, "non-ergodic counterexample keeps its energy", t.ok, t.detail};
}

CriterionResult criterion_phi_star() {
  const Grid grid(2, 64);
  const auto phi = AnalyticField::cosine(2, 1.0, 0.5, 0);
  const auto theta0 = AnalyticField::sine(2, 1.0, 1.0);
  const auto prob = make_inviscid_problem(shear_field(), phi.sample(grid), theta0.sample(grid), {1e-3}, "c3");
  PhiStarSettings s;
  s.horizon = 1e3;
  s.probe_n = 16;
  s.phi_star_floor = 0.9;
  s.check_time = 60.0;
  s.decay_threshold = 0.01;
  const PhiStarReport r = verify_phi_star_positivity_decay(prob, s);
  Tally t;
  t.add("min phi_star = " + fmt(r.phi_star_min), r.phi_star_min >= 0.9);
  t.add("||theta(60)|| / ||theta0|| = " + fmt(r.norm_ratio), r.decayed);
  return {3, "phi_star positivity gives decay", t.ok, t.detail};
}

CriterionResult criterion_sweep() {
  const Grid grid(2, 128);
  const auto phi = AnalyticField::cos_product(2, 1.0, 1.0);
  const auto theta0 = AnalyticField::sine(2, 1.0, 1.0);
  const auto field = golden_drift();
  const auto base = make_viscous_problem(field, phi.sample(grid), theta0.sample(grid), 1e-2, 0.0, kDefaultCfl, "c4");
  const double c0 = compute_c0(field, phi);
  const std::vector<double> nus{1e-2, 1e-3, 1e-4};
  const SweepReport r = sweep_viscosity(base, nus, 0.5, c0, 2.0);
  Tally t;
  std::string hats;
  for (const auto& e : r.entries) hats += (hats.empty() ? "" : "/") + fmt(e.c_hat);
  t.add("C0 = " + fmt(c0) + ", C_hat = " + hats, r.all_finite);
  t.add("max/min = " + fmt(r.ratio), r.ratio <= 2.0);
  return {4, "viscous log-window uniformity", t.ok, t.detail};
}

CriterionResult criterion_oracles() {
  Tally t;
  const Grid grid(2, 32);
  const auto phi = AnalyticField::cos_product(2, 1.0, 1.0);
  const auto theta0 = AnalyticField::sine(2, 1.0, 1.0);

  {  // (a) v = 0
    const auto zero = FourierVectorField::constant(Vec(2));
    const auto prob = make_inviscid_problem(zero, phi.sample(grid), theta0.sample(grid));
    const std::vector<double> times{0.5, 1.0, 2.0};
    double err = 0.0;
    for (const auto& s : solve_inviscid(prob, times))
      for (size_t i = 0; i < grid.size(); ++i) {
        const auto x = grid.node(i);
        err = std::max(err, std::abs(s.field[i] - theta0.value(x) * std::exp(-s.time * phi.value(x))));
      }
    t.add("(a) " + fmt(err), err <= 1e-10);
  }
  {  // (b) heat eigenmode
    const double nu = 1e-2, tf = 1.0;
    const auto zero = FourierVectorField::constant(Vec(2));
    const auto prob = make_viscous_problem(zero, GridField(grid, 0.0), AnalyticField::sine(2, 0.0, 1.0).sample(grid), nu);
    const std::vector<double> times{0.0, tf};
    const double orders[] = {2.0};
    const auto res = solve_viscous(prob, times, orders);
    const auto& n = res.history.series(0);
    const double expected = n[0] * std::exp(-4.0 * kPi * kPi * nu * tf);
    const double rel = std::abs(n[1] - expected) / expected;
    t.add("(b) " + fmt(rel), rel <= 1e-10);
  }
  const double alpha = 1.0, beta = std::sqrt(2.0);
  const FlowMap map(FourierVectorField::constant(Vec{alpha, beta}, RatioRationality::Irrational));
  const std::vector<TorusPoint> bases{{0.1, 0.2}, {0.37, 0.81}, {0.73, 0.05}, {0.5, 0.5}};
  {  // (c) closed-form V for phi = 1 + cos(2 pi x1)
    const FieldInterpolant cphi(AnalyticField::cosine(2, 1.0, 1.0).sample(grid));
    const std::vector<double> times{0.0, 2.5, 5.0, 10.0};
    double err = 0.0;
    for (const auto& x : bases) {
      const auto acc = accumulate_damping(cphi, map, x, times);
      for (size_t k = 0; k < times.size(); ++k) {
        const double tt = times[k];
        const double exact = tt + (std::sin(2 * kPi * (x[0] + alpha * tt)) - std::sin(2 * kPi * x[0])) / (2 * kPi * alpha);
        err = std::max(err, std::abs(acc.values[k] - exact));
      }
    }
    t.add("(c) " + fmt(err), err <= 1e-6);
  }
  {  // (d) Birkhoff average of cos(2 pi x1)
    const FieldInterpolant cphi(AnalyticField::cosine(2, 0.0, 1.0).sample(grid));
    const double horizon = 10.0;
    double err = 0.0;
    for (const auto& x : bases) {
      const auto est = birkhoff_average(cphi, map, x, horizon);
      const double exact =
          (std::sin(2 * kPi * (x[0] + alpha * horizon)) - std::sin(2 * kPi * x[0])) / (2 * kPi * alpha * horizon);
      err = std::max(err, std::abs(est.value - exact));
    }
    t.add("(d) " + fmt(err), err <= 1e-6);
  }
  return {5, "exact oracles", t.ok, t.detail};
}

CriterionResult criterion_properties() {
  Tally t;
  const FlowMap map(cellular_field());
  const std::vector<TorusPoint> pts{{0.1, 0.2}, {0.37, 0.81}, {0.73, 0.05}};
  {
    double group = 0.0, inverse = 0.0;
    for (const auto& x : pts) {
      group = std::max(group, torus_distance(map.flow(0.7, map.flow(1.3, x)), map.flow(2.0, x)));
      inverse = std::max(inverse, torus_distance(map.flow(-2.0, map.flow(2.0, x)), canonicalize(x)));
    }
    t.add("group law " + fmt(group), group <= 1e-8);
    t.add("inverse " + fmt(inverse), inverse <= 1e-8);
  }
  {
    const double lip = lipschitz_estimate(map.field());
    double det = 0.0;
    bool growth = true;
    for (const auto& x : pts)
      for (double tt : {1.0, 10.0, 25.0, 50.0}) {
        const Mat g = map.gradient(tt, x);
        det = std::max(det, std::abs(g.determinant() - 1.0));
        growth = growth && g.operator_norm() <= std::exp(tt * lip) * (1.0 + 1e-6);
      }
    t.add("|det - 1| " + fmt(det), det <= 1e-6);
    t.add("gradient growth", growth);
  }
  const Grid grid(2, 32);
  const auto phi = AnalyticField::cos_product(2, 1.0, 1.0);
  const auto theta0 = AnalyticField::sine(2, 1.0, 1.0);
  {  // monotone decay and maximum principle, inviscid
    const auto prob = make_inviscid_problem(cellular_field(), phi.sample(grid), theta0.sample(grid));
    const std::vector<double> orders{1.0, 2.0, kInf};
    const auto h = norm_history_inviscid(prob, uniform_times(5.0, 0.25), orders, false).eulerian;
    bool monotone = true;
    for (size_t j = 0; j < orders.size(); ++j) {
      const auto& s = h.series(j);
      for (size_t k = 1; k < s.size(); ++k) monotone = monotone && s[k] <= s[k - 1] * (1.0 + 1e-10);
    }
    const double sup0 = lp_norm(prob.initial, kInf);
    const bool maxp = *std::max_element(h.series(2).begin(), h.series(2).end()) <= sup0 * (1.0 + 1e-8);
    t.add("inviscid L^p monotone", monotone);
    t.add("inviscid maximum principle", maxp);
  }
  {  // viscous monotonicity, maximum principle and odd symmetry
    const auto prob = make_viscous_problem(cellular_field(), phi.sample(grid), theta0.sample(grid), 1e-2);
    const std::vector<double> orders{2.0, kInf};
    const auto res = solve_viscous(prob, uniform_times(2.0, 0.1), orders);
    bool monotone = true;
    const auto& l2 = res.history.series(0);
    for (size_t k = 1; k < l2.size(); ++k) monotone = monotone && l2[k] <= l2[k - 1] * (1.0 + 1e-10);
    const double sup0 = lp_norm(prob.initial, kInf);
    const auto& sup = res.history.series(1);
    t.add("viscous L2 monotone", monotone);
    t.add("viscous maximum principle", *std::max_element(sup.begin(), sup.end()) <= sup0 * (1.0 + 1e-8));

    const auto zero = FourierVectorField::constant(Vec(2));
    const auto odd = make_viscous_problem(zero, phi.sample(grid), AnalyticField::sine(2, 0.0, 1.0).sample(grid), 1e-2);
    const std::vector<double> times = uniform_times(10.0, 0.5);
    const std::vector<double> snap = times;
    const double one[] = {2.0};
    double drift = 0.0;
    for (const auto& s : solve_viscous(odd, times, one, snap).snapshots) drift = std::max(drift, std::abs(spatial_average(s.field)));
    t.add("odd symmetry " + fmt(drift), drift <= 1e-10);
  }
  {  // Parseval
    const Grid g(2, 64);
    const auto f = AnalyticField::random(2, 7, 6, 1.0, 0.3).sample(g);
    const double a = lp_norm(f, 2.0), b = spectral_l2_norm(to_spectral(f));
    const double rel = std::abs(a - b) / a;
    t.add("Parseval " + fmt(rel), rel <= 1e-12);
  }
  {  // Eulerian and Lagrangian histories
    const auto prob = make_inviscid_problem(golden_drift(), phi.sample(grid), theta0.sample(grid));
    const std::vector<double> orders{1.0, 2.0, 4.0};
    const auto h = norm_history_inviscid(prob, uniform_times(100.0, 5.0), orders, true);
    t.add("cross-validation " + fmt(h.max_relative_gap), h.max_relative_gap <= 1e-5);
  }
  return {6, "property suites", t.ok, t.detail};
}

CriterionResult criterion_convergence() {
  Tally t;
  {  // flow integrator
    const auto field = cellular_field();
    const TorusPoint x{0.1, 0.2};
    const double T = 2.0;
    const Vec ref = FlowMap(field, {1e-4}).flow_lifted(T, x.coords());
    std::vector<double> err;
    for (double dt : {0.2, 0.1, 0.05}) err.push_back((FlowMap(field, {dt}).flow_lifted(T, x.coords()) - ref).norm());
    const double r1 = err[0] / err[1], r2 = err[1] / err[2];
    t.add("flow ratios " + fmt(r1) + "/" + fmt(r2), r1 >= 8.0 && r2 >= 8.0);
  }
  const Grid grid(2, 32);
  const auto phi = AnalyticField::cos_product(2, 1.0, 1.0);
  const auto theta0 = AnalyticField::sine(2, 1.0, 1.0);
  {  // viscous time stepping
    const double T = 1.0;
    const auto run = [&](double dt) {
      const auto prob = make_viscous_problem(cellular_field(), phi.sample(grid), theta0.sample(grid), 1e-2, dt);
      const std::vector<double> times{0.0, T};
      const double orders[] = {2.0};
      return solve_viscous(prob, times, orders, std::vector<double>{T}).snapshots.front().field;
    };
    const double dt0 = 0.008;
    const GridField ref = run(dt0 / 64);
    std::vector<double> err;
    for (double dt : {dt0, dt0 / 2, dt0 / 4}) err.push_back(l2_distance(run(dt), ref));
    const double r1 = err[0] / err[1], r2 = err[1] / err[2];
    t.add("viscous ratios " + fmt(r1) + "/" + fmt(r2), r1 >= 8.0 && r2 >= 8.0);
  }
  {  // spatial resolution
    const auto solve_at = [&](int n) {
      const Grid g(2, n);
      const auto prob = make_viscous_problem(golden_drift(), phi.sample(g), theta0.sample(g), 1e-2, 4e-3);
      const std::vector<double> times{0.0, 1.0};
      const double orders[] = {2.0};
      return solve_viscous(prob, times, orders, std::vector<double>{1.0}).snapshots.front().field;
    };
    const double dv = l2_distance(restrict_to_half(solve_at(64)), solve_at(32));
    const auto inv_at = [&](int n) {
      const Grid g(2, n);
      const auto prob = make_inviscid_problem(golden_drift(), phi.sample(g), theta0.sample(g));
      return solve_inviscid(prob, 1.0).field;
    };
    const double di = l2_distance(restrict_to_half(inv_at(64)), inv_at(32));
    t.add("n doubling viscous " + fmt(dv), dv <= 1e-8);
    t.add("n doubling inviscid " + fmt(di), di <= 1e-8);
  }
  return {7, "convergence orders", t.ok, t.detail};
}

}  // namespace

CriterionResult run_criterion(int id) {
  switch (id) {
    case 1:
      return criterion_inviscid_rate();
    case 2:
      return criterion_no_decay();
    case 3:
      return criterion_phi_star();
    case 4:
      return criterion_sweep();
    case 5:
      return criterion_oracles();
    case 6:
      return criterion_properties();
    case 7:
      return criterion_convergence();
    default:
      throw InvalidParameter("acceptance criteria are numbered 1 to 7");
  }
}

std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::vector<int>& ids) {
  std::vector<int> which = ids;
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7};
  std::vector<CriterionResult> results;
  for (int id : which) {
    CriterionResult r;
    try {
      r = run_criterion(id);
    } catch (const Error& e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
    }
    out << (r.passed ? "[PASS] " : "[FAIL] ") << 'C' << r.id << ' ' << r.title << ": " << r.detail << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace ergodamp
