#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "ergodamp/analysis.hpp"
#include "ergodamp/catalog.hpp"

using namespace ergodamp;
using std::numbers::pi;

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> t(count);
  for (int k = 0; k < count; ++k) t[k] = lo + (hi - lo) * k / (count - 1);
  return t;
}

std::vector<double> sample_series(const std::vector<double>& t, double (*f)(double)) {
  std::vector<double> out;
  for (double x : t) out.push_back(f(x));
  return out;
}

InviscidProblem counterexample(const Grid& g) {
  return make_inviscid_problem(FourierVectorField::constant({1.0, 0.0}),
                               AnalyticField::compact_bump(2, 1.0, 0.5, 0.3, 1).sample(g),
                               AnalyticField::compact_bump(2, 1.0, 0.0, 0.1, 1).sample(g));
}

}  // namespace

TEST_CASE("fit recovers an exact exponential") {
  const auto t = linspace(0.0, 50.0, 101);
  const auto n = sample_series(t, [](double x) { return 3.0 * std::exp(-0.7 * x); });
  const auto fit = fit_decay_rate(t, n, {0.0, 50.0});
  CHECK(std::abs(fit.rate - 0.7) <= 1e-12);
  CHECK(fit.residual <= 1e-12);
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(fit.samples == 101);

  for (FitWindow w : {FitWindow{5.0, 20.0}, FitWindow{30.0, 50.0}, FitWindow{12.5, 37.5}})
    CHECK(std::abs(fit_decay_rate(t, n, w).rate - 0.7) <= 1e-12);

  std::vector<double> scaled;
  for (double v : n) scaled.push_back(1e3 * v);
  const auto fs = fit_decay_rate(t, scaled, {0.0, 50.0});
  CHECK(std::abs(fs.rate - fit.rate) <= 1e-12);
  CHECK(fs.intercept - fit.intercept == doctest::Approx(std::log(1e3)).epsilon(1e-12));
}

TEST_CASE("fit of a constant and of an oscillating envelope") {
  const auto t = linspace(0.0, 100.0, 201);
  const std::vector<double> flat(t.size(), 2.0);
  CHECK(std::abs(fit_decay_rate(t, flat, {10.0, 100.0}).rate) <= 1e-14);

  const auto wobbly = sample_series(t, [](double x) { return std::exp(-x) * (2.0 + std::cos(x)); });
  const auto fit = fit_decay_rate(t, wobbly, {10.0, 100.0});
  CHECK(std::abs(fit.rate - 1.0) <= 0.05);
  CHECK(fit.residual <= std::log(3.0));
  CHECK(fit.residual >= 0.0);
}

TEST_CASE("fit errors") {
  const auto t = linspace(0.0, 10.0, 11);
  auto n = sample_series(t, [](double x) { return std::exp(-x); });
  CHECK_THROWS_AS(fit_decay_rate(t, n, {0.0, 5.0}), InvalidParameter);
  n[7] = 0.0;
  CHECK_THROWS_AS(fit_decay_rate(t, n, {0.0, 10.0}), DegenerateFit);
}

TEST_CASE("onset helpers") {
  const std::vector<double> t{0.0, 1.0, 2.0, 3.0, 4.0};
  const std::vector<double> n{1.0, 0.9, 0.2, 0.04, 0.01};
  CHECK(norm_bound_onset(t, n, 1.0, 0.8).value() == 2.0);
  CHECK(norm_bound_onset(t, n, 1.0, 5.0) == std::nullopt);
  const std::vector<double> gaps{9.0, 0.5, 0.1, 0.3, 0.05};
  CHECK(uniform_onset(t, gaps, 0.35).value() == 2.0);
  CHECK(uniform_onset(t, gaps, 0.01) == std::nullopt);
}

TEST_CASE("constant damping gives its rate for any flow") {
  const Grid g(2, 16);
  const double c = 0.5;
  RateSettings s;
  s.times = linspace(0.0, 20.0, 41);
  s.window = {10.0, 20.0};
  s.mu_target = 0.8 * c;
  s.probe_n = 4;
  for (const auto& v : {FourierVectorField::constant({1.0, std::numbers::phi}), FourierVectorField::shear(1.0, 0.5)}) {
    const auto prob = make_inviscid_problem(v, GridField(g, c), AnalyticField::sine(2, 1.0, 1.0).sample(g));
    const auto r = verify_inviscid_rate(prob, s);
    CHECK(std::abs(r.fit.rate - c) <= 1e-6);
    CHECK(r.phi_mean == doctest::Approx(c));
    CHECK(r.t0.value() == s.times[1]);
    CHECK(r.histories.max_relative_gap <= 1e-5);
    CHECK(r.passed());
  }
}

TEST_CASE("the non-ergodic counterexample does not decay") {
  const Grid g(2, 32);
  const auto r = verify_no_decay(counterexample(g), linspace(0.0, 20.0, 21));
  CHECK(r.bounded_below);
  CHECK(r.conserved);
  CHECK(r.min_ratio >= 0.5);
  CHECK(r.max_deviation <= 1e-6);
  CHECK(r.passed());

  PhiStarSettings ps;
  ps.horizon = 50.0;
  ps.probe_n = 8;
  ps.check_time = 20.0;
  const auto star = verify_phi_star_positivity_decay(counterexample(g), ps);
  CHECK(star.phi_star_min <= 1e-9);
  CHECK_FALSE(star.hypothesis_holds);
  CHECK_FALSE(star.passed());
}

TEST_CASE("phi star positivity with constant damping") {
  const Grid g(2, 16);
  const double c = 0.1;
  const auto prob = make_inviscid_problem(FourierVectorField::shear(1.0, 0.5), GridField(g, c),
                                          AnalyticField::cosine(2, 1.0, 0.5, 1).sample(g));
  PhiStarSettings ps;
  ps.horizon = 10.0;
  ps.probe_n = 4;
  const auto r = verify_phi_star_positivity_decay(prob, ps);
  CHECK(r.phi_star_min == doctest::Approx(c).epsilon(1e-12));
  CHECK(r.norm_ratio == doctest::Approx(std::exp(-c * 60.0)).epsilon(1e-6));
  CHECK(r.passed());
}

TEST_CASE("sweep with constant damping has unit constants") {
  const Grid g(2, 16);
  const double c = 0.8;
  const auto base = make_viscous_problem(FourierVectorField::constant({1.0, std::numbers::phi}), GridField(g, c),
                                         AnalyticField::sine(2, 1.0, 1.0).sample(g), 1e-2);
  const std::vector<double> nus{1e-2, 1e-3, 1e-4};
  const double c0 = compute_c0(base.field, AnalyticField::constant(2, c));
  const auto r = sweep_viscosity(base, nus, 0.5 * c, c0, 2.0, 2.0, 20);
  REQUIRE(r.entries.size() == 3);
  for (const auto& e : r.entries) {
    CHECK(std::abs(e.c_hat - 1.0) <= 1e-6);
    CHECK(e.c_hat >= 1.0);
    CHECK(e.window.end == doctest::Approx(std::log(1.0 / e.viscosity) / c0));
    CHECK(e.history.times().back() == doctest::Approx(e.window.end));
  }
  CHECK(r.passed());

  const auto empty = sweep_viscosity(base, {}, 0.4, c0);
  CHECK(empty.entries.empty());
  CHECK(empty.ratio == 1.0);
  CHECK(empty.passed());
}

TEST_CASE("norm history bookkeeping") {
  NormHistory h({0.0, 1.0}, {2.0, kInf});
  h.series(0) = {1.0, 0.5};
  h.series(1) = {2.0, 1.0};
  CHECK(h.series_for(kInf)[1] == 1.0);
  CHECK_THROWS_AS(h.series_for(3.0), InvalidParameter);
  CHECK(format_order(kInf) == "inf");
  CHECK(format_order(2.0) == "2");
  std::ostringstream out;
  h.write_csv(out);
  CHECK(out.str() == "t,p,norm\n0,2,1\n0,inf,2\n1,2,0.5\n1,inf,1\n");
  h.viscosity = 0.01;
  std::ostringstream outv;
  h.write_csv(outv, false);
  CHECK(outv.str().rfind("0,2,1,0.01\n", 0) == 0);
  CHECK_THROWS_AS(NormHistory({1.0, 1.0}, {2.0}), InvalidInput);
  CHECK_THROWS_AS(NormHistory({0.0}, {0.5}), InvalidParameter);
}
