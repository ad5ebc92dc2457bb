#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "ergodamp/catalog.hpp"
#include "ergodamp/inviscid.hpp"

using namespace ergodamp;
using std::numbers::pi;

namespace {

const Grid kGrid(2, 32);

FourierVectorField golden() { return FourierVectorField::constant({1.0, std::numbers::phi}, RatioRationality::Irrational); }

GridField smooth_initial(const Grid& g = kGrid) {
  return GridField::sample(g, [](const TorusPoint& x) {
    return 1.0 + 0.5 * std::sin(2 * pi * x[0]) + 0.25 * std::cos(2 * pi * (x[0] + x[1]));
  });
}

double max_abs_diff(const GridField& a, const GridField& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("zero velocity gives pointwise exponential damping") {
  const auto phi = AnalyticField::cos_product(2, 1.0, 0.8).sample(kGrid);
  const auto theta0 = smooth_initial();
  const auto prob = make_inviscid_problem(FourierVectorField(2, {}), phi, theta0);
  for (double t : {0.0, 0.5, 3.0}) {
    const auto sol = solve_inviscid(prob, t);
    for (size_t i = 0; i < kGrid.size(); ++i) {
      const double expect = theta0[i] * std::exp(-t * phi[i]);
      CHECK(std::abs(sol.field[i] - expect) <= 1e-12 * std::abs(theta0[i]));
    }
  }
}

TEST_CASE("pure transport conserves norms") {
  const auto shear = FourierVectorField::shear(1.0, 0.5);
  const auto theta0 = smooth_initial();
  const auto prob = make_inviscid_problem(shear, GridField(kGrid, 0.0), theta0);
  FlowMap back(shear);
  FieldInterpolant init(theta0);
  for (double t : {1.0, 4.0}) {
    const auto sol = solve_inviscid(prob, t);
    for (size_t i = 0; i < kGrid.size(); i += 37) CHECK(std::abs(sol.field[i] - init(back.flow(-t, kGrid.node(i)))) < 1e-9);
  }
  const std::vector<double> times{0.0, 1.0, 2.0, 5.0};
  const std::vector<double> orders{1.0, 2.0, kInf};
  const auto h = norm_history_inviscid(prob, times, orders);
  for (size_t j = 0; j < orders.size(); ++j)
    for (double v : h.lagrangian.series(j)) CHECK(v == doctest::Approx(h.lagrangian.series(j)[0]).epsilon(1e-12));
  for (double v : h.eulerian.series(1)) CHECK(std::abs(v / h.eulerian.series(1)[0] - 1.0) < 1e-6);
}

TEST_CASE("constant damping factorizes") {
  const double c = 0.3;
  const auto theta0 = smooth_initial();
  const auto prob = make_inviscid_problem(golden(), GridField(kGrid, c), theta0);
  const std::vector<double> times{0.0, 1.0, 2.5, 6.0};
  const std::vector<double> orders{1.0, 2.0, 3.0};
  const auto h = norm_history_inviscid(prob, times, orders);
  for (size_t j = 0; j < orders.size(); ++j) {
    const double n0 = lp_norm(theta0, orders[j]);
    for (size_t k = 0; k < times.size(); ++k) {
      const double expect = std::exp(-c * times[k]) * n0;
      CHECK(std::abs(h.eulerian.series(j)[k] - expect) <= 1e-6 * expect);
      CHECK(std::abs(h.lagrangian.series(j)[k] - expect) <= 1e-12 * expect);
    }
  }
}

TEST_CASE("constant drift with cosine damping matches the characteristic formula") {
  const double alpha = 1.0, beta = std::numbers::phi, t = 10.0;
  const auto phi = AnalyticField::cosine(2, 1.0, 1.0).sample(kGrid);
  auto theta0 = [](double x0, double x1) { return 1.0 + std::sin(2 * pi * x0) * std::cos(2 * pi * x1); };
  const auto prob = make_inviscid_problem(golden(), phi,
                                          GridField::sample(kGrid, [&](const TorusPoint& x) { return theta0(x[0], x[1]); }));
  const auto sol = solve_inviscid(prob, t);
  double err = 0.0;
  for (size_t i = 0; i < kGrid.size(); ++i) {
    const auto y = kGrid.node(i);
    const double V = t + (std::sin(2 * pi * y[0]) - std::sin(2 * pi * (y[0] - alpha * t))) / (2 * pi * alpha);
    const double expect = theta0(y[0] - alpha * t, y[1] - beta * t) * std::exp(-V);
    err = std::max(err, std::abs(sol.field[i] - expect));
  }
  CHECK(err <= 1e-6);
}

TEST_CASE("eulerian and lagrangian histories agree on a uniquely ergodic problem") {
  const Grid g(2, 16);
  const auto prob = make_inviscid_problem(golden(), AnalyticField::cos_product(2, 1.0, 1.0).sample(g),
                                          AnalyticField::sine(2, 1.0, 1.0).sample(g));
  std::vector<double> times;
  for (int k = 0; k <= 10; ++k) times.push_back(10.0 * k);
  const std::vector<double> orders{1.0, 2.0, 4.0, kInf};
  const auto h = norm_history_inviscid(prob, times, orders);
  CHECK(h.max_relative_gap <= 1e-5);
  for (size_t j = 0; j < orders.size(); ++j)
    for (size_t k = 1; k < times.size(); ++k)
      CHECK(h.eulerian.series(j)[k] <= h.eulerian.series(j)[k - 1] * (1 + 1e-10));
}

TEST_CASE("sign preservation and the comparison principle") {
  const auto v = FourierVectorField::shear(0.2, 1.0);
  const auto theta0 = AnalyticField::bump(2, 2.0, 0.5, 0.4).sample(kGrid);
  const auto prob = make_inviscid_problem(v, AnalyticField::cos_product(2, 1.0, 1.0).sample(kGrid), theta0);
  const std::vector<double> times{0.5, 2.0, 5.0};
  const double sup0 = lp_norm(theta0, kInf);
  for (const auto& sol : solve_inviscid(prob, times)) {
    CHECK(sol.field.min() >= -1e-12);
    CHECK(lp_norm(sol.field, kInf) <= sup0 * (1 + 1e-10));
  }
}

TEST_CASE("energy is conserved when the datum avoids the damping support") {
  const auto phi = AnalyticField::compact_bump(2, 1.0, 0.5, 0.2, 1).sample(kGrid);
  const auto theta0 = AnalyticField::compact_bump(2, 1.0, 0.0, 0.2, 1).sample(kGrid);
  const auto prob = make_inviscid_problem(FourierVectorField(2, {}), phi, theta0);
  const std::vector<double> times{0.0, 5.0, 50.0};
  const std::vector<double> orders{2.0};
  const auto h = norm_history_inviscid(prob, times, orders);
  for (double v : h.eulerian.series(0)) CHECK(v == doctest::Approx(h.eulerian.series(0)[0]).epsilon(1e-14));
}

TEST_CASE("solutions compose as a semigroup") {
  const auto phi = AnalyticField::cos_product(2, 1.0, 0.5).sample(kGrid);
  const auto prob = make_inviscid_problem(golden(), phi, smooth_initial());
  const double s = 0.7, t = 0.9;
  const auto mid = solve_inviscid(prob, s);
  const auto restarted = make_inviscid_problem(golden(), phi, mid.field);
  const auto composed = solve_inviscid(restarted, t);
  const auto direct = solve_inviscid(prob, s + t);
  CHECK(max_abs_diff(composed.field, direct.field) <= 1e-6);
}

TEST_CASE("inviscid validation") {
  const auto theta0 = smooth_initial();
  CHECK_THROWS_AS(make_inviscid_problem(golden(), GridField(kGrid, -0.1), theta0), InvalidParameter);
  CHECK_THROWS_AS(make_inviscid_problem(golden(), GridField(Grid(2, 16), 1.0), theta0), InvalidParameter);
  const FourierVectorField compressible(2, {{{1, 0, 0}, {0.5, 0.0, 0.0}}, {{-1, 0, 0}, {0.5, 0.0, 0.0}}});
  CHECK_THROWS_AS(make_inviscid_problem(compressible, GridField(kGrid, 1.0), theta0), InvalidSpec);
  const auto prob = make_inviscid_problem(golden(), GridField(kGrid, 1.0), theta0);
  CHECK_THROWS_AS(solve_inviscid(prob, -1.0), InvalidParameter);
}
