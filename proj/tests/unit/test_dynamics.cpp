#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "ergodamp/catalog.hpp"
#include "ergodamp/ergodicity.hpp"
#include "ergodamp/flow.hpp"
#include "ergodamp/vector_field.hpp"

using namespace ergodamp;
using std::numbers::pi;
using cd = std::complex<double>;

namespace {

FourierMode mode(int k0, int k1, cd c0, cd c1) {
  FourierMode m;
  m.k = {k0, k1, 0};
  m.coeff = {c0, c1, 0.0};
  return m;
}

// v = (0.5 + cos 2 pi x2, 0.3 + 0.5 cos 2 pi x1)
FourierVectorField cellular() {
  return FourierVectorField(2, {mode(0, 0, 0.5, 0.3), mode(0, 1, 0.5, 0.0), mode(0, -1, 0.5, 0.0),
                                mode(1, 0, 0.0, 0.25), mode(-1, 0, 0.0, 0.25)});
}

// Stream function sin(2 pi x1) sin(2 pi x2) / (2 pi): v = (sin a cos b, -cos a sin b).
FourierVectorField vortex() {
  const cd i(0.0, 1.0);
  return FourierVectorField(2, {mode(1, 1, -i * 0.25, i * 0.25), mode(-1, -1, i * 0.25, -i * 0.25),
                                mode(1, -1, -i * 0.25, -i * 0.25), mode(-1, 1, i * 0.25, i * 0.25)});
}

std::vector<FourierVectorField> solenoidal_catalog() {
  return {FourierVectorField::constant({1.0, std::numbers::phi}), FourierVectorField::shear(1.0, 0.5), cellular(),
          vortex()};
}

TorusPoint random_point(std::mt19937& eng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {u(eng), u(eng)};
}

}  // namespace

TEST_CASE("evaluate_field examples") {
  const auto c = FourierVectorField::constant({1.0, std::sqrt(2.0)});
  const auto v = c.evaluate({0.31, 0.77});
  CHECK(v[0] == 1.0);
  CHECK(v[1] == std::sqrt(2.0));

  const auto shear = FourierVectorField::shear(0.0, 1.0);
  const auto s = shear.evaluate({0.4, 0.0});
  CHECK(s[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(s[1]) < 1e-15);

  const FourierVectorField zero(2, {});
  CHECK(zero.evaluate({0.1, 0.2}).norm() == 0.0);

  const auto vx = vortex().evaluate({0.1, 0.35});
  CHECK(vx[0] == doctest::Approx(std::sin(2 * pi * 0.1) * std::cos(2 * pi * 0.35)).epsilon(1e-14));
  CHECK(vx[1] == doctest::Approx(-std::cos(2 * pi * 0.1) * std::sin(2 * pi * 0.35)).epsilon(1e-14));
}

TEST_CASE("non-Hermitian and duplicate modes are rejected") {
  CHECK_THROWS_AS(FourierVectorField(2, {mode(1, 0, 0.0, 1.0)}), InvalidSpec);
  CHECK_THROWS_AS(FourierVectorField(2, {mode(0, 0, cd(1.0, 0.5), 0.0)}), InvalidSpec);
  CHECK_THROWS_AS(FourierVectorField(2, {mode(0, 0, 1.0, 0.0), mode(0, 0, 1.0, 0.0)}), InvalidSpec);
}

TEST_CASE("divergence check examples") {
  const auto c = check_divergence_free(FourierVectorField::constant({1.0, 2.0}));
  CHECK(c.divergence_free);
  CHECK(c.max_violation == 0.0);
  CHECK(check_divergence_free(FourierVectorField::shear(0.0, 1.0)).divergence_free);
  for (const auto& f : solenoidal_catalog()) CHECK(check_divergence_free(f).divergence_free);

  const FourierVectorField comp(2, {mode(1, 0, 0.5, 0.0), mode(-1, 0, 0.5, 0.0)});
  const auto bad = check_divergence_free(comp);
  CHECK_FALSE(bad.divergence_free);
  CHECK(bad.max_violation == doctest::Approx(0.5));
}

TEST_CASE("lipschitz estimate") {
  CHECK(lipschitz_estimate(FourierVectorField::constant({1.0, 2.0})) == 0.0);
  CHECK(lipschitz_estimate(FourierVectorField::shear(0.0, 1.0)) == doctest::Approx(2 * pi).epsilon(1e-15));
  CHECK(lipschitz_estimate(FourierVectorField::shear(0.0, -3.0)) == doctest::Approx(6 * pi).epsilon(1e-15));
  // the bound dominates the sampled gradient norm
  std::mt19937 eng(1);
  for (const auto& f : solenoidal_catalog()) {
    const double lip = lipschitz_estimate(f);
    for (int i = 0; i < 200; ++i) {
      Mat g;
      f.evaluate(random_point(eng), g);
      CHECK(g.operator_norm() <= lip * (1 + 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("velocity gradient matches finite differences") {
  std::mt19937 eng(2);
  const double h = 1e-6;
  for (const auto& f : solenoidal_catalog()) {
    for (int i = 0; i < 20; ++i) {
      const auto x = random_point(eng);
      Mat g;
      f.evaluate(x, g);
      for (int j = 0; j < 2; ++j) {
        TorusPoint xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        const auto fd = (f.evaluate(xp) - f.evaluate(xm)) * (0.5 / h);
        for (int r = 0; r < 2; ++r) CHECK(std::abs(g(r, j) - fd[r]) < 1e-6);
      }
    }
  }
}

TEST_CASE("ergodicity criterion examples") {
  const auto ue = ergodicity_criterion(FourierVectorField::constant({1.0, std::sqrt(2.0)}, RatioRationality::Irrational));
  CHECK(ue.verdict == ErgodicityVerdict::UniquelyErgodic);
  CHECK(ue.min_speed == doctest::Approx(std::sqrt(3.0)));

  CHECK(ergodicity_criterion(FourierVectorField::constant({1.0, 2.0})).verdict == ErgodicityVerdict::NotErgodic);
  CHECK(ergodicity_criterion(FourierVectorField::constant({1.0, 2.0}, RatioRationality::Rational)).verdict ==
        ErgodicityVerdict::NotErgodic);
  CHECK(ergodicity_criterion(FourierVectorField::shear(0.0, 1.0)).verdict == ErgodicityVerdict::NotErgodic);

  // irrational drift but the field vanishes somewhere
  const FourierVectorField zeroing(2, {mode(0, 0, 0.5, 0.3), mode(0, 1, 0.5, 0.0), mode(0, -1, 0.5, 0.0),
                                       mode(1, 0, 0.0, 0.25), mode(-1, 0, 0.0, 0.25)},
                                   RatioRationality::Irrational);
  const auto und = ergodicity_criterion(zeroing);
  CHECK(und.verdict == ErgodicityVerdict::Undetermined);
  CHECK(und.min_speed < 1e-6);

  // irrationality that is not declared cannot be certified
  CHECK(ergodicity_criterion(FourierVectorField::constant({1.0, std::sqrt(2.0)})).verdict ==
        ErgodicityVerdict::Undetermined);

  CHECK_THROWS_AS(ergodicity_criterion(FourierVectorField::constant({1.0, 2.0, 3.0})), UnsupportedDimension);
}

TEST_CASE("continued fraction convergents") {
  const auto golden = continued_fraction_convergents(std::numbers::phi, 10);
  REQUIRE(golden.size() == 10);
  long long a = 1, b = 1;
  for (const auto& c : golden) {
    CHECK(c.numerator == a);
    CHECK(c.denominator == b);
    const long long next = a + b;
    b = a;
    a = next;
  }
  const auto sqrt2 = continued_fraction_convergents(std::sqrt(2.0), 4);
  CHECK(sqrt2[3].numerator == 17);
  CHECK(sqrt2[3].denominator == 12);
  const auto half = continued_fraction_convergents(0.5);
  CHECK(half.back().numerator == 1);
  CHECK(half.back().denominator == 2);
}

TEST_CASE("flow examples") {
  const double alpha = 0.3, beta = std::numbers::phi;
  FlowMap lin(FourierVectorField::constant({alpha, beta}));
  const TorusPoint x{0.2, 0.9};
  for (double t : {-7.3, 0.5, 12.25}) {
    const auto y = lin.flow(t, x);
    CHECK(torus_distance(y, canonicalize({x[0] + alpha * t, x[1] + beta * t})) < 1e-11);
  }
  const auto y0 = lin.flow(0.0, x);
  CHECK(y0[0] == x[0]);
  CHECK(y0[1] == x[1]);

  FlowMap sh(FourierVectorField::shear(0.25, 1.0));
  for (double t : {-3.0, 4.0}) {
    const auto y = sh.flow(t, x);
    const double f = 0.25 + std::cos(2 * pi * x[1]);
    CHECK(torus_distance(y, canonicalize({x[0] + t * f, x[1]})) < 1e-11);
    const auto j = sh.gradient(t, x);
    CHECK(j(0, 0) == doctest::Approx(1.0));
    CHECK(j(1, 0) == doctest::Approx(0.0));
    CHECK(j(1, 1) == doctest::Approx(1.0));
    CHECK(j(0, 1) == doctest::Approx(-t * 2 * pi * std::sin(2 * pi * x[1])).epsilon(1e-10));
  }
  const auto id = lin.gradient(5.0, x);
  CHECK(id(0, 0) == 1.0);
  CHECK(id(0, 1) == 0.0);
  CHECK_THROWS_AS(lin.flow(kInf, x), InvalidInput);
}

TEST_CASE("flow group law and inverse") {
  std::mt19937 eng(4);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (const auto& f : {cellular(), vortex()}) {
    FlowMap map(f);
    double group = 0.0, inverse = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto x = random_point(eng);
      const double t = u(eng), s = u(eng);
      group = std::max(group, torus_distance(map.flow(t + s, x), map.flow(t, map.flow(s, x))));
      inverse = std::max(inverse, torus_distance(map.flow(-t, map.flow(t, x)), x));
    }
    CHECK(group <= 1e-8);
    CHECK(inverse <= 1e-8);
  }
}

TEST_CASE("trajectory lifted increments are bounded by sup|v|") {
  FlowMap map(cellular());
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) times.push_back(0.25 * k);
  const auto tr = map.trajectory({0.1, 0.2}, times);
  const double vmax = cellular().sup_bound();
  for (size_t k = 1; k < times.size(); ++k) {
    CHECK((tr.lifted[k] - tr.lifted[k - 1]).norm() <= vmax * 0.25 + 1e-9);
    CHECK(torus_distance(tr.positions[k], canonicalize(TorusPoint(tr.lifted[k]))) < 1e-12);
  }
}

TEST_CASE("flow gradient preserves volume and respects the Lipschitz bound") {
  std::mt19937 eng(5);
  std::uniform_real_distribution<double> ut(0.0, 10.0);
  for (const auto& f : solenoidal_catalog()) {
    FlowMap map(f);
    const double lip = lipschitz_estimate(f);
    for (int i = 0; i < 10; ++i) {
      const auto x = random_point(eng);
      const double t = ut(eng);
      const auto j = map.gradient(t, x);
      CHECK(std::abs(j.determinant() - 1.0) <= 1e-6);
      CHECK(j.operator_norm() <= std::exp(t * lip) * (1 + 1e-6));
    }
    CHECK(std::abs(map.gradient(50.0, random_point(eng)).determinant() - 1.0) <= 1e-6);
  }
}

TEST_CASE("flow converges at fourth order") {
  const TorusPoint x{0.3, 0.6};
  const FlowMap ref(cellular(), {1e-4});
  const auto exact = ref.flow(2.0, x);
  double prev = 0.0;
  for (double dt : {0.2, 0.1, 0.05}) {
    const double err = torus_distance(FlowMap(cellular(), {dt}).flow(2.0, x), exact);
    if (prev > 0.0) CHECK(prev / err >= 8.0);
    prev = err;
  }
}

TEST_CASE("catalog fields") {
  const auto cosine = AnalyticField::cosine(2, 1.0, 1.0);
  CHECK(cosine.mean() == 1.0);
  CHECK(cosine.gradient_sup() == doctest::Approx(2 * pi));
  CHECK(cosine.lower_bound() == doctest::Approx(0.0));
  CHECK(AnalyticField::cosine(2, 1.0, 2.0).gradient_sup() == doctest::Approx(4 * pi));
  CHECK(AnalyticField::cos_product(2, 1.0, 1.0).mean() == 1.0);

  const auto cb = AnalyticField::compact_bump(2, 1.0, 0.5, 0.3, 1);
  CHECK(cb.value({0.2, 0.1}) == 0.0);
  CHECK(cb.value({0.2, 0.5}) == doctest::Approx(1.0));
  CHECK(cb.lower_bound() == 0.0);

  // means and gradients against independent quadrature and finite differences
  const std::vector<AnalyticField> fields{AnalyticField::sine(2, 0.5, 2.0, 1, 3), AnalyticField::cos_product(2, 2.0, -1.0),
                                          AnalyticField::bump(2, 1.5, 0.25, 0.4), cb,
                                          AnalyticField::random(2, 42, 3, 1.0, 5.0)};
  std::mt19937 eng(6);
  for (const auto& f : fields) {
    const int m = 400;
    double sum = 0.0, gmax = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) sum += f.value({(i + 0.5) / m, (j + 0.5) / m});
    CHECK(sum / (m * m) == doctest::Approx(f.mean()).epsilon(1e-6));
    for (int i = 0; i < 50; ++i) {
      const auto x = random_point(eng);
      const auto g = f.gradient(x);
      gmax = std::max(gmax, g.norm());
      for (int a = 0; a < 2; ++a) {
        TorusPoint xp = x, xm = x;
        xp[a] += 1e-6;
        xm[a] -= 1e-6;
        CHECK(std::abs(g[a] - (f.value(xp) - f.value(xm)) / 2e-6) < 1e-5 * std::max(1.0, f.gradient_sup()));
      }
      CHECK(f.value(x) >= f.lower_bound() - 1e-12);
    }
    CHECK(gmax <= f.gradient_sup() * (1 + 1e-12));
    CHECK(AnalyticField::parse(f.to_string(), 2) == f);
  }
  CHECK_THROWS_AS(AnalyticField::parse("nosuch a=1", 2), InvalidParameter);
  CHECK_THROWS_AS(AnalyticField::parse("cosine q=1", 2), InvalidParameter);
  CHECK_THROWS_AS(AnalyticField::parse("cosine axis=2", 2), InvalidParameter);
}

TEST_CASE("random catalog entries are reproducible from the seed") {
  const auto a = AnalyticField::random(2, 9, 4, 1.0);
  const auto b = AnalyticField::random(2, 9, 4, 1.0);
  const auto c = AnalyticField::random(2, 10, 4, 1.0);
  CHECK(a.value({0.3, 0.4}) == b.value({0.3, 0.4}));
  CHECK(a.value({0.3, 0.4}) != c.value({0.3, 0.4}));
}
