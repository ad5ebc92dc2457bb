#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "ergodamp/field_io.hpp"
#include "ergodamp/fourier_series.hpp"
#include "ergodamp/interpolation.hpp"
#include "ergodamp/torus.hpp"

using namespace ergodamp;
using std::numbers::pi;

namespace {

// Direct O(N^2) DFT with the library's normalisation, as an independent reference.
std::vector<std::complex<double>> naive_dft(const GridField& f) {
  const Grid& g = f.grid();
  std::vector<std::complex<double>> out(g.size());
  for (size_t kf = 0; kf < g.size(); ++kf) {
    const auto ki = g.multi_index(kf);
    std::complex<double> acc{};
    for (size_t xf = 0; xf < g.size(); ++xf) {
      const auto xi = g.multi_index(xf);
      double phase = 0.0;
      for (int a = 0; a < g.dim(); ++a) phase += double(g.wavenumber(ki[a])) * xi[a] / g.n();
      acc += f[xf] * std::polar(1.0, -2.0 * pi * phase);
    }
    out[kf] = acc / double(g.size());
  }
  return out;
}

GridField random_smooth(const Grid& g, unsigned seed) {
  std::mt19937 eng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = u(eng), b = u(eng), c = u(eng), s = u(eng);
  return GridField::sample(g, [&](const TorusPoint& x) {
    double v = a * std::sin(2 * pi * x[0] + s) + b * std::cos(4 * pi * x[0]);
    if (x.dim() > 1) v += c * std::cos(2 * pi * (x[0] + 2 * x[1]));
    if (x.dim() > 2) v += a * b * std::sin(2 * pi * x[2]);
    return v;
  });
}

}  // namespace

TEST_CASE("canonicalize reduces modulo one") {
  auto p = canonicalize({1.25, -0.5});
  CHECK(p[0] == 0.25);
  CHECK(p[1] == 0.5);
  auto z = canonicalize({0.0, 0.0});
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 0.0);
  auto q = canonicalize({3.0, 2.75});
  CHECK(q[0] == 0.0);
  CHECK(q[1] == 0.75);
  CHECK_THROWS_AS(canonicalize({std::nan(""), 0.0}), InvalidInput);
  CHECK_THROWS_AS(canonicalize({kInf}), InvalidInput);
}

TEST_CASE("canonicalize is idempotent and lands in [0,1)") {
  std::mt19937 eng(7);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    TorusPoint x{u(eng), u(eng), -1e-18 * (i % 3)};
    const auto once = canonicalize(x);
    const auto twice = canonicalize(once);
    for (int a = 0; a < 3; ++a) {
      CHECK(once[a] >= 0.0);
      CHECK(once[a] < 1.0);
      CHECK(twice[a] == once[a]);
      const double shift = x[a] - once[a];
      CHECK(std::abs(shift - std::round(shift)) < 1e-9);
    }
  }
}

TEST_CASE("torus distance uses the nearest periodic image") {
  CHECK(torus_distance({0.05, 0.5}, {0.95, 0.5}) == doctest::Approx(0.1));
  CHECK(torus_distance({0.0}, {0.5}) == doctest::Approx(0.5));
}

TEST_CASE("grid layout") {
  Grid g(2, 8);
  CHECK(g.size() == 64);
  CHECK(g.cell_volume() == doctest::Approx(1.0 / 64));
  const auto node = g.node(g.flat_index(std::array<int, 2>{3, 5}));
  CHECK(node[0] == doctest::Approx(3.0 / 8));
  CHECK(node[1] == doctest::Approx(5.0 / 8));
  CHECK(g.wavenumber(3) == 3);
  CHECK(g.wavenumber(4) == -4);
  CHECK_THROWS_AS(Grid(2, 7), InvalidGrid);
  CHECK_THROWS_AS(Grid(4, 8), UnsupportedDimension);
  CHECK_THROWS(GridField(g, std::vector<double>(10)));
}

TEST_CASE("lp_norm examples") {
  for (int n : {4, 8, 64, 256}) {
    Grid g(1, n);
    const auto s = GridField::sample(g, [](const TorusPoint& x) { return std::sin(2 * pi * x[0]); });
    CHECK(std::abs(lp_norm(s, 2.0) - 1.0 / std::sqrt(2.0)) < 1e-12);
    const auto c = GridField(g, -3.5);
    for (double p : {1.0, 2.0, 3.0, kInf}) CHECK(lp_norm(c, p) == doctest::Approx(3.5).epsilon(1e-14));
  }
  Grid g(1, 64);
  const auto s = GridField::sample(g, [](const TorusPoint& x) { return std::sin(2 * pi * x[0]); });
  double node_max = 0.0;
  for (int i = 0; i < 64; ++i) node_max = std::max(node_max, std::abs(std::sin(2 * pi * i / 64.0)));
  CHECK(lp_norm(s, kInf) == node_max);
  CHECK(node_max <= 1.0);
  CHECK(node_max >= 0.995);
  CHECK(lp_norm(GridField(g), 2.0) == 0.0);
  CHECK_THROWS_AS(lp_norm(s, 0.5), InvalidParameter);
}

TEST_CASE("lp norms never exceed the sup norm") {
  for (unsigned seed = 0; seed < 20; ++seed) {
    Grid g(2, 16);
    const auto f = random_smooth(g, seed);
    const double sup = lp_norm(f, kInf);
    for (double p : {1.0, 1.5, 2.0, 4.0, 10.0}) CHECK(lp_norm(f, p) <= sup * (1 + 1e-14));
  }
}

TEST_CASE("spatial average examples") {
  for (int n : {2, 4, 16, 64}) {
    Grid g(2, n);
    CHECK(spatial_average(GridField(g, 2.5)) == doctest::Approx(2.5).epsilon(1e-15));
    const auto f = GridField::sample(g, [](const TorusPoint& x) { return 1.0 + std::cos(2 * pi * x[0]); });
    CHECK(std::abs(spatial_average(f) - 1.0) < 1e-14);
    const auto odd = GridField::sample(g, [](const TorusPoint& x) { return std::sin(2 * pi * x[0]) * std::cos(2 * pi * x[1]); });
    CHECK(std::abs(spatial_average(odd)) < 1e-12);
  }
}

TEST_CASE("spectral transform examples") {
  Grid g(2, 16);
  const auto one = to_spectral(GridField(g, 1.0));
  for (size_t i = 0; i < one.size(); ++i) CHECK(std::abs(one.coefficients()[i] - (i == 0 ? 1.0 : 0.0)) < 1e-13);

  const auto c = to_spectral(GridField::sample(g, [](const TorusPoint& x) { return std::cos(2 * pi * x[0]); }));
  for (size_t i = 0; i < c.size(); ++i) {
    const auto k = g.multi_index(i);
    const int k0 = g.wavenumber(k[0]), k1 = g.wavenumber(k[1]);
    const double expect = (std::abs(k0) == 1 && k1 == 0) ? 0.5 : 0.0;
    CHECK(std::abs(c.coefficients()[i] - expect) < 1e-13);
  }
  CHECK(std::abs(c.at(std::array<int, 2>{-1, 0}) - 0.5) < 1e-13);
  CHECK_THROWS_AS(Grid(1, 9), InvalidGrid);
}

TEST_CASE("spectral transform matches a direct DFT") {
  for (int d = 1; d <= 3; ++d) {
    Grid g(d, d == 3 ? 4 : 8);
    const auto f = random_smooth(g, 11u + d);
    const auto fast = to_spectral(f);
    const auto slow = naive_dft(f);
    for (size_t i = 0; i < g.size(); ++i) CHECK(std::abs(fast.coefficients()[i] - slow[i]) < 1e-13);
  }
}

TEST_CASE("spectral properties on random fields") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    for (int d = 1; d <= 3; ++d) {
      Grid g(d, d == 3 ? 8 : 32);
      const auto f = random_smooth(g, seed);
      const auto s = to_spectral(f);
      const auto back = from_spectral(s);
      const double scale = lp_norm(f, kInf);
      for (size_t i = 0; i < f.size(); ++i) CHECK(std::abs(back[i] - f[i]) <= 1e-12 * scale);
      CHECK(std::abs(spectral_l2_norm(s) - lp_norm(f, 2.0)) <= 1e-12 * lp_norm(f, 2.0));
      CHECK(std::abs(s.coefficients()[0].real() - spatial_average(f)) < 1e-12);
      // Hermitian symmetry of the coefficients of a real field
      for (size_t i = 0; i < s.size(); ++i) {
        const auto k = g.multi_index(i);
        std::array<int, kMaxDim> mk{};
        for (int a = 0; a < d; ++a) mk[a] = (g.n() - k[a]) % g.n();
        const auto mirror = s.coefficients()[g.flat_index(std::span<const int>(mk.data(), d))];
        CHECK(std::abs(mirror - std::conj(s.coefficients()[i])) < 1e-13);
      }
    }
  }
}

TEST_CASE("interpolation examples") {
  Grid g(1, 64);
  const auto f = GridField::sample(g, [](const TorusPoint& x) { return std::cos(2 * pi * x[0]); });
  for (auto scheme : {InterpolationScheme::Trigonometric, InterpolationScheme::CubicSpline}) {
    FieldInterpolant it(f, scheme);
    const double tol = scheme == InterpolationScheme::Trigonometric ? 1e-12 : 1e-7;
    CHECK(std::abs(it({0.123}) - std::cos(2 * pi * 0.123)) < tol);
    for (int i = 0; i < 64; ++i) CHECK(it({i / 64.0}) == f[i]);
    FieldInterpolant c(GridField(Grid(2, 8), 4.25), scheme);
    CHECK(c({0.3141, 0.9}) == doctest::Approx(4.25).epsilon(1e-14));
  }
}

TEST_CASE("trigonometric interpolation is exact on resolvable polynomials") {
  std::mt19937 eng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int d = 1; d <= 3; ++d) {
    const int n = d == 3 ? 8 : 16;
    Grid g(d, n);
    // highest resolvable degree n/2 - 1 on each axis, plus mixed terms
    auto poly = [&](const TorusPoint& x) {
      double v = 0.3 + std::cos(2 * pi * (n / 2 - 1) * x[0]) - 0.7 * std::sin(2 * pi * 2 * x[0]);
      if (d > 1) v += 0.4 * std::sin(2 * pi * (x[0] - (n / 2 - 1) * x[1]));
      if (d > 2) v += 0.2 * std::cos(2 * pi * (x[1] + 3 * x[2]));
      return v;
    };
    FieldInterpolant it(GridField::sample(g, poly));
    for (int i = 0; i < 200; ++i) {
      TorusPoint x{u(eng), u(eng), u(eng)};
      TorusPoint xd(std::span<const double>(x.coords().values().data(), d));
      CHECK(std::abs(it(xd) - poly(xd)) < 1e-10);
    }
  }
}

TEST_CASE("cubic spline interpolation converges at fourth order") {
  auto f = [](const TorusPoint& x) { return std::exp(std::sin(2 * pi * x[0])); };
  double prev = 0.0;
  for (int n : {16, 32, 64}) {
    FieldInterpolant it(GridField::sample(Grid(1, n), f), InterpolationScheme::CubicSpline);
    double err = 0.0;
    for (int i = 0; i < 500; ++i) {
      TorusPoint x{(i + 0.37) / 500.0};
      err = std::max(err, std::abs(it(x) - f(x)));
    }
    if (prev > 0.0) CHECK(prev / err > 12.0);
    prev = err;
  }
}

TEST_CASE("fourier series evaluates value and gradient") {
  FourierSeries s(2, 1);
  const std::array<int, 2> k{1, -2};
  const std::array<std::complex<double>, 1> c{std::complex<double>(0.5, -0.25)};
  s.add_term(k, c);
  const TorusPoint x{0.2, 0.7};
  double out[1];
  Mat grad(2);
  s.evaluate_with_gradient(x, out, grad);
  const double phase = 2 * pi * (x[0] - 2 * x[1]);
  const double ref = 0.5 * std::cos(phase) + 0.25 * std::sin(phase);
  const double dref = -0.5 * std::sin(phase) + 0.25 * std::cos(phase);
  CHECK(out[0] == doctest::Approx(ref).epsilon(1e-14));
  CHECK(grad(0, 0) == doctest::Approx(2 * pi * dref).epsilon(1e-13));
  CHECK(grad(0, 1) == doctest::Approx(-4 * pi * dref).epsilon(1e-13));
}

TEST_CASE("field files round-trip") {
  Grid g(2, 8);
  const auto f = random_smooth(g, 5);
  std::stringstream bin;
  write_field_binary(bin, f);
  const auto fb = read_field_binary(bin);
  CHECK(fb.grid() == g);
  for (size_t i = 0; i < f.size(); ++i) CHECK(fb[i] == f[i]);

  std::stringstream csv;
  write_field_csv(csv, f);
  CHECK(csv.str().rfind("# d=2 n=8", 0) == 0);
  const auto fc = read_field_csv(csv);
  for (size_t i = 0; i < f.size(); ++i) CHECK(fc[i] == f[i]);

  std::stringstream bad("NOTAFILE");
  CHECK_THROWS(read_field_binary(bad));
}

TEST_CASE("matrix helpers") {
  Mat m(2);
  m(0, 0) = 1.0;
  m(0, 1) = 3.0;
  m(1, 1) = 1.0;
  CHECK(m.determinant() == doctest::Approx(1.0));
  // singular values of [[1,3],[0,1]] are (sqrt(13) +- 3) / 2
  CHECK(m.operator_norm() == doctest::Approx((std::sqrt(13.0) + 3.0) / 2.0).epsilon(1e-12));
  CHECK(Mat::identity(3).operator_norm() == doctest::Approx(1.0));
}
