// Python bindings: fields cross the boundary as numpy arrays of shape (n,) * d.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ergodamp/acceptance.hpp"
#include "ergodamp/analysis.hpp"
#include "ergodamp/birkhoff.hpp"
#include "ergodamp/catalog.hpp"
#include "ergodamp/config.hpp"
#include "ergodamp/ergodicity.hpp"
#include "ergodamp/flow.hpp"
#include "ergodamp/inviscid.hpp"
#include "ergodamp/parallel.hpp"
#include "ergodamp/run.hpp"
#include "ergodamp/viscous.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace ergodamp;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

GridField to_field(const Array& a) {
  const int d = static_cast<int>(a.ndim());
  if (d < 1 || d > kMaxDim) throw UnsupportedDimension("field arrays must have 1 to 3 axes");
  const auto n = a.shape(0);
  for (int i = 1; i < d; ++i)
    if (a.shape(i) != n) throw InvalidGrid("field arrays must have the same length on every axis");
  std::vector<double> values(a.data(), a.data() + a.size());
  return GridField(Grid(d, static_cast<int>(n)), std::move(values));
}

Array to_array(const GridField& f) {
  std::vector<py::ssize_t> shape(f.grid().dim(), f.grid().n());
  Array out(shape);
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

py::array_t<std::complex<double>> spectral_array(const SpectralField& s) {
  std::vector<py::ssize_t> shape(s.grid().dim(), s.grid().n());
  py::array_t<std::complex<double>> out(shape);
  std::copy(s.coefficients().begin(), s.coefficients().end(), out.mutable_data());
  return out;
}

TorusPoint to_point(const std::vector<double>& x) {
  if (x.empty() || x.size() > kMaxDim) throw UnsupportedDimension("points must have 1 to 3 coordinates");
  return TorusPoint(std::span<const double>(x));
}

std::vector<double> from_point(const TorusPoint& p) {
  const auto v = p.coords().values();
  return {v.begin(), v.end()};
}

py::array_t<double> matrix(const Mat& m) {
  py::array_t<double> out({m.dim(), m.dim()});
  auto r = out.mutable_unchecked<2>();
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r(i, j) = m(i, j);
  return out;
}

FourierVectorField field_from_modes(int dim, const std::vector<std::pair<std::vector<int>, std::vector<std::complex<double>>>>& modes,
                                    const std::string& rationality) {
  std::vector<FourierMode> list;
  for (const auto& [k, c] : modes) {
    if (static_cast<int>(k.size()) != dim || static_cast<int>(c.size()) != dim)
      throw InvalidSpec("each mode needs a wavevector and a coefficient per component");
    FourierMode m;
    for (int a = 0; a < dim; ++a) {
      m.k[a] = k[a];
      m.coeff[a] = c[a];
    }
    list.push_back(m);
  }
  return FourierVectorField(dim, std::move(list), parse_rationality(rationality));
}

py::dict history_dict(const NormHistory& h) {
  py::dict series;
  for (size_t j = 0; j < h.orders().size(); ++j) series[py::str(format_order(h.orders()[j]))] = h.series(j);
  return py::dict("times"_a = h.times(), "norms"_a = series);
}

py::dict fit_dict(const DecayFit& f) {
  return py::dict("lo"_a = f.lo, "hi"_a = f.hi, "rate"_a = f.rate, "intercept"_a = f.intercept,
                  "residual"_a = f.residual, "samples"_a = f.samples);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Damped transport on the flat torus";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def("set_thread_count", &set_thread_count, "threads"_a);
  m.def("version", &version_string);

  m.def("canonicalize", [](const std::vector<double>& x) { return from_point(canonicalize(to_point(x))); }, "x"_a);
  m.def("lp_norm", [](const Array& f, double p) { return lp_norm(to_field(f), p); }, "field"_a, "p"_a = 2.0);
  m.def("spatial_average", [](const Array& f) { return spatial_average(to_field(f)); }, "field"_a);
  m.def("to_spectral", [](const Array& f) { return spectral_array(to_spectral(to_field(f))); }, "field"_a,
        "Fourier coefficients in FFT order; the k = 0 entry is the spatial average.");
  m.def(
      "interpolate",
      [](const Array& f, const std::vector<std::vector<double>>& points, const std::string& scheme) {
        const FieldInterpolant it(to_field(f), scheme == "spline" ? InterpolationScheme::CubicSpline
                                                                  : InterpolationScheme::Trigonometric);
        std::vector<double> out;
        out.reserve(points.size());
        for (const auto& p : points) out.push_back(it(canonicalize(to_point(p))));
        return out;
      },
      "field"_a, "points"_a, "scheme"_a = "trigonometric");

  py::class_<AnalyticField>(m, "AnalyticField")
      .def_static("parse", &AnalyticField::parse, "text"_a, "dim"_a)
      .def_property_readonly("dim", &AnalyticField::dim)
      .def("value", [](const AnalyticField& f, const std::vector<double>& x) { return f.value(to_point(x)); })
      .def("mean", &AnalyticField::mean)
      .def("gradient_sup", &AnalyticField::gradient_sup)
      .def("lower_bound", &AnalyticField::lower_bound)
      .def("sample", [](const AnalyticField& f, int n) { return to_array(f.sample(Grid(f.dim(), n))); }, "n"_a)
      .def("__repr__", [](const AnalyticField& f) { return "AnalyticField('" + f.to_string() + "')"; })
      .def("__str__", &AnalyticField::to_string);

  py::class_<FourierVectorField>(m, "VectorField")
      .def(py::init(&field_from_modes), "dim"_a, "modes"_a, "rationality"_a = "unknown",
           "modes: list of (wavevector, coefficients) pairs, one complex coefficient per component")
      .def_static(
          "constant",
          [](const std::vector<double>& drift, const std::string& rationality) {
            return FourierVectorField::constant(Vec(std::span<const double>(drift)), parse_rationality(rationality));
          },
          "drift"_a, "rationality"_a = "unknown")
      .def_static("shear", &FourierVectorField::shear, "mean"_a, "amplitude"_a)
      .def_property_readonly("dim", &FourierVectorField::dim)
      .def("__call__", [](const FourierVectorField& v, const std::vector<double>& x) {
        const auto r = v.evaluate(to_point(x)).values();
        return std::vector<double>(r.begin(), r.end());
      })
      .def("mean_drift", [](const FourierVectorField& v) {
        const auto r = v.mean_drift().values();
        return std::vector<double>(r.begin(), r.end());
      })
      .def("sup_bound", &FourierVectorField::sup_bound)
      .def("lipschitz_estimate", [](const FourierVectorField& v) { return lipschitz_estimate(v); })
      .def("divergence_violation", [](const FourierVectorField& v) { return check_divergence_free(v).max_violation; })
      .def("is_divergence_free", [](const FourierVectorField& v) { return check_divergence_free(v).divergence_free; });

  m.def(
      "ergodicity",
      [](const FourierVectorField& v) {
        const auto r = ergodicity_criterion(v);
        std::vector<std::pair<long long, long long>> conv;
        for (const auto& c : r.convergents) conv.emplace_back(c.numerator, c.denominator);
        return py::dict("verdict"_a = to_string(r.verdict), "a00"_a = r.a00, "b00"_a = r.b00, "ratio"_a = r.ratio,
                        "convergents"_a = conv, "min_speed"_a = r.min_speed, "notes"_a = r.notes);
      },
      "field"_a);

  py::class_<FlowMap>(m, "FlowMap")
      .def(py::init([](FourierVectorField v, double dt) { return FlowMap(std::move(v), {dt}); }), "field"_a,
           "dt"_a = FlowSettings{}.dt)
      .def("__call__", [](const FlowMap& f, double t, const std::vector<double>& x) {
        return from_point(f.flow(t, to_point(x)));
      }, "t"_a, "x"_a)
      .def("gradient", [](const FlowMap& f, double t, const std::vector<double>& x) {
        return matrix(f.gradient(t, to_point(x)));
      }, "t"_a, "x"_a)
      .def("birkhoff_average", [](const FlowMap& f, const Array& phi, const std::vector<double>& x, double horizon) {
        return birkhoff_average(to_field(phi), f, to_point(x), horizon).value;
      }, "phi"_a, "x"_a, "horizon"_a)
      .def("phi_star", [](const FlowMap& f, const Array& phi, double horizon, int probe_n) {
        const auto field = to_field(phi);
        return to_array(estimate_phi_star(field, f, horizon, Grid(field.grid().dim(), probe_n)));
      }, "phi"_a, "horizon"_a, "probe_n"_a = 16)
      .def("uniform_gap", [](const FlowMap& f, const Array& phi, double horizon, int probe_n) {
        const auto field = to_field(phi);
        return uniform_convergence_gap(field, f, horizon, Grid(field.grid().dim(), probe_n));
      }, "phi"_a, "horizon"_a, "probe_n"_a = 16);

  m.def(
      "solve_inviscid",
      [](const FourierVectorField& v, const Array& damping, const Array& initial, const std::vector<double>& times,
         double flow_dt) {
        const auto prob = make_inviscid_problem(v, to_field(damping), to_field(initial), {flow_dt});
        std::vector<Array> out;
        for (const auto& s : solve_inviscid(prob, times)) out.push_back(to_array(s.field));
        return out;
      },
      "field"_a, "damping"_a, "initial"_a, "times"_a, "flow_dt"_a = FlowSettings{}.dt,
      "Solutions at the requested times by backward characteristics.");

  m.def(
      "inviscid_norms",
      [](const FourierVectorField& v, const Array& damping, const Array& initial, const std::vector<double>& times,
         const std::vector<double>& orders, double flow_dt) {
        const auto prob = make_inviscid_problem(v, to_field(damping), to_field(initial), {flow_dt});
        const auto h = norm_history_inviscid(prob, times, orders);
        return py::dict("eulerian"_a = history_dict(h.eulerian), "lagrangian"_a = history_dict(h.lagrangian),
                        "max_relative_gap"_a = h.max_relative_gap);
      },
      "field"_a, "damping"_a, "initial"_a, "times"_a, "orders"_a = std::vector<double>{2.0},
      "flow_dt"_a = FlowSettings{}.dt);

  m.def(
      "solve_viscous",
      [](const FourierVectorField& v, const Array& damping, const Array& initial, double viscosity,
         const std::vector<double>& times, const std::vector<double>& orders, double dt) {
        const auto prob = make_viscous_problem(v, to_field(damping), to_field(initial), viscosity, dt);
        const auto res = solve_viscous(prob, times, orders, std::vector<double>{times.back()});
        auto out = history_dict(res.history);
        out["final"] = to_array(res.snapshots.back().field);
        out["steps"] = res.steps;
        out["dt"] = prob.dt;
        return out;
      },
      "field"_a, "damping"_a, "initial"_a, "viscosity"_a, "times"_a, "orders"_a = std::vector<double>{2.0},
      "dt"_a = 0.0);

  m.def("compute_c0", py::overload_cast<const FourierVectorField&, const AnalyticField&>(&compute_c0), "field"_a,
        "damping"_a);
  m.def("log_window_end", [](double c0, double nu) { return log_window(c0, nu).end; }, "c0"_a, "viscosity"_a);

  m.def(
      "fit_decay_rate",
      [](const std::vector<double>& times, const std::vector<double>& norms, double lo, double hi) {
        if (times.size() != norms.size()) throw InvalidInput("times and norms differ in length");
        return fit_dict(fit_decay_rate(times, norms, FitWindow{lo, hi}));
      },
      "times"_a, "norms"_a, "lo"_a, "hi"_a);

  m.def(
      "check_config",
      [](const std::string& text) { return emit_config(parse_config(text)); }, "text"_a,
      "Validates a config and returns its canonical text; raises with every problem found.");
  m.def(
      "run_config",
      [](const std::string& text, const std::string& out_dir) {
        const auto summary = run_experiment(parse_config(text), out_dir);
        return summary.to_json().dump();
      },
      "text"_a, "out_dir"_a = "", "Runs an experiment and returns its summary as a JSON string.");

  m.def(
      "run_criterion",
      [](int id) {
        const auto r = run_criterion(id);
        return py::dict("id"_a = r.id, "title"_a = r.title, "passed"_a = r.passed, "detail"_a = r.detail);
      },
      "id"_a);
}
