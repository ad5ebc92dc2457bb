#include "ergodamp/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ergodamp {

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool to_number(const std::string& s, double& out) {
  if (s == "inf") {
    out = kInf;
    return true;
  }
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (double x : v) out += (out.empty() ? "" : " ") + num(x);
  return out;
}

const std::map<std::string, ExperimentKind>& kind_names() {
  static const std::map<std::string, ExperimentKind> m{{"flow", ExperimentKind::Flow},
                                                       {"birkhoff", ExperimentKind::Birkhoff},
                                                       {"inviscid", ExperimentKind::Inviscid},
                                                       {"viscous", ExperimentKind::Viscous},
                                                       {"sweep", ExperimentKind::Sweep}};
  return m;
}

const std::map<std::string, Expectation>& expectation_names() {
  static const std::map<std::string, Expectation> m{
      {"decay", Expectation::Decay}, {"no_decay", Expectation::NoDecay}, {"phi_star_decay", Expectation::PhiStarDecay}};
  return m;
}

std::string with_seed(const std::string& text, std::uint64_t seed) {
  const auto t = tokens(text);
  if (t.empty() || t.front() != "random") return text;
  for (const auto& tok : t)
    if (tok.rfind("seed=", 0) == 0) return text;
  return text + " seed=" + std::to_string(seed);
}

// Key handlers collect problems instead of throwing so that every bad line is reported.
struct Parser {
  ExperimentConfig c;
  std::vector<std::string> problems;
  std::vector<std::pair<int, std::vector<std::string>>> raw_modes;
  std::vector<std::pair<int, std::vector<double>>> raw_points;

  void fail(int line, const std::string& msg) { problems.push_back("line " + std::to_string(line) + ": " + msg); }

  bool list(int line, const std::string& key, const std::string& value, std::vector<double>& out) {
    out.clear();
    for (const auto& t : tokens(value)) {
      double v = 0.0;
      if (!to_number(t, v)) {
        fail(line, key + " has non-numeric value '" + t + "'");
        return false;
      }
      out.push_back(v);
    }
    return true;
  }

  bool scalar(int line, const std::string& key, const std::string& value, double& out) {
    std::vector<double> v;
    if (!list(line, key, value, v)) return false;
    if (v.size() != 1) {
      fail(line, key + " expects a single number");
      return false;
    }
    out = v[0];
    return true;
  }

  bool integer(int line, const std::string& key, const std::string& value, long long& out) {
    double d = 0.0;
    if (!scalar(line, key, value, d)) return false;
    if (!std::isfinite(d) || d != std::floor(d) || std::abs(d) > 9.007199254740992e15) {
      fail(line, key + " must be an integer");
      return false;
    }
    out = static_cast<long long>(d);
    return true;
  }

  void handle(int line, const std::string& key, const std::string& value) {
    double d = 0.0;
    long long i = 0;
    std::vector<double> v;
    if (key == "kind") {
      auto it = kind_names().find(value);
      if (it == kind_names().end())
        fail(line, "kind must be flow, birkhoff, inviscid, viscous or sweep, got '" + value + "'");
      else
        c.kind = it->second;
    } else if (key == "dim") {
      if (integer(line, key, value, i)) c.dim = static_cast<int>(i);
    } else if (key == "n") {
      if (integer(line, key, value, i)) c.n = static_cast<int>(i);
    } else if (key == "mode") {
      raw_modes.emplace_back(line, tokens(value));
    } else if (key == "ratio") {
      try {
        c.ratio = parse_rationality(value);
      } catch (const Error& e) {
        fail(line, e.what());
      }
    } else if (key == "damping") {
      c.damping = value;
    } else if (key == "initial") {
      c.initial = value;
    } else if (key == "viscosity") {
      if (scalar(line, key, value, d)) c.viscosity = d;
    } else if (key == "viscosities") {
      if (list(line, key, value, v)) c.viscosities = v;
    } else if (key == "t_final") {
      if (scalar(line, key, value, d)) c.t_final = d;
    } else if (key == "output_stride") {
      if (scalar(line, key, value, d)) c.output_stride = d;
    } else if (key == "p") {
      if (list(line, key, value, v)) c.p = v;
    } else if (key == "fit_window") {
      if (list(line, key, value, v)) {
        if (v.size() == 2)
          c.fit_window = FitWindow{v[0], v[1]};
        else
          fail(line, "fit_window expects two numbers");
      }
    } else if (key == "c0") {
      if (scalar(line, key, value, d)) c.c0 = d;
    } else if (key == "mu_target") {
      if (scalar(line, key, value, d)) c.mu_target = d;
    } else if (key == "flow_dt") {
      if (scalar(line, key, value, d)) c.flow_dt = d;
    } else if (key == "dt") {
      if (scalar(line, key, value, d)) c.dt = d;
    } else if (key == "cfl") {
      if (scalar(line, key, value, d)) c.cfl = d;
    } else if (key == "horizon") {
      if (scalar(line, key, value, d)) c.horizon = d;
    } else if (key == "probe_n") {
      if (integer(line, key, value, i)) c.probe_n = static_cast<int>(i);
    } else if (key == "expect") {
      auto it = expectation_names().find(value);
      if (it == expectation_names().end())
        fail(line, "expect must be decay, no_decay or phi_star_decay, got '" + value + "'");
      else
        c.expect = it->second;
    } else if (key == "seed") {
      if (integer(line, key, value, i)) {
        if (i < 0)
          fail(line, "seed must be nonnegative");
        else
          c.seed = static_cast<std::uint64_t>(i);
      }
    } else if (key == "point") {
      if (list(line, key, value, v)) raw_points.emplace_back(line, v);
    } else if (key == "snapshot") {
      if (list(line, key, value, v)) c.snapshots.insert(c.snapshots.end(), v.begin(), v.end());
    } else if (key == "rate_tolerance") {
      if (scalar(line, key, value, d)) c.rate_tolerance = d;
    } else if (key == "uniformity_factor") {
      if (scalar(line, key, value, d)) c.uniformity_factor = d;
    } else if (key == "decay_threshold") {
      if (scalar(line, key, value, d)) c.decay_threshold = d;
    } else if (key == "phi_star_floor") {
      if (scalar(line, key, value, d)) c.phi_star_floor = d;
    } else if (key == "cross_validate") {
      if (value == "true")
        c.cross_validate = true;
      else if (value == "false")
        c.cross_validate = false;
      else
        fail(line, "cross_validate must be true or false");
    } else if (key == "out") {
      c.out = value;
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }

  void resolve_modes() {
    const int d = c.dim;
    for (const auto& [line, toks] : raw_modes) {
      if (static_cast<int>(toks.size()) != 3 * d) {
        fail(line, "mode needs " + std::to_string(d) + " integers and " + std::to_string(2 * d) +
                       " numbers (re im per component)");
        continue;
      }
      FourierMode m;
      bool ok = true;
      for (int a = 0; a < d && ok; ++a) {
        int k = 0;
        auto res = std::from_chars(toks[a].data(), toks[a].data() + toks[a].size(), k);
        if (res.ec != std::errc() || res.ptr != toks[a].data() + toks[a].size()) {
          fail(line, "mode wavevector entry '" + toks[a] + "' is not an integer");
          ok = false;
        }
        m.k[a] = k;
      }
      for (int comp = 0; comp < d && ok; ++comp) {
        double re = 0.0, im = 0.0;
        if (!to_number(toks[d + 2 * comp], re) || !to_number(toks[d + 2 * comp + 1], im)) {
          fail(line, "mode coefficient is not numeric");
          ok = false;
        }
        m.coeff[comp] = {re, im};
      }
      if (ok) c.modes.push_back(m);
    }
  }

  void resolve_points() {
    for (const auto& [line, v] : raw_points) {
      if (static_cast<int>(v.size()) != c.dim) {
        fail(line, "point needs " + std::to_string(c.dim) + " coordinates");
        continue;
      }
      std::array<double, kMaxDim> p{};
      for (int a = 0; a < c.dim; ++a) p[a] = v[a];
      c.points.push_back(p);
    }
  }
};

void validate(const ExperimentConfig& c, std::vector<std::string>& problems) {
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) problems.push_back(msg);
  };
  need(c.dim >= 1 && c.dim <= kMaxDim, "dim must be 1, 2 or 3");
  need(c.n >= 2 && c.n % 2 == 0, "n must be an even integer >= 2");
  need(c.t_final > 0.0 && std::isfinite(c.t_final), "t_final must be positive");
  need(c.output_stride > 0.0 && c.output_stride <= c.t_final, "output_stride must lie in (0, t_final]");
  need(!c.p.empty(), "p needs at least one order");
  for (double p : c.p) need(p >= 1.0, "norm orders must be >= 1");
  if (c.fit_window) need(c.fit_window->lo >= 0.0 && c.fit_window->lo < c.fit_window->hi, "fit_window needs 0 <= lo < hi");
  if (c.c0) need(*c.c0 > 0.0 && std::isfinite(*c.c0), "c0 must be positive");
  if (c.mu_target) need(*c.mu_target >= 0.0 && std::isfinite(*c.mu_target), "mu_target must be nonnegative");
  need(c.flow_dt > 0.0 && std::isfinite(c.flow_dt), "flow_dt must be positive");
  need(c.dt >= 0.0 && std::isfinite(c.dt), "dt must be nonnegative (0 selects it automatically)");
  need(c.cfl > 0.0 && c.cfl <= 1.0, "cfl must lie in (0, 1]");
  need(c.horizon > 0.0 && std::isfinite(c.horizon), "horizon must be positive");
  need(c.probe_n >= 2 && c.probe_n % 2 == 0, "probe_n must be an even integer >= 2");
  need(c.viscosity > 0.0 && std::isfinite(c.viscosity), "viscosity must be positive");
  for (double nu : c.viscosities) need(nu > 0.0 && nu < 1.0, "every sweep viscosity must lie in (0, 1)");
  for (double s : c.snapshots) need(s >= 0.0 && s <= c.t_final, "snapshot times must lie in [0, t_final]");
  need(c.rate_tolerance > 0.0, "rate_tolerance must be positive");
  need(c.uniformity_factor >= 1.0, "uniformity_factor must be >= 1");
  if (c.decay_threshold) need(*c.decay_threshold > 0.0, "decay_threshold must be positive");
  if (c.dim < 1 || c.dim > kMaxDim) return;

  std::optional<FourierVectorField> field;
  try {
    field = build_field(c);
    need(check_divergence_free(*field).divergence_free, "vector field is not divergence-free");
  } catch (const Error& e) {
    problems.push_back(std::string("vector field: ") + e.what());
  }
  try {
    need(build_damping(c).lower_bound() >= -1e-12, "damping must be nonnegative");
  } catch (const Error& e) {
    problems.push_back(std::string("damping: ") + e.what());
  }
  try {
    build_initial(c);
  } catch (const Error& e) {
    problems.push_back(std::string("initial: ") + e.what());
  }
  if (field && c.dt > 0.0 && c.n >= 2 && c.cfl > 0.0) {
    const double vmax = field->sup_bound();
    need(vmax == 0.0 || c.dt <= c.cfl / c.n / vmax * (1.0 + 1e-12), "dt violates the CFL bound dt <= cfl * h / sup|v|");
  }
}

}  // namespace

std::string to_string(ExperimentKind k) {
  for (const auto& [name, kind] : kind_names())
    if (kind == k) return name;
  return "unknown";
}

std::string to_string(Expectation e) {
  for (const auto& [name, exp] : expectation_names())
    if (exp == e) return name;
  return "unknown";
}

ExperimentConfig parse_config(const std::string& text) {
  Parser ps;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      ps.fail(line, "expected 'key = value'");
      continue;
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (value.empty() && key != "out") {
      ps.fail(line, "key '" + key + "' has no value");
      continue;
    }
    ps.handle(line, key, value);
  }
  if (ps.c.dim >= 1 && ps.c.dim <= kMaxDim) {
    ps.resolve_modes();
    ps.resolve_points();
  }
  validate(ps.c, ps.problems);
  if (!ps.problems.empty()) throw ValidationError(ps.problems);
  return ps.c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return parse_config(s.str());
}

std::string emit_config(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "kind = " << to_string(c.kind) << '\n';
  o << "dim = " << c.dim << '\n';
  o << "n = " << c.n << '\n';
  for (const auto& m : c.modes) {
    o << "mode =";
    for (int a = 0; a < c.dim; ++a) o << ' ' << m.k[a];
    for (int a = 0; a < c.dim; ++a) o << ' ' << num(m.coeff[a].real()) << ' ' << num(m.coeff[a].imag());
    o << '\n';
  }
  o << "ratio = " << to_string(c.ratio) << '\n';
  o << "damping = " << c.damping << '\n';
  o << "initial = " << c.initial << '\n';
  o << "viscosity = " << num(c.viscosity) << '\n';
  if (!c.viscosities.empty()) o << "viscosities = " << join_numbers(c.viscosities) << '\n';
  o << "t_final = " << num(c.t_final) << '\n';
  o << "output_stride = " << num(c.output_stride) << '\n';
  o << "p = " << join_numbers(c.p) << '\n';
  if (c.fit_window) o << "fit_window = " << num(c.fit_window->lo) << ' ' << num(c.fit_window->hi) << '\n';
  if (c.c0) o << "c0 = " << num(*c.c0) << '\n';
  if (c.mu_target) o << "mu_target = " << num(*c.mu_target) << '\n';
  o << "flow_dt = " << num(c.flow_dt) << '\n';
  o << "dt = " << num(c.dt) << '\n';
  o << "cfl = " << num(c.cfl) << '\n';
  o << "horizon = " << num(c.horizon) << '\n';
  o << "probe_n = " << c.probe_n << '\n';
  o << "expect = " << to_string(c.expect) << '\n';
  o << "seed = " << c.seed << '\n';
  for (const auto& p : c.points) {
    o << "point =";
    for (int a = 0; a < c.dim; ++a) o << ' ' << num(p[a]);
    o << '\n';
  }
  if (!c.snapshots.empty()) o << "snapshot = " << join_numbers(c.snapshots) << '\n';
  o << "rate_tolerance = " << num(c.rate_tolerance) << '\n';
  o << "uniformity_factor = " << num(c.uniformity_factor) << '\n';
  if (c.decay_threshold) o << "decay_threshold = " << num(*c.decay_threshold) << '\n';
  o << "phi_star_floor = " << num(c.phi_star_floor) << '\n';
  o << "cross_validate = " << (c.cross_validate ? "true" : "false") << '\n';
  if (!c.out.empty()) o << "out = " << c.out << '\n';
  return o.str();
}

FourierVectorField build_field(const ExperimentConfig& c) {
  if (c.modes.empty()) return FourierVectorField::constant(Vec(c.dim), c.ratio);
  return FourierVectorField(c.dim, c.modes, c.ratio);
}

AnalyticField build_damping(const ExperimentConfig& c) { return AnalyticField::parse(with_seed(c.damping, c.seed), c.dim); }

AnalyticField build_initial(const ExperimentConfig& c) { return AnalyticField::parse(with_seed(c.initial, c.seed), c.dim); }

std::vector<double> sample_times(double t_final, double stride) {
  if (!(t_final > 0.0) || !(stride > 0.0)) throw InvalidParameter("t_final and stride must be positive");
  const long count = std::lround(std::ceil(t_final / stride - 1e-9));
  std::vector<double> t;
  t.reserve(static_cast<size_t>(count) + 1);
  for (long k = 0; k < count; ++k) t.push_back(k * stride);
  t.push_back(t_final);
  return t;
}

}  // namespace ergodamp
