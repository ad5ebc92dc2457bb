#include "ergodamp/catalog.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace ergodamp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct KindInfo {
  FieldKind kind;
  const char* name;
  std::map<std::string, double> defaults;
};

const std::vector<KindInfo>& kinds() {
  static const std::vector<KindInfo> table = {
      {FieldKind::Constant, "constant", {{"c", 1.0}}},
      {FieldKind::Cosine, "cosine", {{"a", 0.0}, {"b", 1.0}, {"axis", 0.0}, {"freq", 1.0}}},
      {FieldKind::Sine, "sine", {{"a", 0.0}, {"b", 1.0}, {"axis", 0.0}, {"freq", 1.0}}},
      {FieldKind::CosProduct, "cosprod", {{"a", 1.0}, {"b", 1.0}}},
      {FieldKind::Bump, "bump", {{"amplitude", 1.0}, {"center", 0.0}, {"sigma", 0.3}, {"axis", 0.0}}},
      {FieldKind::CompactBump, "compact_bump", {{"amplitude", 1.0}, {"center", 0.0}, {"radius", 0.25}, {"axis", 0.0}}},
      {FieldKind::Random, "random", {{"seed", 1.0}, {"kmax", 4.0}, {"amplitude", 1.0}, {"offset", 0.0}}},
  };
  return table;
}

const KindInfo& info(FieldKind k) {
  for (const auto& i : kinds())
    if (i.kind == k) return i;
  throw InvalidParameter("unknown field kind");
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double periodic_offset(double x, double center) {
  double s = x - center;
  return s - std::round(s);
}

double compact_profile(double s, double radius) {
  const double u = s / radius;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double compact_profile_derivative(double s, double radius) {
  const double u = s / radius;
  if (std::abs(u) >= 1.0) return 0.0;
  const double q = 1.0 - u * u;
  return compact_profile(s, radius) * (-2.0 * u / (q * q)) / radius;
}

// Dense-sample maximum of |g| over one period; the profiles involved are
// smooth, so 2^16 samples pin the maximum to well below a percent.
template <class F>
double dense_sup(F&& g) {
  constexpr int kSamples = 1 << 16;
  double m = 0.0;
  for (int i = 0; i < kSamples; ++i) m = std::max(m, std::abs(g(static_cast<double>(i) / kSamples - 0.5)));
  return m;
}

template <class F>
double dense_mean(F&& g) {
  constexpr int kSamples = 1 << 16;
  double s = 0.0;
  for (int i = 0; i < kSamples; ++i) s += g(static_cast<double>(i) / kSamples);
  return s / kSamples;
}

int int_param(double v, const char* name) {
  if (v != std::floor(v)) throw InvalidParameter(std::string("parameter '") + name + "' must be an integer");
  return static_cast<int>(v);
}

}  // namespace

std::string to_string(FieldKind kind) { return info(kind).name; }

AnalyticField::AnalyticField(FieldKind kind, int dim, std::map<std::string, double> params)
    : kind_(kind), dim_(dim), params_(std::move(params)) {
  if (dim < 1 || dim > kMaxDim) throw UnsupportedDimension("field dimension out of range");
  for (const auto& [key, v] : params_)
    if (!std::isfinite(v)) throw InvalidParameter("parameter '" + key + "' is not finite");
  auto check_axis = [&](bool allow_all) {
    const int axis = int_param(p("axis"), "axis");
    if (axis >= dim_ || axis < (allow_all ? -1 : 0))
      throw InvalidParameter("axis " + std::to_string(axis) + " out of range for dimension " + std::to_string(dim_));
  };
  switch (kind_) {
    case FieldKind::Cosine:
    case FieldKind::Sine:
      check_axis(false);
      if (int_param(p("freq"), "freq") < 1) throw InvalidParameter("freq must be >= 1");
      break;
    case FieldKind::Bump:
      check_axis(true);
      if (p("sigma") <= 0.0) throw InvalidParameter("sigma must be positive");
      break;
    case FieldKind::CompactBump:
      check_axis(false);
      if (p("radius") <= 0.0 || p("radius") > 0.5) throw InvalidParameter("radius must be in (0, 0.5]");
      break;
    case FieldKind::Random:
      if (int_param(p("kmax"), "kmax") < 0) throw InvalidParameter("kmax must be >= 0");
      if (p("seed") < 0) throw InvalidParameter("seed must be nonnegative");
      int_param(p("seed"), "seed");
      build_random_terms();
      break;
    default:
      break;
  }
}

AnalyticField AnalyticField::parse(const std::string& text, int dim) {
  std::istringstream in(text);
  std::string name;
  if (!(in >> name)) throw InvalidParameter("empty field description");
  const KindInfo* found = nullptr;
  for (const auto& k : kinds())
    if (name == k.name) found = &k;
  if (!found) throw InvalidParameter("unknown field kind '" + name + "'");
  auto params = found->defaults;
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw InvalidParameter("expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (!params.count(key)) throw InvalidParameter("unknown parameter '" + key + "' for field kind '" + name + "'");
    double v = 0.0;
    auto res = std::from_chars(val.data(), val.data() + val.size(), v);
    if (res.ec != std::errc() || res.ptr != val.data() + val.size())
      throw InvalidParameter("parameter '" + key + "' has non-numeric value '" + val + "'");
    params[key] = v;
  }
  return AnalyticField(found->kind, dim, std::move(params));
}

AnalyticField AnalyticField::constant(int dim, double c) { return {FieldKind::Constant, dim, {{"c", c}}}; }

AnalyticField AnalyticField::cosine(int dim, double a, double b, int axis, int freq) {
  return {FieldKind::Cosine, dim, {{"a", a}, {"b", b}, {"axis", double(axis)}, {"freq", double(freq)}}};
}

AnalyticField AnalyticField::sine(int dim, double a, double b, int axis, int freq) {
  return {FieldKind::Sine, dim, {{"a", a}, {"b", b}, {"axis", double(axis)}, {"freq", double(freq)}}};
}

AnalyticField AnalyticField::cos_product(int dim, double a, double b) {
  return {FieldKind::CosProduct, dim, {{"a", a}, {"b", b}}};
}

AnalyticField AnalyticField::bump(int dim, double amplitude, double center, double sigma, int axis) {
  return {FieldKind::Bump, dim, {{"amplitude", amplitude}, {"center", center}, {"sigma", sigma}, {"axis", double(axis)}}};
}

AnalyticField AnalyticField::compact_bump(int dim, double amplitude, double center, double radius, int axis) {
  return {FieldKind::CompactBump,
          dim,
          {{"amplitude", amplitude}, {"center", center}, {"radius", radius}, {"axis", double(axis)}}};
}

AnalyticField AnalyticField::random(int dim, unsigned long long seed, int kmax, double amplitude, double offset) {
  return {FieldKind::Random,
          dim,
          {{"seed", double(seed)}, {"kmax", double(kmax)}, {"amplitude", amplitude}, {"offset", offset}}};
}

void AnalyticField::build_random_terms() {
  const int kmax = static_cast<int>(p("kmax"));
  std::mt19937_64 eng(static_cast<unsigned long long>(p("seed")));
  // explicit 53-bit conversion so values do not depend on the distribution implementation
  auto uniform = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  const int side = 2 * kmax + 1;
  int total = 1;
  for (int a = 0; a < dim_; ++a) total *= side;
  for (int flat = 0; flat < total; ++flat) {
    Term t{};
    int rem = flat;
    for (int a = dim_ - 1; a >= 0; --a) {
      t.k[a] = rem % side - kmax;
      rem /= side;
    }
    // keep one representative of each {k, -k} pair: first nonzero component positive
    int lead = 0;
    for (int a = 0; a < dim_ && lead == 0; ++a) lead = t.k[a];
    if (lead <= 0) continue;
    double k2 = 0.0;
    for (int a = 0; a < dim_; ++a) k2 += double(t.k[a]) * t.k[a];
    t.cos_coeff = uniform() / (1.0 + k2);
    t.sin_coeff = uniform() / (1.0 + k2);
    random_terms_.push_back(t);
  }
}

double AnalyticField::value(const TorusPoint& x) const {
  switch (kind_) {
    case FieldKind::Constant:
      return p("c");
    case FieldKind::Cosine:
      return p("a") + p("b") * std::cos(kTwoPi * p("freq") * x[static_cast<int>(p("axis"))]);
    case FieldKind::Sine:
      return p("a") + p("b") * std::sin(kTwoPi * p("freq") * x[static_cast<int>(p("axis"))]);
    case FieldKind::CosProduct: {
      double prod = 1.0;
      for (int a = 0; a < dim_; ++a) prod *= std::cos(kTwoPi * x[a]);
      return p("a") + p("b") * prod;
    }
    case FieldKind::Bump: {
      const int axis = static_cast<int>(p("axis"));
      const double s2 = p("sigma") * p("sigma");
      double e = 0.0;
      for (int a = 0; a < dim_; ++a)
        if (axis < 0 || a == axis) e += 1.0 - std::cos(kTwoPi * (x[a] - p("center")));
      return p("amplitude") * std::exp(-e / s2);
    }
    case FieldKind::CompactBump: {
      const int axis = static_cast<int>(p("axis"));
      return p("amplitude") * compact_profile(periodic_offset(x[axis], p("center")), p("radius"));
    }
    case FieldKind::Random: {
      double s = 0.0;
      for (const auto& t : random_terms_) {
        double ph = 0.0;
        for (int a = 0; a < dim_; ++a) ph += t.k[a] * x[a];
        s += t.cos_coeff * std::cos(kTwoPi * ph) + t.sin_coeff * std::sin(kTwoPi * ph);
      }
      return p("offset") + p("amplitude") * s;
    }
  }
  return 0.0;
}

Vec AnalyticField::gradient(const TorusPoint& x) const {
  Vec g(dim_);
  switch (kind_) {
    case FieldKind::Constant:
      break;
    case FieldKind::Cosine: {
      const int axis = static_cast<int>(p("axis"));
      const double w = kTwoPi * p("freq");
      g[axis] = -p("b") * w * std::sin(w * x[axis]);
      break;
    }
    case FieldKind::Sine: {
      const int axis = static_cast<int>(p("axis"));
      const double w = kTwoPi * p("freq");
      g[axis] = p("b") * w * std::cos(w * x[axis]);
      break;
    }
    case FieldKind::CosProduct:
      for (int a = 0; a < dim_; ++a) {
        double prod = -kTwoPi * std::sin(kTwoPi * x[a]);
        for (int b = 0; b < dim_; ++b)
          if (b != a) prod *= std::cos(kTwoPi * x[b]);
        g[a] = p("b") * prod;
      }
      break;
    case FieldKind::Bump: {
      const int axis = static_cast<int>(p("axis"));
      const double s2 = p("sigma") * p("sigma");
      const double v = value(x);
      for (int a = 0; a < dim_; ++a)
        if (axis < 0 || a == axis) g[a] = -v * kTwoPi * std::sin(kTwoPi * (x[a] - p("center"))) / s2;
      break;
    }
    case FieldKind::CompactBump: {
      const int axis = static_cast<int>(p("axis"));
      g[axis] = p("amplitude") * compact_profile_derivative(periodic_offset(x[axis], p("center")), p("radius"));
      break;
    }
    case FieldKind::Random:
      for (const auto& t : random_terms_) {
        double ph = 0.0;
        for (int a = 0; a < dim_; ++a) ph += t.k[a] * x[a];
        const double d = -t.cos_coeff * std::sin(kTwoPi * ph) + t.sin_coeff * std::cos(kTwoPi * ph);
        for (int a = 0; a < dim_; ++a) g[a] += p("amplitude") * kTwoPi * t.k[a] * d;
      }
      break;
  }
  return g;
}

double AnalyticField::gradient_sup() const {
  switch (kind_) {
    case FieldKind::Constant:
      return 0.0;
    case FieldKind::Cosine:
    case FieldKind::Sine:
      return std::abs(p("b")) * kTwoPi * p("freq");
    case FieldKind::CosProduct:
      // sum_i sin^2_i prod_{j != i} cos^2_j <= 1, attained on the axes
      return std::abs(p("b")) * kTwoPi;
    case FieldKind::Bump: {
      const double s2 = p("sigma") * p("sigma");
      const double one_axis = dense_sup([&](double s) {
        return kTwoPi * std::sin(kTwoPi * s) / s2 * std::exp(-(1.0 - std::cos(kTwoPi * s)) / s2);
      });
      const int axes = p("axis") < 0 ? dim_ : 1;
      return std::abs(p("amplitude")) * one_axis * std::sqrt(double(axes));
    }
    case FieldKind::CompactBump:
      return std::abs(p("amplitude")) * dense_sup([&](double s) { return compact_profile_derivative(s, p("radius")); });
    case FieldKind::Random: {
      double s = 0.0;
      for (const auto& t : random_terms_) {
        double kn = 0.0;
        for (int a = 0; a < dim_; ++a) kn += double(t.k[a]) * t.k[a];
        s += kTwoPi * std::sqrt(kn) * std::hypot(t.cos_coeff, t.sin_coeff);
      }
      return std::abs(p("amplitude")) * s;
    }
  }
  return 0.0;
}

double AnalyticField::lower_bound() const {
  switch (kind_) {
    case FieldKind::Constant:
      return p("c");
    case FieldKind::Cosine:
    case FieldKind::Sine:
    case FieldKind::CosProduct:
      return p("a") - std::abs(p("b"));
    case FieldKind::Bump: {
      const int axes = p("axis") < 0 ? dim_ : 1;
      const double far = std::exp(-2.0 * axes / (p("sigma") * p("sigma")));
      return p("amplitude") >= 0 ? p("amplitude") * far : p("amplitude");
    }
    case FieldKind::CompactBump:
      return std::min(0.0, p("amplitude"));
    case FieldKind::Random: {
      double s = 0.0;
      for (const auto& t : random_terms_) s += std::hypot(t.cos_coeff, t.sin_coeff);
      return p("offset") - std::abs(p("amplitude")) * s;
    }
  }
  return 0.0;
}

double AnalyticField::mean() const {
  switch (kind_) {
    case FieldKind::Constant:
      return p("c");
    case FieldKind::Cosine:
    case FieldKind::Sine:
      return p("a");
    case FieldKind::CosProduct:
      return p("a");
    case FieldKind::Bump: {
      // <exp(-(1 - cos 2 pi s)/s2)> = exp(-1/s2) I_0(1/s2), one factor per axis
      const double q = 1.0 / (p("sigma") * p("sigma"));
      const double one = std::exp(-q) * std::cyl_bessel_i(0.0, q);
      const int axes = p("axis") < 0 ? dim_ : 1;
      return p("amplitude") * std::pow(one, axes);
    }
    case FieldKind::CompactBump:
      return p("amplitude") * dense_mean([&](double x) { return compact_profile(periodic_offset(x, 0.0), p("radius")); });
    case FieldKind::Random:
      return p("offset");
  }
  return 0.0;
}

GridField AnalyticField::sample(const Grid& grid) const {
  if (grid.dim() != dim_) throw InvalidParameter("field dimension does not match grid dimension");
  return GridField::sample(grid, [this](const TorusPoint& x) { return value(x); });
}

std::string AnalyticField::to_string() const {
  std::string out = info(kind_).name;
  for (const auto& [key, v] : params_) out += " " + key + "=" + format_number(v);
  return out;
}

}  // namespace ergodamp
