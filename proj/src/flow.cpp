#include "ergodamp/flow.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace ergodamp {

namespace {

int step_count(double span, double dt) {
  const double raw = std::abs(span) / dt;
  const double n = std::ceil(raw - 1e-9);
  return std::max(1, static_cast<int>(n));
}

void check_time(double t) {
  if (!std::isfinite(t)) throw InvalidInput("flow time is not finite");
}

}  // namespace

FlowMap::FlowMap(FourierVectorField field, FlowSettings settings)
    : field_(std::move(field)), settings_(settings) {
  if (!(settings_.dt > 0.0) || !std::isfinite(settings_.dt)) throw InvalidParameter("flow step must be positive");
}

Vec FlowMap::flow_lifted(double t, const Vec& x) const {
  check_time(t);
  if (t == 0.0) return x;
  const int steps = step_count(t, settings_.dt);
  const double h = t / steps;
  Vec y = x;
  for (int s = 0; s < steps; ++s) {
    const Vec k1 = field_.evaluate(TorusPoint(y));
    const Vec k2 = field_.evaluate(TorusPoint(y + (0.5 * h) * k1));
    const Vec k3 = field_.evaluate(TorusPoint(y + (0.5 * h) * k2));
    const Vec k4 = field_.evaluate(TorusPoint(y + h * k3));
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

TorusPoint FlowMap::flow(double t, const TorusPoint& x) const {
  check_time(t);
  if (t == 0.0) return x;
  return canonicalize(TorusPoint(flow_lifted(t, x.coords())));
}

Mat FlowMap::gradient(double t, const TorusPoint& x) const {
  check_time(t);
  const int d = field_.dim();
  Mat jac = Mat::identity(d);
  if (t == 0.0) return jac;
  const int steps = step_count(t, settings_.dt);
  const double h = t / steps;
  Vec y = x.coords();
  Mat g1, g2, g3, g4;
  for (int s = 0; s < steps; ++s) {
    const Vec k1 = field_.evaluate(TorusPoint(y), g1);
    const Mat j1 = g1 * jac;
    const Vec k2 = field_.evaluate(TorusPoint(y + (0.5 * h) * k1), g2);
    const Mat j2 = g2 * (jac + j1 * (0.5 * h));
    const Vec k3 = field_.evaluate(TorusPoint(y + (0.5 * h) * k2), g3);
    const Mat j3 = g3 * (jac + j2 * (0.5 * h));
    const Vec k4 = field_.evaluate(TorusPoint(y + h * k3), g4);
    const Mat j4 = g4 * (jac + j3 * h);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    jac += (j1 + j2 * 2.0 + j3 * 2.0 + j4) * (h / 6.0);
  }
  return jac;
}

Trajectory FlowMap::trajectory(const TorusPoint& x, std::span<const double> times) const {
  Trajectory tr;
  tr.base = x;
  tr.times.assign(times.begin(), times.end());
  // march forward and backward from t = 0 separately so each sample reuses its neighbour
  std::vector<size_t> order(times.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return times[a] < times[b]; });
  tr.lifted.assign(times.size(), x.coords());
  auto march = [&](auto begin, auto end) {
    Vec y = x.coords();
    double t = 0.0;
    for (auto it = begin; it != end; ++it) {
      check_time(times[*it]);
      y = flow_lifted(times[*it] - t, y);
      t = times[*it];
      tr.lifted[*it] = y;
    }
  };
  auto split = std::partition_point(order.begin(), order.end(), [&](size_t i) { return times[i] < 0.0; });
  march(split, order.end());
  march(std::make_reverse_iterator(split), std::make_reverse_iterator(order.begin()));
  tr.positions.reserve(times.size());
  for (const auto& y : tr.lifted) tr.positions.push_back(canonicalize(TorusPoint(y)));
  return tr;
}

OrbitTrace FlowMap::trace(const TorusPoint& x, std::span<const double> times, int direction,
                          const FieldInterpolant* phi) const {
  if (direction != 1 && direction != -1) throw InvalidParameter("direction must be +1 or -1");
  OrbitTrace out;
  out.lifted.reserve(times.size());
  out.damping.reserve(times.size());

  Vec y = x.coords();
  Vec f0 = field_.evaluate(TorusPoint(y));
  double phi0 = phi ? (*phi)(TorusPoint(y)) : 0.0;
  double acc = 0.0;
  double t = 0.0;
  for (double target : times) {
    if (!std::isfinite(target) || target < t) throw InvalidInput("trace times must be finite, nonnegative and nondecreasing");
    if (target > t) {
      const int steps = step_count(target - t, settings_.dt);
      const double len = (target - t) / steps;
      const double h = direction * len;
      for (int s = 0; s < steps; ++s) {
        const Vec& k1 = f0;
        const Vec k2 = field_.evaluate(TorusPoint(y + (0.5 * h) * k1));
        const Vec k3 = field_.evaluate(TorusPoint(y + (0.5 * h) * k2));
        const Vec k4 = field_.evaluate(TorusPoint(y + h * k3));
        const Vec y1 = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const Vec f1 = field_.evaluate(TorusPoint(y1));
        if (phi) {
          const Vec mid = 0.5 * (y + y1) + (h / 8.0) * (f0 - f1);
          const double phi_mid = (*phi)(TorusPoint(mid));
          const double phi1 = (*phi)(TorusPoint(y1));
          acc += len / 6.0 * (phi0 + 4.0 * phi_mid + phi1);
          phi0 = phi1;
        }
        y = y1;
        f0 = f1;
      }
      t = target;
    }
    out.lifted.push_back(y);
    out.damping.push_back(acc);
  }
  return out;
}

}  // namespace ergodamp
