#include "ppak/geodesics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ppak/error.hpp"
#include "ppak/linalg.hpp"

namespace ppak {
namespace {

void check_state(const DualChart& chart, std::span<const double> position, std::span<const double> velocity) {
  if (position.size() != chart.dim() || velocity.size() != chart.dim()) {
    throw InvalidArgument("geodesic state dimension does not match the chart");
  }
}

void accelerations(const Jet1& h, std::span<const double> vel, std::span<double> acc) {
  const std::size_t n = vel.size();
  const double ud = vel[1];
  const double c = 2.0 * vel[0] + ud * h.value();
  double s = 0.0;
  for (std::size_t i = 2; i < n; ++i) s += h.d(i) * vel[i];
  acc[0] = 0.5 * c * h.value() * s - 0.5 * s * ud - 0.5 * h.d(1) * ud * ud;
  acc[1] = -c * s;
  for (std::size_t i = 2; i < n; ++i) acc[i] = 0.5 * c * h.d(i) * ud;
}

}  // namespace

ConservedMonitors monitors(const DualChart& chart, const GeodesicState& state) {
  check_state(chart, state.position, state.velocity);
  const double h = chart.profile().eval(state.position);
  const Vector& x = state.velocity;
  ConservedMonitors m;
  m.c = 2.0 * x[0] + x[1] * h;
  m.c2 = 0.5 * x[1] * x[1];
  for (std::size_t i = 2; i < x.size(); ++i) m.c2 += x[i] * x[i];
  m.speed = bilinear(dual_components(h, chart.dim()), x, x);
  return m;
}

Vector geodesic_rhs(const DualChart& chart, std::span<const double> position, std::span<const double> velocity) {
  check_state(chart, position, velocity);
  Vector acc(chart.dim());
  accelerations(chart.profile().eval_jet1(position), velocity, acc);
  return acc;
}

double relative_drift(double value, double initial) { return std::abs(value - initial) / (1.0 + std::abs(initial)); }

GeodesicSummary integrate(const DualChart& chart, const GeodesicState& initial, double t_end,
                          const OdeOptions& options, const GeodesicObserver& observer) {
  check_state(chart, initial.position, initial.velocity);
  for (double x : initial.position)
    if (!std::isfinite(x)) throw InvalidArgument("initial position is not finite");
  for (double x : initial.velocity)
    if (!std::isfinite(x)) throw InvalidArgument("initial velocity is not finite");
  const std::size_t n = chart.dim();
  const ScalarField& profile = chart.profile();

  GeodesicSummary sum;
  sum.initial = initial;
  sum.initial_monitors = monitors(chart, initial);
  const double root_c2 = std::sqrt(sum.initial_monitors.c2);

  std::vector<double> y(2 * n);
  std::copy(initial.position.begin(), initial.position.end(), y.begin());
  std::copy(initial.velocity.begin(), initial.velocity.end(), y.begin() + n);

  auto rhs = [&](double, std::span<const double> state, std::span<double> dydt) {
    const Jet1 h = profile.eval_jet1(state.first(n));
    std::copy(state.begin() + n, state.end(), dydt.begin());
    accelerations(h, state.subspan(n), dydt.subspan(n));
  };

  GeodesicState cur{initial.t, Vector(n), Vector(n)};
  auto watch = [&](double t, std::span<const double> state) {
    cur.t = t;
    std::copy(state.begin(), state.begin() + n, cur.position.begin());
    std::copy(state.begin() + n, state.end(), cur.velocity.begin());
    const ConservedMonitors m = monitors(chart, cur);
    sum.max_drift_c = std::max(sum.max_drift_c, relative_drift(m.c, sum.initial_monitors.c));
    sum.max_drift_c2 = std::max(sum.max_drift_c2, relative_drift(m.c2, sum.initial_monitors.c2));
    sum.max_drift_speed = std::max(sum.max_drift_speed, relative_drift(m.speed, sum.initial_monitors.speed));
    const double elapsed = std::abs(t - initial.t);
    for (std::size_t i = 2; i < n; ++i) {
      sum.max_growth_excess = std::max(
          sum.max_growth_excess, std::abs(cur.position[i]) - std::abs(initial.position[i]) - root_c2 * elapsed);
      sum.max_velocity_excess = std::max(sum.max_velocity_excess, std::abs(cur.velocity[i]) - root_c2);
    }
    sum.max_u_growth_excess = std::max(sum.max_u_growth_excess, std::abs(cur.position[1] - initial.position[1]) -
                                                                    std::sqrt(2.0 * sum.initial_monitors.c2) * elapsed);
    sum.max_abs_u = std::max(sum.max_abs_u, std::abs(cur.position[1]));
    if (observer) observer(cur, m);
  };

  sum.stats = integrate_dopri5(rhs, initial.t, t_end, y, options, watch);
  sum.final = cur;
  return sum;
}

GeodesicState random_unit_speed_state(const DualChart& chart, Rng& rng) {
  const std::size_t n = chart.dim();
  GeodesicState s;
  s.position = sample_points(chart.wave(), 1, rng).front();
  Vector w(n);
  double len = 0.0;
  while (len < 1e-8) {
    for (double& x : w) x = rng.normal();
    len = norm(w);
  }
  for (double& x : w) x /= len;
  // The frame is g-orthonormal, so E w has unit g-length.
  s.velocity = frame_matrix(chart.profile().eval(s.position), n) * w;
  return s;
}

ProbeReport completeness_probe(const DualChart& chart, const ProbeOptions& options) {
  if (!std::isfinite(options.horizon) || options.horizon <= 0.0) {
    throw InvalidArgument("probe horizon must be finite and positive");
  }
  ProbeReport report;
  report.members.resize(options.ensemble);
  Rng rng(options.seed);
  for (ProbeMember& m : report.members) m.initial = random_unit_speed_state(chart, rng);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < report.members.size(); k = next++) {
      ProbeMember& m = report.members[k];
      try {
        m.summary = integrate(chart, m.initial, m.initial.t + options.horizon, options.ode);
      } catch (const Error& e) {
        m.error = e.what();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(1, options.ensemble));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (const ProbeMember& m : report.members) {
    if (!m.summary) {
      ++report.failures;
      continue;
    }
    const GeodesicSummary& s = *m.summary;
    report.max_drift_c = std::max(report.max_drift_c, s.max_drift_c);
    report.max_drift_c2 = std::max(report.max_drift_c2, s.max_drift_c2);
    report.max_drift_speed = std::max(report.max_drift_speed, s.max_drift_speed);
    report.max_growth_excess = std::max(report.max_growth_excess, s.max_growth_excess);
    report.max_velocity_excess = std::max(report.max_velocity_excess, s.max_velocity_excess);
    report.max_u_growth_excess = std::max(report.max_u_growth_excess, s.max_u_growth_excess);
  }
  report.drift_ok = report.failures == 0 && report.max_drift_c <= options.drift_tolerance &&
                    report.max_drift_c2 <= options.drift_tolerance &&
                    report.max_drift_speed <= options.drift_tolerance;
  report.bounds_ok = report.failures == 0 && report.max_growth_excess <= options.growth_tolerance &&
                     report.max_u_growth_excess <= options.growth_tolerance;
  return report;
}

}  // namespace ppak
