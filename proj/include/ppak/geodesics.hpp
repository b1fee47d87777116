#pragma once

// Geodesics of the dual metric. With c = 2 v' + u' H and s = sum H_i x_i':
//   v'' = 1/2 c H s - 1/2 s u' - 1/2 H_u u'^2
//   u'' = -c s
//   x_i'' = 1/2 c H_i u'
// Along solutions c and c2 = sum (x_i')^2 + 1/2 u'^2 are constant, and
// g(x', x') = c^2 / 2 + c2.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppak/ode.hpp"
#include "ppak/ppwave.hpp"
#include "ppak/random.hpp"

namespace ppak {

struct GeodesicState {
  double t = 0.0;
  Vector position;
  Vector velocity;
};

struct ConservedMonitors {
  double c = 0.0;
  double c2 = 0.0;
  double speed = 0.0;
};

ConservedMonitors monitors(const DualChart& chart, const GeodesicState& state);

/// Accelerations of the full geodesic system at (position, velocity).
Vector geodesic_rhs(const DualChart& chart, std::span<const double> position, std::span<const double> velocity);

/// |a - b| / (1 + |b|)
double relative_drift(double value, double initial);

struct GeodesicSummary {
  GeodesicState initial;
  GeodesicState final;
  ConservedMonitors initial_monitors;
  double max_drift_c = 0.0;
  double max_drift_c2 = 0.0;
  double max_drift_speed = 0.0;
  /// max over steps and i of |x_i(t)| - |x_i(t0)| - sqrt(c2) (t - t0)
  double max_growth_excess = -std::numeric_limits<double>::infinity();
  /// max over steps and i of |x_i'(t)| - sqrt(c2)
  double max_velocity_excess = -std::numeric_limits<double>::infinity();
  /// max over steps of |u(t) - u(t0)| - sqrt(2 c2) (t - t0)
  double max_u_growth_excess = -std::numeric_limits<double>::infinity();
  double max_abs_u = 0.0;
  OdeStats stats;
};

using GeodesicObserver = std::function<void(const GeodesicState&, const ConservedMonitors&)>;

/// Integrates from `initial` to t_end, reporting every accepted step to the
/// observer. Throws IntegrationError or DomainError.
GeodesicSummary integrate(const DualChart& chart, const GeodesicState& initial, double t_end,
                          const OdeOptions& options = {}, const GeodesicObserver& observer = {});

/// Random start point (see sample_points) with a g-unit velocity drawn
/// uniformly on the sphere in the orthonormal frame.
GeodesicState random_unit_speed_state(const DualChart& chart, Rng& rng);

struct ProbeOptions {
  std::size_t ensemble = 100;
  double horizon = 1000.0;
  OdeOptions ode;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  double drift_tolerance = 1e-6;
  double growth_tolerance = 1e-4;
};

struct ProbeMember {
  GeodesicState initial;
  std::optional<GeodesicSummary> summary;
  std::string error;
};

struct ProbeReport {
  std::vector<ProbeMember> members;
  double max_drift_c = 0.0;
  double max_drift_c2 = 0.0;
  double max_drift_speed = 0.0;
  double max_growth_excess = -std::numeric_limits<double>::infinity();
  double max_velocity_excess = -std::numeric_limits<double>::infinity();
  double max_u_growth_excess = -std::numeric_limits<double>::infinity();
  std::size_t failures = 0;
  bool drift_ok = true;
  bool bounds_ok = true;
};

/// Integrates an ensemble of random unit-speed geodesics to the horizon.
/// Initial data depend only on the seed; members may run on `jobs` threads
/// without changing the result.
ProbeReport completeness_probe(const DualChart& chart, const ProbeOptions& options);

}  // namespace ppak
