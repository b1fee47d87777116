#pragma once

// Dormand-Prince 5(4) with PI step-size control. The fifth-order solution is
// propagated; the embedded fourth-order one only estimates the local error.

#include <cstddef>
#include <functional>
#include <span>

namespace ppak {

struct OdeOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  /// Initial step; 0 selects one automatically.
  double initial_step = 0.0;
  /// Largest step; 0 means unbounded.
  double max_step = 0.0;
  std::size_t max_steps = 100'000'000;
};

struct OdeStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
};

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;
/// Called once at t0 and after every accepted step.
using OdeObserver = std::function<void(double t, std::span<const double> y)>;

/// Advances `y` from t0 to t_end in place. Throws IntegrationError when the
/// step size underflows or the step budget is exhausted, and propagates any
/// exception thrown by the right-hand side.
OdeStats integrate_dopri5(const OdeRhs& rhs, double t0, double t_end, std::span<double> y,
                          const OdeOptions& options, const OdeObserver& observer = {});

}  // namespace ppak
