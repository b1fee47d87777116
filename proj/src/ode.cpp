#include "ppak/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ppak/error.hpp"

namespace ppak {
namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr double kAlpha = 0.7 / 5.0;
constexpr double kBeta = 0.4 / 5.0;

double error_norm(std::span<const double> err, std::span<const double> y0, std::span<const double> y1,
                  const OdeOptions& o) {
  double s = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double sc = o.abs_tol + o.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / sc;
    s += r * r;
  }
  return std::sqrt(s / double(err.size()));
}

}  // namespace

OdeStats integrate_dopri5(const OdeRhs& rhs, double t0, double t_end, std::span<double> y,
                          const OdeOptions& options, const OdeObserver& observer) {
  if (!(options.abs_tol > 0.0) || !(options.rel_tol >= 0.0)) {
    throw InvalidArgument("integrator tolerances must be positive");
  }
  if (!std::isfinite(t0) || !std::isfinite(t_end)) throw InvalidArgument("integration interval must be finite");
  const std::size_t n = y.size();
  OdeStats stats;
  if (observer) observer(t0, y);
  if (t_end == t0 || n == 0) return stats;
  const double dir = t_end > t0 ? 1.0 : -1.0;

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n), err(n);
  auto eval = [&](double t, std::span<const double> state, std::vector<double>& out) {
    rhs(t, state, out);
    ++stats.evaluations;
  };

  double t = t0;
  eval(t, y, k1);

  double h = std::abs(options.initial_step);
  if (h == 0.0) {
    // Hairer-Wanner starting step heuristic.
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = options.abs_tol + options.rel_tol * std::abs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / n);
    d1 = std::sqrt(d1 / n);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, std::abs(t_end - t0));
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dir * h0 * k1[i];
    eval(t + dir * h0, tmp, k2);
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = options.abs_tol + options.rel_tol * std::abs(y[i]);
      d2 += ((k2[i] - k1[i]) / sc) * ((k2[i] - k1[i]) / sc);
    }
    d2 = std::sqrt(d2 / n) / h0;
    const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                 : std::pow(0.01 / std::max(d1, d2), 1.0 / 5.0);
    h = std::min(100.0 * h0, h1);
  }
  if (options.max_step > 0.0) h = std::min(h, options.max_step);

  double err_prev = 1e-4;
  bool last_rejected = false;
  while (dir * (t_end - t) > 0.0) {
    if (stats.accepted + stats.rejected >= options.max_steps) {
      throw IntegrationError("step budget of " + std::to_string(options.max_steps) + " exhausted at t = " +
                             std::to_string(t));
    }
    const double h_min = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (h < h_min) throw IntegrationError("step size underflow at t = " + std::to_string(t));
    bool final_step = false;
    if (h >= std::abs(t_end - t)) {
      h = std::abs(t_end - t);
      final_step = true;
    }
    const double hs = dir * h;

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * a21 * k1[i];
    eval(t + c2 * hs, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    eval(t + c3 * hs, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    eval(t + c4 * hs, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    eval(t + c5 * hs, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    eval(t + hs, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    eval(t + hs, ynew, k7);
    for (std::size_t i = 0; i < n; ++i)
      err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);

    const double en = error_norm(err, y, ynew, options);
    if (!std::isfinite(en)) {
      ++stats.rejected;
      h *= kMinFactor;
      last_rejected = true;
      continue;
    }
    if (en <= 1.0) {
      t = final_step ? t_end : t + hs;
      std::copy(ynew.begin(), ynew.end(), y.begin());
      k1.swap(k7);
      ++stats.accepted;
      if (observer) observer(t, y);
      double factor = en == 0.0 ? kMaxFactor
                                : kSafety * std::pow(en, -kAlpha) * std::pow(err_prev, kBeta);
      factor = std::clamp(factor, kMinFactor, kMaxFactor);
      if (last_rejected) factor = std::min(factor, 1.0);
      h *= factor;
      if (options.max_step > 0.0) h = std::min(h, options.max_step);
      err_prev = std::max(en, 1e-4);
      last_rejected = false;
    } else {
      ++stats.rejected;
      h *= std::max(kMinFactor, kSafety * std::pow(en, -kAlpha));
      last_rejected = true;
    }
  }
  return stats;
}

}  // namespace ppak
