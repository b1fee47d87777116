#pragma once

// pp-wave metrics 2 dv du + H du^2 + sum (dx^i)^2, their Riemannian duals
// g = h + 2 T^b (x) T^b with T = 1/2 (H + 1) d_v - d_u, and the flat-torus
// variant 2 dphi dtheta + H dtheta^2 + flat metric.
//
// Coordinate order is always (v, u, transverse...), so index 0 is the
// lightlike direction, index 1 the wave "time" and 2.. the wave front.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ppak/metric.hpp"
#include "ppak/random.hpp"
#include "ppak/scalar_field.hpp"
#include "ppak/tensor.hpp"

namespace ppak {

enum class WaveKind { PpWave, Torus };

const char* to_string(WaveKind kind);

/// (v, u, x3, ..., xn)
std::vector<std::string> ppwave_coordinates(std::size_t n);
/// (phi, theta, x1, ..., x2n) for a torus chart of dimension 2n + 2.
std::vector<std::string> torus_coordinates(std::size_t half_dim);

class PpWaveChart {
 public:
  /// Validates the profile for the given kind: it must be declared over the
  /// kind's coordinate list and not depend on coordinate 0; torus profiles
  /// must also be structurally 2pi-periodic.
  PpWaveChart(WaveKind kind, ScalarField profile);

  WaveKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return profile_.dim(); }
  const std::vector<std::string>& coordinates() const { return profile_.coordinates(); }
  const ScalarField& profile() const { return profile_; }

  /// Coordinate indices 2..n-1.
  std::vector<std::size_t> transverse() const;
  /// Transverse coordinate pairs (a, b) with J X_a = X_b. Plane-wave charts
  /// pair neighbours (x3, x4), (x5, x6), ...; torus charts pair x_i with
  /// x_{n+i}. Empty when the dimension is odd.
  std::vector<std::pair<std::size_t, std::size_t>> pairing() const;

  /// The Lorentzian metric h.
  MetricField metric() const;

 private:
  WaveKind kind_;
  ScalarField profile_;
};

/// Throws InvalidArgument if n < 3 or H references v.
PpWaveChart make_ppwave(std::size_t n, const ScalarField& profile);
PpWaveChart make_ppwave(std::size_t n, std::string_view profile, const ParameterMap& parameters = {});
/// Dimension 2 * half_dim + 2. Throws InvalidArgument for aperiodic H or H
/// depending on phi.
PpWaveChart make_torus_chart(std::size_t half_dim, const ScalarField& profile);
PpWaveChart make_torus_chart(std::size_t half_dim, std::string_view profile,
                             const ParameterMap& parameters = {});

/// True iff the transverse Hessian of H does not depend on the transverse
/// coordinates. Probed at random pairs of points sharing (v, u); relative
/// tolerance 1e-8.
bool is_plane_wave(const PpWaveChart& chart, std::size_t probes = 32, std::uint64_t seed = 1);

/// Uniform points in [-2, 2]^n for plane-wave charts, [0, 2pi)^n for tori.
std::vector<Vector> sample_points(const PpWaveChart& chart, std::size_t count, Rng& rng);

/// Coordinate Ricci tensor of h in closed form: only Ric_uu = -1/2 sum H_ii.
Matrix ppwave_ricci_closed_form(const PpWaveChart& chart, std::span<const double> point);

class DualChart {
 public:
  explicit DualChart(PpWaveChart wave);

  const PpWaveChart& wave() const { return wave_; }
  std::size_t dim() const noexcept { return wave_.dim(); }
  const ScalarField& profile() const { return wave_.profile(); }
  const MetricField& metric() const { return metric_; }

 private:
  PpWaveChart wave_;
  MetricField metric_;
};

DualChart make_dual(const PpWaveChart& chart);

/// Components of the dual metric for a given value of H.
Matrix dual_components(double h, std::size_t dim);

/// Orthonormal frame at a point; columns in the order T, X_3..X_n, Z.
struct FrameData {
  Vector point;
  Matrix frame;
  Jet2 profile;

  std::size_t t_index() const { return 0; }
  std::size_t z_index() const { return frame.dim() - 1; }
  /// Frame column of the coordinate vector d_c (c >= 2).
  static std::size_t x_index(std::size_t coordinate) { return coordinate - 1; }
};

FrameData make_frame(const DualChart& chart, std::span<const double> point);
/// T, Z and X_c coefficient columns for a given value of H.
Matrix frame_matrix(double h, std::size_t dim);

/// Christoffel symbols of the dual in closed form, gamma(k, i, j).
Tensor<3> dual_christoffel_closed_form(const DualChart& chart, std::span<const double> point);
/// Frame-basis Ricci tensor of the dual in closed form.
Matrix dual_ricci_closed_form(const DualChart& chart, std::span<const double> point);
/// -1/2 sum H_i^2
double dual_scalar_closed_form(const DualChart& chart, std::span<const double> point);

}  // namespace ppak
