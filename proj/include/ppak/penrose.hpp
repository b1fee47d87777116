#pragma once

// Plane-wave limits of Lorentzian metrics given in lightlike form
//
//   h = 2 dx0 dx1 + h11 dx1^2 + 2 h1j dx1 dxj + hij dxi dxj    (i, j >= 2)
//
// The scaling x = (x0, W^2 y1, W y2, ..., W yn) gives the family
// g_W = W^-2 (pullback of h), whose W -> 0 limit is obtained by restricting the
// free components to x1 = ... = xn = 0 and dropping the h11, h1j terms.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ppak/almost_kahler.hpp"
#include "ppak/metric.hpp"
#include "ppak/random.hpp"
#include "ppak/scalar_field.hpp"

namespace ppak {

/// (x0, ..., xn)
std::vector<std::string> lightlike_coordinates(std::size_t n);

/// Parses "hIJ" (single-digit indices) or "h_I_J"; returns (min, max).
std::pair<std::size_t, std::size_t> parse_component_key(std::string_view key);
std::string component_key(std::size_t i, std::size_t j);

using ComponentTable = std::map<std::string, std::string, std::less<>>;

class LightlikeChart {
 public:
  /// Dimension n + 1. Free entries missing from the table default to "1" on
  /// the front diagonal (i = j >= 2) and "0" elsewhere. Throws InvalidArgument
  /// for keys addressing a fixed entry (index 0) or out of range, and when the
  /// metric is not Lorentzian at probe points with x0 inside `x0_range`.
  static LightlikeChart make(std::size_t n, const ComponentTable& components,
                             std::pair<double, double> x0_range = {-1.0, 1.0},
                             const ParameterMap& parameters = {});

  std::size_t dim() const noexcept { return coordinates_.size(); }
  const std::vector<std::string>& coordinates() const { return coordinates_; }
  std::pair<double, double> x0_range() const { return x0_range_; }
  /// Component field h_ij, fixed entries included.
  const ScalarField& component(std::size_t i, std::size_t j) const;
  MetricField metric() const;

 private:
  LightlikeChart() = default;
  std::size_t slot(std::size_t i, std::size_t j) const;

  std::vector<std::string> coordinates_;
  std::vector<ScalarField> upper_;
  std::pair<double, double> x0_range_{-1.0, 1.0};
};

/// x0 uniform in the chart's range, other coordinates uniform in [-half_width, half_width].
std::vector<Vector> sample_points(const LightlikeChart& chart, std::size_t count, Rng& rng,
                                  double half_width = 0.5);

class PenroseFamily {
 public:
  /// Throws InvalidArgument unless omega > 0.
  PenroseFamily(LightlikeChart chart, double omega);

  const LightlikeChart& source() const { return chart_; }
  double omega() const noexcept { return omega_; }
  /// Chain-rule factors (1, W^2, W, ..., W) of the scaling map.
  Vector scales() const;
  /// g_W, assembled entrywise with prefactors W^2 (11), W (1j) and 1 (ij).
  MetricField metric() const;
  /// Pullback of h under the scaling map, computed generically as
  /// s_i s_j h_ij(x(y)) with jets carried through the chain rule.
  MetricField pullback() const;

 private:
  LightlikeChart chart_;
  double omega_;
};

/// max |pullback - W^2 g_W| over the points.
double homothety_residual(const PenroseFamily& family, std::span<const Vector> points);
/// max |Gamma(g_W) - Gamma(pullback)| / max(1, |Gamma|) over the points.
double christoffel_residual(const PenroseFamily& family, std::span<const Vector> points);

class PlaneWaveLimit {
 public:
  std::size_t dim() const noexcept { return coordinates_.size(); }
  const std::vector<std::string>& coordinates() const { return coordinates_; }
  std::pair<double, double> x0_range() const { return x0_range_; }
  /// Restricted front component (i, j >= 2).
  const ScalarField& front(std::size_t i, std::size_t j) const;
  /// Every free component of the limit keyed as in chart files.
  ComponentTable component_strings() const;
  MetricField metric() const;
  /// Constant front block, or nullopt if some entry depends on x0.
  std::optional<Matrix> constant_front() const;

 private:
  friend PlaneWaveLimit take_limit(const LightlikeChart& chart);
  std::vector<std::string> coordinates_;
  std::vector<ScalarField> front_;  // upper triangle over indices 2..n
  std::pair<double, double> x0_range_{-1.0, 1.0};
};

PlaneWaveLimit take_limit(const LightlikeChart& chart);

/// max over points and components of |g_W - h_PW|.
double limit_deviation(const PenroseFamily& family, const PlaneWaveLimit& limit, std::span<const Vector> points);

inline constexpr double kCertificateTolerance = 1e-9;

struct PlaneWaveCertificate {
  bool plane_wave = false;
  /// max |h(V, V)| for V = d/dx1 = grad x0
  double lightlike_residual = 0.0;
  /// max |Gamma^k_{i1}| = max |nabla V|
  double parallel_residual = 0.0;
  /// max Frobenius norm of R(X, Y) for X, Y in {d1, ..., dn}
  double curvature_residual = 0.0;
  /// max |R_ijkl|, for information
  double max_curvature = 0.0;
  /// h(d0, d0), which is zero by construction
  double n_field_norm = 0.0;
  std::string offending;
};

PlaneWaveCertificate limit_is_plane_wave(const PlaneWaveLimit& limit, std::size_t samples = 16,
                                         std::uint64_t seed = 1);

struct PipelineOptions {
  /// Profile over (v, u, x3, ...) asserted to be the Brinkmann form of the
  /// limit; must be a plane wave.
  std::optional<std::string> brinkmann_profile;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
};

struct PipelineReport {
  std::string status;
  bool converted = false;
  std::string conversion;  // "constant-front", "user-profile" or empty
  std::string brinkmann_profile;
  std::optional<double> pullback_residual;
  std::optional<ClassificationReport> classification;
};

/// Throws InvalidArgument for an odd or too small limit dimension and when a
/// constant front block is not positive definite.
PipelineReport limit_to_dual_pipeline(const PlaneWaveLimit& limit, const PipelineOptions& options = {});

}  // namespace ppak
