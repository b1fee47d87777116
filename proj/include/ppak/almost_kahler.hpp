#pragma once

// Almost complex structure J T = Z, J X_a = X_b on the orthonormal frame of
// a dual chart, its fundamental form omega(a, b) = g(a, J b), and the
// Nijenhuis tensor N(a, b) = [Ja, Jb] - J[Ja, b] - J[a, Jb] - [a, b].

#include <span>
#include <string>
#include <vector>

#include "ppak/local_field.hpp"
#include "ppak/ppwave.hpp"
#include "ppak/tensor.hpp"

namespace ppak {

struct AlmostComplexStructure {
  Vector point;
  Matrix frame;       // J in the frame basis (constant)
  Matrix coordinate;  // E J_frame E^-1
};

struct FundamentalForm {
  Vector point;
  Matrix omega;  // coordinate basis
};

enum class Basis { Frame, Coordinate };

struct NijenhuisValue {
  Vector point;
  Basis basis;
  std::size_t a;
  std::size_t b;
  Vector value;  // coordinate components
};

/// Throws InvalidArgument unless the dimension is even and at least 4.
Matrix frame_J(const PpWaveChart& chart);
AlmostComplexStructure build_J(const DualChart& chart, std::span<const double> point);
FundamentalForm build_omega(const DualChart& chart, std::span<const double> point);

/// Frame fields (columns T, X.., Z) with coefficients as jets at `point`.
JetMatrix local_frame(const DualChart& chart, std::span<const double> point);
/// J in coordinates as a jet matrix at `point`.
JetMatrix local_J(const DualChart& chart, std::span<const double> point);
/// omega = g J as a jet matrix at `point`.
JetMatrix local_omega(const DualChart& chart, std::span<const double> point);

/// (d omega)_ijk = d_i omega_jk - d_j omega_ik + d_k omega_ij.
Tensor<3> exterior_derivative_omega(const DualChart& chart, std::span<const double> point);
/// d omega(a, b, c) on frame vectors via the invariant formula with brackets.
double exterior_derivative_omega_frame(const DualChart& chart, std::span<const double> point,
                                       std::size_t a, std::size_t b, std::size_t c);

NijenhuisValue nijenhuis(const DualChart& chart, std::span<const double> point, std::size_t a,
                         std::size_t b, Basis basis = Basis::Frame);
/// N(T, X_c) in closed form for a transverse coordinate c, in coordinates.
Vector nijenhuis_closed_form(const DualChart& chart, std::span<const double> point, std::size_t c);

/// Frame structure functions: [E_a, E_b] = sum_c coeff(c, a, b) E_c.
Tensor<3> frame_brackets(const DualChart& chart, std::span<const double> point);

enum class Verdict { KahlerFlat, StrictlyAlmostKahler };
const char* to_string(Verdict v);

inline constexpr double kGradientThreshold = 1e-10;
inline constexpr double kNijenhuisThreshold = 1e-8;
inline constexpr double kScalarThreshold = 1e-10;

struct ClassificationReport {
  std::string profile;
  std::size_t samples = 0;
  double max_grad_h = 0.0;
  double scalar_min = 0.0;
  double scalar_max = 0.0;
  double max_nijenhuis = 0.0;  // g-norm of N(T, X_i)
  double max_domega = 0.0;
  double max_j_square = 0.0;       // |J^2 + I|
  double max_j_compatibility = 0.0;  // |J^T g J - g|
  Verdict verdict = Verdict::KahlerFlat;
  /// Per-sample three-way agreement of the gradient, Nijenhuis and scalar tests.
  bool consistent = true;
  std::size_t inconsistent_samples = 0;
};

/// Throws InvalidArgument for an empty sample.
ClassificationReport classify(const DualChart& chart, std::span<const Vector> points);

}  // namespace ppak
