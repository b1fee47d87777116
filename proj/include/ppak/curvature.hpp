#pragma once

// Coordinate tensor calculus for a MetricField.
//
// Conventions:
//   Gamma^k_ij = 1/2 g^km (d_i g_mj + d_j g_mi - d_m g_ij), stored gamma(k, i, j)
//   R^l_ijk    = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
//   R_ijkl     = g_lm R^m_ijk, so Rm(X, Y, Z, W) = g(R(X, Y) Z, W)
//                with R(X, Y) = [nabla_X, nabla_Y] - nabla_[X,Y]
//   Ric_jk     = g^il R_ijkl,   scal = g^jk Ric_jk
//
// With these signs the round sphere has positive scalar curvature.

#include <span>

#include "ppak/metric.hpp"
#include "ppak/tensor.hpp"

namespace ppak {

struct ChristoffelData {
  Vector point;
  Tensor<3> gamma;  // gamma(k, i, j) = Gamma^k_ij
};

struct CurvatureData {
  Vector point;
  Tensor<4> riemann;  // R_ijkl, fully lowered
  Matrix ricci;
  double scalar = 0.0;
};

/// Throws SingularMatrixError if the metric is singular at the point.
ChristoffelData christoffel(const MetricField& metric, std::span<const double> point);
CurvatureData riemann(const MetricField& metric, std::span<const double> point);

struct RicciScalar {
  Matrix ricci;
  double scalar = 0.0;
};
RicciScalar ricci_scalar(const MetricField& metric, std::span<const double> point);

/// Geodesic acceleration -Gamma^k_ij v^i v^j.
Vector christoffel_acceleration(const ChristoffelData& gamma, std::span<const double> velocity);

/// Contracts every slot of a covariant tensor with the columns of `frame`
/// (column a holds the coordinate components of the a-th frame vector).
/// Throws InvalidArgument if the frame is degenerate.
template <std::size_t Rank>
Tensor<Rank> change_to_frame(const Tensor<Rank>& tensor, const Matrix& frame);

/// Same contraction for a vector's components: solves frame * w = x.
Vector vector_to_frame(std::span<const double> x, const Matrix& frame);

}  // namespace ppak
