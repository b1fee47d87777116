#pragma once

// Small dense linear algebra for metric-sized matrices (n <= ~16).

#include <span>
#include <vector>

#include "ppak/tensor.hpp"

namespace ppak {

/// Pivots with magnitude at or below this (relative to the largest entry,
/// floored at 1) mark a matrix as singular.
inline constexpr double kSingularTolerance = 1e-12;

Matrix identity(std::size_t n);
Matrix transpose(const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
/// a^T M b
double bilinear(const Matrix& m, std::span<const double> a, std::span<const double> b);

/// Gaussian elimination with partial pivoting. Throws SingularMatrixError.
Matrix inverse(const Matrix& a, double tolerance = kSingularTolerance);
Vector solve(const Matrix& a, std::span<const double> b, double tolerance = kSingularTolerance);
double determinant(const Matrix& a);

/// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
Vector symmetric_eigenvalues(const Matrix& a);

/// Lower-triangular L with a = L L^T; throws InvalidArgument unless a is
/// symmetric positive definite.
Matrix cholesky(const Matrix& a);

/// Column `j` of a matrix.
Vector column(const Matrix& a, std::size_t j);

}  // namespace ppak
