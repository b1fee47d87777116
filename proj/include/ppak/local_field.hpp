#pragma once

// First-order local data around a point: vector fields and matrix fields
// whose coefficients are Jet1 values, enough to evaluate Lie brackets and
// exterior derivatives at that point.

#include <span>
#include <vector>

#include "ppak/jet.hpp"
#include "ppak/tensor.hpp"

namespace ppak {

using LocalField = std::vector<Jet1>;

class JetMatrix {
 public:
  JetMatrix() = default;
  JetMatrix(std::size_t dim, std::size_t vars) : dim_(dim), entries_(dim * dim, Jet1(vars)) {}

  std::size_t dim() const noexcept { return dim_; }
  const Jet1& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  Jet1& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }

  Matrix values() const;
  /// Entrywise partial derivative along coordinate k.
  Matrix derivative(std::size_t k) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Jet1> entries_;
};

/// Constant matrix lifted to a jet matrix in `vars` variables.
JetMatrix lift(const Matrix& m, std::size_t vars);
JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);
LocalField operator*(const JetMatrix& a, const LocalField& x);
/// Inverse with derivative d(A^-1) = -A^-1 dA A^-1. Throws SingularMatrixError.
JetMatrix inverse(const JetMatrix& a);

Vector values(const LocalField& x);
/// Column j as a local field.
LocalField column(const JetMatrix& m, std::size_t j);

/// [a, b]^k = a^j d_j b^k - b^j d_j a^k at the base point.
Vector lie_bracket(const LocalField& a, const LocalField& b);
/// Directional derivative a(f) at the base point.
double directional(const LocalField& a, const Jet1& f);
/// The function a^i m_ij b^j as a jet.
Jet1 pairing(const LocalField& a, const JetMatrix& m, const LocalField& b);

}  // namespace ppak
