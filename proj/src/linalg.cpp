#include "ppak/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ppak/error.hpp"

namespace ppak {

Matrix identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix transpose(const Matrix& a) {
  const std::size_t n = a.dim();
  Matrix t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(j, i) = a(i, j);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.dim();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  const std::size_t n = a.dim();
  Vector y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i] += a(i, j) * x[j];
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double bilinear(const Matrix& m, std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) s += a[i] * m(i, j) * b[j];
  return s;
}

namespace {

// In-place LU with partial pivoting; returns the permutation sign.
int lu_decompose(Matrix& lu, std::vector<std::size_t>& perm, double tolerance) {
  const std::size_t n = lu.dim();
  perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  const double scale = std::max(1.0, lu.max_abs());
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    if (std::abs(lu(p, k)) <= tolerance * scale) {
      throw SingularMatrixError("matrix is singular (pivot " + std::to_string(lu(p, k)) +
                                " in column " + std::to_string(k) + ")");
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      std::swap(perm[k], perm[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return sign;
}

Vector lu_solve(const Matrix& lu, const std::vector<std::size_t>& perm, std::span<const double> b) {
  const std::size_t n = lu.dim();
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
    x[i] = s / lu(i, i);
  }
  return x;
}

}  // namespace

Matrix inverse(const Matrix& a, double tolerance) {
  const std::size_t n = a.dim();
  Matrix lu = a;
  std::vector<std::size_t> perm;
  lu_decompose(lu, perm, tolerance);
  Matrix inv(n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    const Vector col = lu_solve(lu, perm, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

Vector solve(const Matrix& a, std::span<const double> b, double tolerance) {
  Matrix lu = a;
  std::vector<std::size_t> perm;
  lu_decompose(lu, perm, tolerance);
  return lu_solve(lu, perm, b);
}

double determinant(const Matrix& a) {
  Matrix lu = a;
  std::vector<std::size_t> perm;
  int sign = 0;
  try {
    sign = lu_decompose(lu, perm, 0.0);
  } catch (const SingularMatrixError&) {
    return 0.0;
  }
  double det = sign;
  for (std::size_t i = 0; i < a.dim(); ++i) det *= lu(i, i);
  return det;
}

Vector symmetric_eigenvalues(const Matrix& a) {
  const std::size_t n = a.dim();
  Matrix m = a;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    if (off <= 1e-30 * std::max(1.0, m.max_abs() * m.max_abs())) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (m(p, q) == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m(k, p);
          const double mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m(p, k);
          const double mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
    }
  }
  Vector ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = m(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

Matrix cholesky(const Matrix& a) {
  const std::size_t n = a.dim();
  Matrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) throw InvalidArgument("matrix is not positive definite");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

Vector column(const Matrix& a, std::size_t j) {
  Vector c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a(i, j);
  return c;
}

}  // namespace ppak
