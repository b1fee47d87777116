#include "ppak/local_field.hpp"

#include "ppak/linalg.hpp"

namespace ppak {

Matrix JetMatrix::values() const {
  Matrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j).value();
  return m;
}

Matrix JetMatrix::derivative(std::size_t k) const {
  Matrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j).d(k);
  return m;
}

JetMatrix lift(const Matrix& m, std::size_t vars) {
  JetMatrix out(m.dim(), vars);
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j).set_value(m(i, j));
  return out;
}

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
  const std::size_t n = a.dim();
  const std::size_t vars = a(0, 0).dim();
  JetMatrix c(n, vars);
  Jet1 tmp(vars);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        multiply_into(a(i, k), b(k, j), tmp);
        c(i, j) += tmp;
      }
  return c;
}

LocalField operator*(const JetMatrix& a, const LocalField& x) {
  const std::size_t n = a.dim();
  const std::size_t vars = a(0, 0).dim();
  LocalField y(n, Jet1(vars));
  Jet1 tmp(vars);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      multiply_into(a(i, k), x[k], tmp);
      y[i] += tmp;
    }
  return y;
}

JetMatrix inverse(const JetMatrix& a) {
  const std::size_t n = a.dim();
  const std::size_t vars = a(0, 0).dim();
  const Matrix inv = ppak::inverse(a.values());
  JetMatrix out = lift(inv, vars);
  for (std::size_t k = 0; k < vars; ++k) {
    const Matrix d = inv * a.derivative(k) * inv;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j).d(k) = -d(i, j);
  }
  return out;
}

Vector values(const LocalField& x) {
  Vector v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i].value();
  return v;
}

LocalField column(const JetMatrix& m, std::size_t j) {
  LocalField c;
  c.reserve(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) c.push_back(m(i, j));
  return c;
}

Vector lie_bracket(const LocalField& a, const LocalField& b) {
  const std::size_t n = a.size();
  Vector out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += a[j].value() * b[k].d(j) - b[j].value() * a[k].d(j);
    out[k] = s;
  }
  return out;
}

double directional(const LocalField& a, const Jet1& f) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j].value() * f.d(j);
  return s;
}

Jet1 pairing(const LocalField& a, const JetMatrix& m, const LocalField& b) {
  const std::size_t n = a.size();
  const std::size_t vars = a.empty() ? 0 : a[0].dim();
  Jet1 s(vars), tmp(vars);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      multiply_into(a[i], m(i, j), tmp);
      multiply_into(tmp, b[j], tmp);
      s += tmp;
    }
  return s;
}

}  // namespace ppak
