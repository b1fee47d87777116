#include "ppak/curvature.hpp"

#include <array>
#include <cmath>

#include "ppak/error.hpp"
#include "ppak/linalg.hpp"

namespace ppak {
namespace {

struct Connection {
  Matrix g;
  Matrix ginv;
  Tensor<3> gamma;   // Gamma^k_ij
  Tensor<4> dgamma;  // dgamma(l, k, i, j) = d_l Gamma^k_ij
};

// d_k g_ij and d_k d_l g_ij, read from the jets.
double dg(const MetricJet& m, std::size_t k, std::size_t i, std::size_t j) { return m(i, j).d(k); }
double ddg(const MetricJet& m, std::size_t k, std::size_t l, std::size_t i, std::size_t j) {
  return m(i, j).d2(k, l);
}

Connection connection(const MetricJet& m, bool with_derivative) {
  const std::size_t n = m.dim();
  Connection c{m.values(), Matrix(), Tensor<3>(n), Tensor<4>()};
  c.ginv = inverse(c.g);

  Tensor<3> first(n);  // Gamma_{m,ij}
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const double v = 0.5 * (dg(m, i, a, j) + dg(m, j, a, i) - dg(m, a, i, j));
        first(a, i, j) = v;
        first(a, j, i) = v;
      }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double s = 0.0;
        for (std::size_t a = 0; a < n; ++a) s += c.ginv(k, a) * first(a, i, j);
        c.gamma(k, i, j) = s;
        c.gamma(k, j, i) = s;
      }
  if (!with_derivative) return c;

  // d_l g^{ka} = -g^{kb} d_l g_bc g^{ca}
  Tensor<3> dginv(n);
  for (std::size_t l = 0; l < n; ++l) {
    Matrix dgl(n);
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t d = 0; d < n; ++d) dgl(b, d) = dg(m, l, b, d);
    const Matrix prod = c.ginv * dgl * c.ginv;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a) dginv(l, k, a) = -prod(k, a);
  }

  c.dgamma = Tensor<4>(n);
  Tensor<3> dfirst(n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          const double v = 0.5 * (ddg(m, l, i, a, j) + ddg(m, l, j, a, i) - ddg(m, l, a, i, j));
          dfirst(a, i, j) = v;
          dfirst(a, j, i) = v;
        }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          double s = 0.0;
          for (std::size_t a = 0; a < n; ++a) s += dginv(l, k, a) * first(a, i, j) + c.ginv(k, a) * dfirst(a, i, j);
          c.dgamma(l, k, i, j) = s;
          c.dgamma(l, k, j, i) = s;
        }
  }
  return c;
}

}  // namespace

ChristoffelData christoffel(const MetricField& metric, std::span<const double> point) {
  Connection c = connection(metric.jet(point), false);
  return {Vector(point.begin(), point.end()), std::move(c.gamma)};
}

CurvatureData riemann(const MetricField& metric, std::span<const double> point) {
  const Connection c = connection(metric.jet(point), true);
  const std::size_t n = metric.dim();

  // R^l_ijk, stored up(l, i, j, k)
  Tensor<4> up(n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          double s = c.dgamma(i, l, j, k) - c.dgamma(j, l, i, k);
          for (std::size_t m = 0; m < n; ++m) s += c.gamma(l, i, m) * c.gamma(m, j, k) - c.gamma(l, j, m) * c.gamma(m, i, k);
          up(l, i, j, k) = s;
        }

  CurvatureData out{Vector(point.begin(), point.end()), Tensor<4>(n), Matrix(n), 0.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          double s = 0.0;
          for (std::size_t m = 0; m < n; ++m) s += c.g(l, m) * up(m, i, j, k);
          out.riemann(i, j, k, l) = s;
        }

  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) s += c.ginv(i, l) * out.riemann(i, j, k, l);
      out.ricci(j, k) = s;
    }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      const double s = 0.5 * (out.ricci(j, k) + out.ricci(k, j));
      out.ricci(j, k) = s;
      out.ricci(k, j) = s;
    }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) out.scalar += c.ginv(j, k) * out.ricci(j, k);
  return out;
}

RicciScalar ricci_scalar(const MetricField& metric, std::span<const double> point) {
  CurvatureData c = riemann(metric, point);
  return {std::move(c.ricci), c.scalar};
}

Vector christoffel_acceleration(const ChristoffelData& gamma, std::span<const double> velocity) {
  const std::size_t n = gamma.gamma.dim();
  Vector a(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += gamma.gamma(k, i, j) * velocity[i] * velocity[j];
    a[k] = -s;
  }
  return a;
}

namespace {

void check_frame(const Matrix& frame) {
  const double scale = std::max(1.0, frame.max_abs());
  if (std::abs(determinant(frame)) <= kSingularTolerance * std::pow(scale, double(frame.dim()))) {
    throw InvalidArgument("frame vectors are linearly dependent");
  }
}

}  // namespace

template <std::size_t Rank>
Tensor<Rank> change_to_frame(const Tensor<Rank>& tensor, const Matrix& frame) {
  const std::size_t n = tensor.dim();
  if (frame.dim() != n) throw InvalidArgument("frame dimension does not match tensor dimension");
  check_frame(frame);
  // Contract one slot at a time: out(.., a, ..) = sum_i in(.., i, ..) frame(i, a).
  Tensor<Rank> cur = tensor;
  for (std::size_t slot = 0; slot < Rank; ++slot) {
    Tensor<Rank> next(n);
    std::array<std::size_t, Rank> idx{};
    const std::size_t total = cur.data().size();
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      for (std::size_t r = Rank; r-- > 0;) {
        idx[r] = rem % n;
        rem /= n;
      }
      const std::size_t a = idx[slot];
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        idx[slot] = i;
        s += cur.at(idx) * frame(i, a);
      }
      idx[slot] = a;
      next.at(idx) = s;
    }
    cur = std::move(next);
  }
  return cur;
}

template Tensor<1> change_to_frame(const Tensor<1>&, const Matrix&);
template Tensor<2> change_to_frame(const Tensor<2>&, const Matrix&);
template Tensor<3> change_to_frame(const Tensor<3>&, const Matrix&);
template Tensor<4> change_to_frame(const Tensor<4>&, const Matrix&);

Vector vector_to_frame(std::span<const double> x, const Matrix& frame) {
  check_frame(frame);
  return solve(frame, x);
}

}  // namespace ppak
