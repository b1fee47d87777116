#include "ppak/metric.hpp"

#include <cmath>

#include "ppak/error.hpp"
#include "ppak/linalg.hpp"

namespace ppak {

const char* to_string(Signature s) { return s == Signature::Riemannian ? "riemannian" : "lorentzian"; }

MetricJet::MetricJet(std::size_t dim) : dim_(dim), entries_(dim * (dim + 1) / 2, Jet2(dim)) {}

Matrix MetricJet::values() const {
  Matrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j).value();
  return m;
}

MetricField::MetricField(Signature signature, std::vector<std::string> coordinates, Evaluator evaluator)
    : signature_(signature), coordinates_(std::move(coordinates)), evaluator_(std::move(evaluator)) {
  if (coordinates_.empty()) throw InvalidArgument("metric needs at least one coordinate");
}

MetricField MetricField::from_components(Signature signature, std::vector<std::string> coordinates,
                                         std::vector<ScalarField> upper) {
  const std::size_t n = coordinates.size();
  if (upper.size() != n * (n + 1) / 2) {
    throw InvalidArgument("expected " + std::to_string(n * (n + 1) / 2) + " metric components, got " +
                          std::to_string(upper.size()));
  }
  for (const ScalarField& f : upper) {
    if (f.dim() != n) throw InvalidArgument("metric component declared over the wrong coordinates");
  }
  auto eval = [n, upper = std::move(upper)](std::span<const double> x) {
    MetricJet m(n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = upper[k++].eval_jet2(x);
    return m;
  };
  return MetricField(signature, std::move(coordinates), std::move(eval));
}

MetricField MetricField::constant(Signature signature, std::vector<std::string> coordinates,
                                  const Matrix& components) {
  const std::size_t n = coordinates.size();
  if (components.dim() != n) throw InvalidArgument("component matrix does not match coordinate count");
  auto eval = [n, components](std::span<const double>) {
    MetricJet m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j).set_value(0.5 * (components(i, j) + components(j, i)));
    return m;
  };
  return MetricField(signature, std::move(coordinates), std::move(eval));
}

MetricJet MetricField::jet(std::span<const double> point) const {
  if (point.size() != dim()) {
    throw InvalidArgument("point has " + std::to_string(point.size()) + " coordinates, metric expects " +
                          std::to_string(dim()));
  }
  return evaluator_(point);
}

Matrix MetricField::components(std::span<const double> point) const { return jet(point).values(); }

bool MetricField::signature_holds(std::span<const double> point) const {
  const Vector ev = symmetric_eigenvalues(components(point));
  std::size_t negative = 0;
  for (double e : ev) {
    if (std::abs(e) <= 1e-12) return false;
    if (e < 0) ++negative;
  }
  return negative == (signature_ == Signature::Lorentzian ? 1u : 0u);
}

}  // namespace ppak
