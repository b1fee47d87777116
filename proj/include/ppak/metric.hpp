#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ppak/jet.hpp"
#include "ppak/scalar_field.hpp"
#include "ppak/tensor.hpp"

namespace ppak {

enum class Signature { Riemannian, Lorentzian };

const char* to_string(Signature s);

/// Metric components at a point: g_ij with first and second partials, one
/// Jet2 per unordered index pair.
class MetricJet {
 public:
  MetricJet() = default;
  explicit MetricJet(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  const Jet2& operator()(std::size_t i, std::size_t j) const { return entries_[slot(i, j)]; }
  Jet2& operator()(std::size_t i, std::size_t j) { return entries_[slot(i, j)]; }

  Matrix values() const;

 private:
  std::size_t slot(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * dim_ - i * (i - 1) / 2 + (j - i);
  }

  std::size_t dim_ = 0;
  std::vector<Jet2> entries_;
};

/// A symmetric (0,2)-tensor field on a single chart.
class MetricField {
 public:
  using Evaluator = std::function<MetricJet(std::span<const double>)>;

  MetricField(Signature signature, std::vector<std::string> coordinates, Evaluator evaluator);

  /// Components given as fields over the chart coordinates, upper triangle
  /// row-major (n(n+1)/2 entries).
  static MetricField from_components(Signature signature, std::vector<std::string> coordinates,
                                     std::vector<ScalarField> upper);
  static MetricField constant(Signature signature, std::vector<std::string> coordinates,
                              const Matrix& components);

  std::size_t dim() const noexcept { return coordinates_.size(); }
  Signature signature() const noexcept { return signature_; }
  const std::vector<std::string>& coordinates() const { return coordinates_; }

  MetricJet jet(std::span<const double> point) const;
  Matrix components(std::span<const double> point) const;

  /// True when the eigenvalue signs at `point` match the signature tag
  /// (Lorentzian: exactly one negative) and no eigenvalue is within 1e-12 of 0.
  bool signature_holds(std::span<const double> point) const;

 private:
  Signature signature_;
  std::vector<std::string> coordinates_;
  Evaluator evaluator_;
};

}  // namespace ppak
