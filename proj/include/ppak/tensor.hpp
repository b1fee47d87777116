#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ppak {

using Vector = std::vector<double>;

/// Dense rank-R array over an n-dimensional index range, row-major.
template <std::size_t Rank>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::size_t dim, double fill = 0.0) : dim_(dim), data_(volume(dim), fill) {}

  std::size_t dim() const noexcept { return dim_; }
  static constexpr std::size_t rank() noexcept { return Rank; }

  template <class... I>
    requires(sizeof...(I) == Rank)
  double& operator()(I... idx) {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }
  template <class... I>
    requires(sizeof...(I) == Rank)
  double operator()(I... idx) const {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  double& at(const std::array<std::size_t, Rank>& idx) { return data_[offset(idx)]; }
  double at(const std::array<std::size_t, Rank>& idx) const { return data_[offset(idx)]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
  }

  Tensor& operator+=(const Tensor& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Tensor& operator*=(double s) {
    for (double& x : data_) x *= s;
    return *this;
  }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }
  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  static std::size_t volume(std::size_t n) {
    std::size_t v = 1;
    for (std::size_t r = 0; r < Rank; ++r) v *= n;
    return v;
  }
  std::size_t offset(const std::array<std::size_t, Rank>& idx) const {
    std::size_t o = 0;
    for (std::size_t r = 0; r < Rank; ++r) o = o * dim_ + idx[r];
    return o;
  }

  std::size_t dim_ = 0;
  std::vector<double> data_;
};

using Matrix = Tensor<2>;

/// Largest entrywise |a - b|.
template <std::size_t Rank>
double max_abs_diff(const Tensor<Rank>& a, const Tensor<Rank>& b) {
  double m = 0.0;
  const auto x = a.data();
  const auto y = b.data();
  for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, std::abs(x[k] - y[k]));
  return m;
}

}  // namespace ppak
