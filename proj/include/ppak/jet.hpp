#pragma once

// Truncated Taylor arithmetic in several variables.
//
// A Jet<1> carries a value and its gradient; a Jet<2> additionally carries
// the Hessian, stored once as the upper triangle so that d2(i, j) and
// d2(j, i) read the same slot. Every arithmetic rule below is exact for the
// truncated series, which makes the propagated derivatives exact (up to
// rounding) for polynomial inputs.

#include <cstddef>
#include <span>
#include <vector>

namespace ppak {

template <int Order>
class Jet {
  static_assert(Order == 1 || Order == 2, "only first and second order jets are supported");

 public:
  static constexpr int order = Order;

  Jet() = default;
  /// Constant jet in `dim` variables.
  explicit Jet(std::size_t dim, double value = 0.0);
  /// The coordinate function x_index evaluated at `value`.
  static Jet variable(std::size_t dim, std::size_t index, double value);

  std::size_t dim() const noexcept { return grad_.size(); }

  double value() const noexcept { return value_; }
  void set_value(double v) noexcept { value_ = v; }

  double d(std::size_t i) const { return grad_[i]; }
  double& d(std::size_t i) { return grad_[i]; }
  std::span<const double> gradient() const noexcept { return grad_; }

  double d2(std::size_t i, std::size_t j) const
    requires(Order >= 2)
  {
    return hess_[tri_index(i, j)];
  }
  double& d2(std::size_t i, std::size_t j)
    requires(Order >= 2)
  {
    return hess_[tri_index(i, j)];
  }
  /// Upper triangle of the Hessian, row-major.
  std::span<const double> hessian_triangle() const
    requires(Order >= 2)
  {
    return hess_;
  }

  /// Turns this jet into the constant `value` in `dim` variables, reusing storage.
  void reset(std::size_t dim, double value);

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(double c);
  Jet& operator-=(double c);
  Jet& operator*=(double c);
  Jet& operator/=(double c);

  friend bool operator==(const Jet&, const Jet&) = default;

 private:
  std::size_t tri_index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) {
      const std::size_t t = i;
      i = j;
      j = t;
    }
    const std::size_t n = grad_.size();
    return i * n - i * (i - 1) / 2 + (j - i);
  }

  template <int O>
  friend void add_into(const Jet<O>&, const Jet<O>&, Jet<O>&);
  template <int O>
  friend void subtract_into(const Jet<O>&, const Jet<O>&, Jet<O>&);
  template <int O>
  friend void multiply_into(const Jet<O>&, const Jet<O>&, Jet<O>&);
  template <int O>
  friend void divide_into(const Jet<O>&, const Jet<O>&, Jet<O>&);
  template <int O>
  friend void chain_into(const Jet<O>&, double, double, double, Jet<O>&);
  template <int O>
  friend void scale_arguments(Jet<O>&, std::span<const double>);

  double value_ = 0.0;
  std::vector<double> grad_;
  std::vector<double> hess_;
};

using Jet1 = Jet<1>;
using Jet2 = Jet<2>;

// In-place kernels. `out` may alias either operand.
template <int Order>
void add_into(const Jet<Order>& a, const Jet<Order>& b, Jet<Order>& out);
template <int Order>
void subtract_into(const Jet<Order>& a, const Jet<Order>& b, Jet<Order>& out);
template <int Order>
void multiply_into(const Jet<Order>& a, const Jet<Order>& b, Jet<Order>& out);
/// Throws DomainError when b.value() == 0.
template <int Order>
void divide_into(const Jet<Order>& a, const Jet<Order>& b, Jet<Order>& out);
/// out = f(a) given f(a.value) = f0, f'(a.value) = f1, f''(a.value) = f2.
template <int Order>
void chain_into(const Jet<Order>& a, double f0, double f1, double f2, Jet<Order>& out);

/// Chain rule for the linear substitution x_i -> scales[i] * x_i: multiplies
/// each first partial by scales[i] and each second partial by scales[i]*scales[j].
template <int Order>
void scale_arguments(Jet<Order>& jet, std::span<const double> scales);

/// x^k for an integer exponent, by repeated squaring (exact for small k).
double ipow(double x, int k);

template <int Order>
Jet<Order> operator+(Jet<Order> a, const Jet<Order>& b) {
  a += b;
  return a;
}
template <int Order>
Jet<Order> operator-(Jet<Order> a, const Jet<Order>& b) {
  a -= b;
  return a;
}
template <int Order>
Jet<Order> operator*(Jet<Order> a, const Jet<Order>& b) {
  a *= b;
  return a;
}
template <int Order>
Jet<Order> operator/(Jet<Order> a, const Jet<Order>& b) {
  a /= b;
  return a;
}
template <int Order>
Jet<Order> operator+(Jet<Order> a, double c) {
  a += c;
  return a;
}
template <int Order>
Jet<Order> operator+(double c, Jet<Order> a) {
  a += c;
  return a;
}
template <int Order>
Jet<Order> operator-(Jet<Order> a, double c) {
  a -= c;
  return a;
}
template <int Order>
Jet<Order> operator-(double c, Jet<Order> a) {
  a *= -1.0;
  a += c;
  return a;
}
template <int Order>
Jet<Order> operator*(Jet<Order> a, double c) {
  a *= c;
  return a;
}
template <int Order>
Jet<Order> operator*(double c, Jet<Order> a) {
  a *= c;
  return a;
}
template <int Order>
Jet<Order> operator/(Jet<Order> a, double c) {
  a /= c;
  return a;
}
template <int Order>
Jet<Order> operator-(Jet<Order> a) {
  a *= -1.0;
  return a;
}

template <int Order>
Jet<Order> sin(const Jet<Order>& a);
template <int Order>
Jet<Order> cos(const Jet<Order>& a);
template <int Order>
Jet<Order> exp(const Jet<Order>& a);
/// Throws DomainError for a nonpositive argument.
template <int Order>
Jet<Order> log(const Jet<Order>& a);
/// Throws DomainError for a zero base with a negative exponent.
template <int Order>
Jet<Order> pow(const Jet<Order>& a, int exponent);

/// Drops the second-order part.
Jet1 truncate(const Jet2& jet);

}  // namespace ppak
