#include "ppak/jet.hpp"

#include <cmath>
#include <string>

#include "ppak/error.hpp"

namespace ppak {

namespace {

std::size_t triangle_size(std::size_t n) { return n * (n + 1) / 2; }

}  // namespace

double ipow(double x, int k) {
  if (k < 0) return 1.0 / ipow(x, -k);
  double result = 1.0;
  double base = x;
  unsigned e = static_cast<unsigned>(k);
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e != 0) base *= base;
  }
  return result;
}

template <int Order>
Jet<Order>::Jet(std::size_t dim, double value) : value_(value), grad_(dim, 0.0) {
  if constexpr (Order >= 2) hess_.assign(triangle_size(dim), 0.0);
}

template <int Order>
Jet<Order> Jet<Order>::variable(std::size_t dim, std::size_t index, double value) {
  Jet jet(dim, value);
  jet.grad_.at(index) = 1.0;
  return jet;
}

template <int Order>
void Jet<Order>::reset(std::size_t dim, double value) {
  value_ = value;
  grad_.assign(dim, 0.0);
  if constexpr (Order >= 2) hess_.assign(triangle_size(dim), 0.0);
}

template <int Order>
void add_into(const Jet<Order>& a, const Jet<Order>& b, Jet<Order>& out) {
  const std::size_t n = a.grad_.size();
  out.grad_.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.grad_[i] = a.grad_[i] + b.grad_[i];
  if constexpr (Order >= 2) {
    out.hess_.resize(a.hess_.size());
    for (std::size_t k = 0; k < a.hess_.size(); ++k) out.hess_[k] = a.hess_[k] + b.hess_[k];
  }
  out.value_ = a.value_ + b.value_;
}

template <int Order>
void subtract_into(const Jet<Order>& a, const Jet<Order>& b, Jet<Order>& out) {
  const std::size_t n = a.grad_.size();
  out.grad_.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.grad_[i] = a.grad_[i] - b.grad_[i];
  if constexpr (Order >= 2) {
    out.hess_.resize(a.hess_.size());
    for (std::size_t k = 0; k < a.hess_.size(); ++k) out.hess_[k] = a.hess_[k] - b.hess_[k];
  }
  out.value_ = a.value_ - b.value_;
}

template <int Order>
void multiply_into(const Jet<Order>& a, const Jet<Order>& b, Jet<Order>& out) {
  const std::size_t n = a.grad_.size();
  const double av = a.value_;
  const double bv = b.value_;
  // Second order first: it reads the operands' gradients, which the
  // first-order update below may overwrite when `out` aliases an operand.
  if constexpr (Order >= 2) {
    out.hess_.resize(a.hess_.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j, ++k) {
        out.hess_[k] = av * b.hess_[k] + bv * a.hess_[k] + a.grad_[i] * b.grad_[j] +
                       a.grad_[j] * b.grad_[i];
      }
    }
  }
  out.grad_.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.grad_[i] = av * b.grad_[i] + bv * a.grad_[i];
  out.value_ = av * bv;
}

template <int Order>
void divide_into(const Jet<Order>& a, const Jet<Order>& b, Jet<Order>& out) {
  const double bv = b.value_;
  if (bv == 0.0) throw DomainError("division by zero");
  const std::size_t n = a.grad_.size();
  const double q = a.value_ / bv;
  thread_local std::vector<double> dq;
  dq.resize(n);
  for (std::size_t i = 0; i < n; ++i) dq[i] = (a.grad_[i] - q * b.grad_[i]) / bv;
  // From a = q b:  H_a = q H_b + b H_q + dq db^T + db dq^T.
  if constexpr (Order >= 2) {
    out.hess_.resize(a.hess_.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j, ++k) {
        out.hess_[k] =
            (a.hess_[k] - q * b.hess_[k] - dq[i] * b.grad_[j] - dq[j] * b.grad_[i]) / bv;
      }
    }
  }
  out.grad_.assign(dq.begin(), dq.end());
  out.value_ = q;
}

template <int Order>
void chain_into(const Jet<Order>& a, double f0, double f1, double f2, Jet<Order>& out) {
  const std::size_t n = a.grad_.size();
  if constexpr (Order >= 2) {
    out.hess_.resize(a.hess_.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j, ++k) {
        out.hess_[k] = f1 * a.hess_[k] + f2 * a.grad_[i] * a.grad_[j];
      }
    }
  }
  out.grad_.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.grad_[i] = f1 * a.grad_[i];
  out.value_ = f0;
}

template <int Order>
void scale_arguments(Jet<Order>& jet, std::span<const double> scales) {
  const std::size_t n = jet.grad_.size();
  for (std::size_t i = 0; i < n; ++i) jet.grad_[i] *= scales[i];
  if constexpr (Order >= 2) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j, ++k) jet.hess_[k] *= scales[i] * scales[j];
    }
  }
}

template <int Order>
Jet<Order>& Jet<Order>::operator+=(const Jet& rhs) {
  add_into(*this, rhs, *this);
  return *this;
}
template <int Order>
Jet<Order>& Jet<Order>::operator-=(const Jet& rhs) {
  subtract_into(*this, rhs, *this);
  return *this;
}
template <int Order>
Jet<Order>& Jet<Order>::operator*=(const Jet& rhs) {
  multiply_into(*this, rhs, *this);
  return *this;
}
template <int Order>
Jet<Order>& Jet<Order>::operator/=(const Jet& rhs) {
  divide_into(*this, rhs, *this);
  return *this;
}
template <int Order>
Jet<Order>& Jet<Order>::operator+=(double c) {
  value_ += c;
  return *this;
}
template <int Order>
Jet<Order>& Jet<Order>::operator-=(double c) {
  value_ -= c;
  return *this;
}
template <int Order>
Jet<Order>& Jet<Order>::operator*=(double c) {
  value_ *= c;
  for (double& g : grad_) g *= c;
  for (double& h : hess_) h *= c;
  return *this;
}
template <int Order>
Jet<Order>& Jet<Order>::operator/=(double c) {
  if (c == 0.0) throw DomainError("division by zero");
  value_ /= c;
  for (double& g : grad_) g /= c;
  for (double& h : hess_) h /= c;
  return *this;
}

template <int Order>
Jet<Order> sin(const Jet<Order>& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  Jet<Order> out;
  chain_into(a, s, c, -s, out);
  return out;
}

template <int Order>
Jet<Order> cos(const Jet<Order>& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  Jet<Order> out;
  chain_into(a, c, -s, -c, out);
  return out;
}

template <int Order>
Jet<Order> exp(const Jet<Order>& a) {
  const double e = std::exp(a.value());
  Jet<Order> out;
  chain_into(a, e, e, e, out);
  return out;
}

template <int Order>
Jet<Order> log(const Jet<Order>& a) {
  const double x = a.value();
  if (!(x > 0.0)) throw DomainError("log of nonpositive value " + std::to_string(x));
  Jet<Order> out;
  chain_into(a, std::log(x), 1.0 / x, -1.0 / (x * x), out);
  return out;
}

template <int Order>
Jet<Order> pow(const Jet<Order>& a, int exponent) {
  const double x = a.value();
  if (exponent < 0 && x == 0.0) throw DomainError("zero raised to a negative power");
  const double k = exponent;
  const double f0 = ipow(x, exponent);
  const double f1 = exponent == 0 ? 0.0 : k * ipow(x, exponent - 1);
  const double f2 = (exponent == 0 || exponent == 1) ? 0.0 : k * (k - 1.0) * ipow(x, exponent - 2);
  Jet<Order> out;
  chain_into(a, f0, f1, f2, out);
  return out;
}

Jet1 truncate(const Jet2& jet) {
  Jet1 out(jet.dim(), jet.value());
  for (std::size_t i = 0; i < jet.dim(); ++i) out.d(i) = jet.d(i);
  return out;
}

#define PPAK_INSTANTIATE_JET(O)                                                   \
  template class Jet<O>;                                                          \
  template void add_into<O>(const Jet<O>&, const Jet<O>&, Jet<O>&);               \
  template void subtract_into<O>(const Jet<O>&, const Jet<O>&, Jet<O>&);          \
  template void multiply_into<O>(const Jet<O>&, const Jet<O>&, Jet<O>&);          \
  template void divide_into<O>(const Jet<O>&, const Jet<O>&, Jet<O>&);            \
  template void chain_into<O>(const Jet<O>&, double, double, double, Jet<O>&);    \
  template void scale_arguments<O>(Jet<O>&, std::span<const double>);             \
  template Jet<O> sin<O>(const Jet<O>&);                                          \
  template Jet<O> cos<O>(const Jet<O>&);                                          \
  template Jet<O> exp<O>(const Jet<O>&);                                          \
  template Jet<O> log<O>(const Jet<O>&);                                          \
  template Jet<O> pow<O>(const Jet<O>&, int);

PPAK_INSTANTIATE_JET(1)
PPAK_INSTANTIATE_JET(2)

#undef PPAK_INSTANTIATE_JET

}  // namespace ppak
