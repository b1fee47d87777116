#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "ppak/expr.hpp"
#include "ppak/random.hpp"
#include "ppak/tensor.hpp"

namespace ppak::test {

/// Random polynomial text in the variables `vars` (coordinate names) with
/// total degree <= max_degree and coefficients uniform in [-2, 2].
inline std::string random_polynomial(Rng& rng, const std::vector<std::string>& vars, int max_degree,
                                     std::size_t terms = 6) {
  std::string s;
  for (std::size_t t = 0; t < terms; ++t) {
    const double coef = rng.uniform(-2.0, 2.0);
    std::string term = std::to_string(std::abs(coef));
    int remaining = int(rng.next() % (max_degree + 1));
    while (remaining > 0) {
      const int k = 1 + int(rng.next() % remaining);
      term += "*" + vars[rng.next() % vars.size()];
      if (k > 1) term += "^" + std::to_string(k);
      remaining -= k;
    }
    s += (t == 0 ? (coef < 0 ? "-" : "") : (coef < 0 ? " - " : " + ")) + term;
  }
  return s;
}

/// Central-difference gradient of a plain evaluator.
template <class F>
Vector fd_gradient(F&& f, std::span<const double> x, double h) {
  Vector g(x.size());
  Vector p(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    p[i] = x[i] + h;
    const double fp = f(p);
    p[i] = x[i] - h;
    const double fm = f(p);
    p[i] = x[i];
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

/// Central-difference Hessian.
template <class F>
Matrix fd_hessian(F&& f, std::span<const double> x, double h) {
  const std::size_t n = x.size();
  Matrix m(n);
  Vector p(x.begin(), x.end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto at = [&](double si, double sj) {
        p = Vector(x.begin(), x.end());
        p[i] += si * h;
        p[j] += sj * h;
        return f(p);
      };
      m(i, j) = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * h * h);
    }
  return m;
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace ppak::test
