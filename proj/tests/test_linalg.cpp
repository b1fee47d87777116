#include <catch_amalgamated.hpp>

#include "ppak/error.hpp"
#include "ppak/linalg.hpp"
#include "ppak/random.hpp"

using namespace ppak;
using Catch::Approx;

namespace {
Matrix random_matrix(Rng& rng, std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-1, 1);
  return m;
}
}  // namespace

TEST_CASE("inverse times matrix is the identity") {
  Rng rng(5);
  for (std::size_t n = 1; n <= 10; ++n) {
    const Matrix a = random_matrix(rng, n);
    CHECK(max_abs_diff(a * inverse(a), identity(n)) <= 1e-10);
  }
}

TEST_CASE("solve agrees with multiplication") {
  Rng rng(6);
  const Matrix a = random_matrix(rng, 6);
  const Vector x{1, -2, 3, 0.5, 0, 7};
  const Vector b = a * x;
  const Vector y = solve(a, b);
  for (std::size_t i = 0; i < 6; ++i) CHECK(y[i] == Approx(x[i]).margin(1e-10));
}

TEST_CASE("singular matrices are rejected") {
  Matrix a(3);
  a(0, 0) = 1;
  a(1, 1) = 1;
  CHECK_THROWS_AS(inverse(a), SingularMatrixError);
  CHECK(determinant(a) == 0.0);
  Matrix b(2);
  b(0, 0) = 1, b(0, 1) = 2, b(1, 0) = 2, b(1, 1) = 4;
  CHECK_THROWS_AS(inverse(b), SingularMatrixError);
}

TEST_CASE("determinant") {
  Matrix a(3);
  a(0, 0) = 2, a(0, 1) = 1, a(1, 0) = 1, a(1, 1) = 3, a(2, 2) = -1, a(0, 2) = 4;
  CHECK(determinant(a) == Approx(-5.0));
  Matrix p(2);
  p(0, 1) = 1, p(1, 0) = 1;
  CHECK(determinant(p) == Approx(-1.0));
}

TEST_CASE("symmetric eigenvalues") {
  Matrix a(2);
  a(0, 0) = 2, a(0, 1) = 1, a(1, 0) = 1, a(1, 1) = 2;
  const Vector e = symmetric_eigenvalues(a);
  CHECK(e[0] == Approx(1.0));
  CHECK(e[1] == Approx(3.0));

  Rng rng(8);
  for (int k = 0; k < 20; ++k) {
    Matrix m = random_matrix(rng, 5);
    const Matrix s = m + transpose(m);
    const Vector ev = symmetric_eigenvalues(s);
    double trace = 0, sum = 0;
    for (std::size_t i = 0; i < 5; ++i) trace += s(i, i), sum += ev[i];
    CHECK(sum == Approx(trace).margin(1e-10));
    double prod = 1;
    for (double x : ev) prod *= x;
    CHECK(prod == Approx(determinant(s)).margin(1e-9));
  }
}

TEST_CASE("cholesky reconstructs positive definite matrices") {
  Rng rng(9);
  const Matrix m = random_matrix(rng, 4);
  Matrix a = transpose(m) * m;
  for (std::size_t i = 0; i < 4; ++i) a(i, i) += 0.5;
  const Matrix l = cholesky(a);
  CHECK(max_abs_diff(l * transpose(l), a) <= 1e-12);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) CHECK(l(i, j) == 0.0);
  Matrix indefinite = identity(2);
  indefinite(1, 1) = -1;
  CHECK_THROWS_AS(cholesky(indefinite), InvalidArgument);
}

TEST_CASE("bilinear form and norms") {
  const Matrix g = identity(3);
  const Vector a{1, 2, 2};
  CHECK(norm(a) == 3.0);
  CHECK(bilinear(g, a, a) == 9.0);
  CHECK(column(g, 1) == Vector{0, 1, 0});
}

TEST_CASE("random streams are reproducible and independent") {
  Rng a(11), b(11);
  for (int k = 0; k < 100; ++k) CHECK(a.next() == b.next());
  Rng s0 = Rng::stream(11, 0), s1 = Rng::stream(11, 1);
  CHECK(s0.next() != s1.next());
  Rng u(3);
  double mean = 0, var = 0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    const double x = u.normal();
    mean += x;
    var += x * x;
  }
  CHECK(std::abs(mean / n) < 0.05);
  CHECK(std::abs(var / n - 1.0) < 0.05);
  for (int k = 0; k < 1000; ++k) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}
