#include <catch_amalgamated.hpp>

#include <thread>

#include "ppak/error.hpp"
#include "ppak/scalar_field.hpp"
#include "support.hpp"

using namespace ppak;
using Catch::Approx;

namespace {
const std::vector<std::string> kCoords{"v", "u", "x3", "x4"};
}

TEST_CASE("quadratic profile jet") {
  const ScalarField h = ScalarField::parse("x3^2 + x4^2", kCoords);
  const std::vector<double> p{0, 0, 1, 2};
  const Jet2 j = h.eval_jet2(p);
  CHECK(j.value() == 5.0);
  CHECK(j.d(0) == 0.0);
  CHECK(j.d(1) == 0.0);
  CHECK(j.d(2) == 2.0);
  CHECK(j.d(3) == 4.0);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) CHECK(j.d2(a, b) == (a == b && a >= 2 ? 2.0 : 0.0));

  // independent oracle: central differences, step 1e-5
  auto f = [&](std::span<const double> x) { return h.eval(x); };
  const Vector g = test::fd_gradient(f, p, 1e-5);
  const Matrix hs = test::fd_hessian(f, p, 1e-5);
  for (std::size_t a = 0; a < 4; ++a) {
    CHECK(std::abs(j.d(a) - g[a]) <= 1e-6);
    for (std::size_t b = 0; b < 4; ++b) CHECK(std::abs(j.d2(a, b) - hs(a, b)) <= 1e-4);
  }
}

TEST_CASE("constant field has zero derivatives everywhere") {
  const ScalarField c = ScalarField::parse("3.25", kCoords);
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> p(4);
    for (double& x : p) x = rng.uniform(-10, 10);
    const Jet2 j = c.eval_jet2(p);
    CHECK(j.value() == 3.25);
    for (double d : j.gradient()) CHECK(d == 0.0);
    for (double d : j.hessian_triangle()) CHECK(d == 0.0);
  }
}

TEST_CASE("mixed partial of u*x3") {
  const ScalarField h = ScalarField::parse("u*x3", kCoords);
  const Jet2 j = h.eval_jet2(std::vector<double>{0, 2, 3, 0});
  CHECK(j.value() == 6.0);
  CHECK(j.d(1) == 3.0);
  CHECK(j.d(2) == 2.0);
  CHECK(j.d2(1, 2) == 1.0);
  CHECK(j.d2(2, 1) == 1.0);
}

TEST_CASE("gradient and hessian dimensions equal the coordinate count") {
  const std::vector<std::string> six{"v", "u", "x3", "x4", "x5", "x6"};
  const ScalarField h = ScalarField::parse("x5*x6", six);
  const Jet2 j = h.eval_jet2(std::vector<double>(6, 1.0));
  CHECK(j.dim() == 6);
  CHECK(j.hessian_triangle().size() == 21);
  CHECK_THROWS_AS(h.eval_jet2(std::vector<double>(4, 1.0)), InvalidArgument);
}

TEST_CASE("evaluation domain errors") {
  const ScalarField h = ScalarField::parse("log(x3) + 1/x4", kCoords);
  CHECK_THROWS_AS(h.eval_jet2(std::vector<double>{0, 0, -1, 1}), DomainError);
  CHECK_THROWS_AS(h.eval_jet1(std::vector<double>{0, 0, 1, 0}), DomainError);
  CHECK_NOTHROW(h.eval_jet2(std::vector<double>{0, 0, 1, 1}));
}

TEST_CASE("random polynomials agree with finite differences") {
  Rng rng(2024);
  const std::vector<std::string> vars{"u", "x3", "x4"};
  int checked = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::string text = test::random_polynomial(rng, vars, 4);
    const ScalarField h = ScalarField::parse(text, kCoords);
    std::vector<double> p(4);
    for (double& x : p) x = rng.uniform(-1.5, 1.5);
    const Jet2 j = h.eval_jet2(p);
    auto f = [&](std::span<const double> x) { return h.eval(x); };
    const Vector g = test::fd_gradient(f, p, 1e-4);
    const Matrix hs = test::fd_hessian(f, p, 1e-4);
    INFO(text);
    for (std::size_t a = 0; a < 4; ++a) {
      CHECK(test::rel_close(j.d(a), g[a], 1e-5));
      for (std::size_t b = 0; b < 4; ++b) CHECK(test::rel_close(j.d2(a, b), hs(a, b), 1e-5));
    }
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("quadratic polynomials have point-independent hessians") {
  Rng rng(77);
  const std::vector<std::string> vars{"u", "x3", "x4"};
  for (int k = 0; k < 100; ++k) {
    const ScalarField h = ScalarField::parse(test::random_polynomial(rng, vars, 2), kCoords);
    std::vector<double> a(4), b(4);
    for (double& x : a) x = rng.uniform(-3, 3);
    for (double& x : b) x = rng.uniform(-3, 3);
    const Jet2 ja = h.eval_jet2(a), jb = h.eval_jet2(b);
    for (std::size_t i = 0; i < ja.hessian_triangle().size(); ++i)
      CHECK(std::abs(ja.hessian_triangle()[i] - jb.hessian_triangle()[i]) <= 1e-12);
  }
}

TEST_CASE("jet1 and jet2 agree on value and gradient") {
  const ScalarField h = ScalarField::parse("sin(u)*cos(x3) + exp(x4/3)*x3^3", kCoords);
  const std::vector<double> p{0.1, -0.4, 0.9, 1.7};
  const Jet1 a = h.eval_jet1(p);
  const Jet2 b = h.eval_jet2(p);
  CHECK(a.value() == b.value());
  for (std::size_t i = 0; i < 4; ++i) CHECK(a.d(i) == Approx(b.d(i)).epsilon(1e-14));
  CHECK(h.eval(p) == Approx(b.value()).epsilon(1e-14));
}

TEST_CASE("concurrent evaluation is consistent") {
  const ScalarField h = ScalarField::parse("sin(u)*x3^2 - x4/(2 + cos(x3))", kCoords);
  const std::vector<double> p{0.0, 0.3, -1.2, 0.8};
  const Jet2 expected = h.eval_jet2(p);
  std::vector<int> ok(4, 0);
  std::vector<std::thread> ts;
  for (int t = 0; t < 4; ++t)
    ts.emplace_back([&, t] {
      bool all = true;
      for (int k = 0; k < 2000; ++k) all = all && h.eval_jet2(p) == expected;
      ok[t] = all;
    });
  for (auto& t : ts) t.join();
  for (int v : ok) CHECK(v == 1);
}

TEST_CASE("source text is preserved") {
  const ScalarField h = ScalarField::parse("x3^2+x4^2", kCoords);
  CHECK(h.source() == "x3^2+x4^2");
  CHECK(h.to_string() == "x3^2 + x4^2");
  CHECK(h.depends_on(2));
  CHECK_FALSE(h.depends_on(0));
}
