#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ppak/error.hpp"
#include "ppak/ode.hpp"

using namespace ppak;
using Catch::Approx;

TEST_CASE("exponential decay") {
  std::vector<double> y{1.0};
  const OdeStats s = integrate_dopri5([](double, std::span<const double> x, std::span<double> d) { d[0] = -x[0]; },
                                      0.0, 5.0, y, {});
  CHECK(y[0] == Approx(std::exp(-5.0)).epsilon(1e-9));
  CHECK(s.accepted > 0);
  CHECK(s.evaluations >= 6 * s.accepted);
}

TEST_CASE("harmonic oscillator over many periods") {
  std::vector<double> y{1.0, 0.0};
  auto rhs = [](double, std::span<const double> x, std::span<double> d) {
    d[0] = x[1];
    d[1] = -x[0];
  };
  const double t = 200.0;
  integrate_dopri5(rhs, 0.0, t, y, {});
  CHECK(y[0] == Approx(std::cos(t)).margin(1e-7));
  CHECK(y[1] == Approx(-std::sin(t)).margin(1e-7));
}

TEST_CASE("time-dependent right-hand side and backward integration") {
  std::vector<double> y{0.0};
  auto rhs = [](double t, std::span<const double>, std::span<double> d) { d[0] = std::cos(t); };
  integrate_dopri5(rhs, 0.0, 3.0, y, {});
  CHECK(y[0] == Approx(std::sin(3.0)).margin(1e-10));
  integrate_dopri5(rhs, 3.0, 0.0, y, {});
  CHECK(std::abs(y[0]) <= 1e-10);
}

TEST_CASE("tighter tolerances give smaller errors") {
  auto run = [](double tol) {
    std::vector<double> y{1.0};
    OdeOptions o;
    o.abs_tol = o.rel_tol = tol;
    integrate_dopri5([](double, std::span<const double> x, std::span<double> d) { d[0] = x[0] * std::cos(x[0]); }, 0.0,
                     4.0, y, o);
    return y[0];
  };
  const double ref = run(1e-13);
  CHECK(std::abs(run(1e-6) - ref) > std::abs(run(1e-10) - ref));
  CHECK(std::abs(run(1e-10) - ref) <= 1e-8);
}

TEST_CASE("observer sees the start and every accepted step") {
  std::vector<double> y{1.0};
  std::vector<double> times;
  const OdeStats s = integrate_dopri5([](double, std::span<const double> x, std::span<double> d) { d[0] = x[0]; }, 0.0,
                                      1.0, y, {}, [&](double t, std::span<const double>) { times.push_back(t); });
  REQUIRE(times.size() == s.accepted + 1);
  CHECK(times.front() == 0.0);
  CHECK(times.back() == 1.0);
  for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] > times[i - 1]);
}

TEST_CASE("maximum step is respected") {
  std::vector<double> y{0.0};
  OdeOptions o;
  o.max_step = 0.01;
  double last = 0.0, widest = 0.0;
  integrate_dopri5([](double, std::span<const double>, std::span<double> d) { d[0] = 1.0; }, 0.0, 1.0, y, o,
                   [&](double t, std::span<const double>) {
                     widest = std::max(widest, t - last);
                     last = t;
                   });
  CHECK(widest <= 0.01 + 1e-15);
  CHECK(y[0] == Approx(1.0));
}

TEST_CASE("blow-up is reported as a step underflow") {
  std::vector<double> y{1.0};
  // y' = y^2 from y(0) = 1 blows up at t = 1
  CHECK_THROWS_AS(
      integrate_dopri5([](double, std::span<const double> x, std::span<double> d) { d[0] = x[0] * x[0]; }, 0.0, 2.0,
                       y, {}),
      IntegrationError);
}

TEST_CASE("step budget") {
  std::vector<double> y{1.0};
  OdeOptions o;
  o.max_steps = 3;
  o.max_step = 0.01;
  CHECK_THROWS_AS(
      integrate_dopri5([](double, std::span<const double> x, std::span<double> d) { d[0] = x[0]; }, 0.0, 1.0, y, o),
      IntegrationError);
}

TEST_CASE("invalid options and rhs errors") {
  std::vector<double> y{1.0};
  auto rhs = [](double, std::span<const double>, std::span<double> d) { d[0] = 0.0; };
  OdeOptions bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(integrate_dopri5(rhs, 0.0, 1.0, y, bad), InvalidArgument);
  CHECK_THROWS_AS(integrate_dopri5(rhs, 0.0, INFINITY, y, {}), InvalidArgument);
  auto throwing = [](double t, std::span<const double>, std::span<double> d) {
    if (t > 0.5) throw DomainError("outside");
    d[0] = 1.0;
  };
  CHECK_THROWS_AS(integrate_dopri5(throwing, 0.0, 1.0, y, {}), DomainError);
  std::vector<double> z{2.0};
  const OdeStats s = integrate_dopri5(rhs, 1.0, 1.0, z, {});
  CHECK(s.accepted == 0);
  CHECK(z[0] == 2.0);
}
