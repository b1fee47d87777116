#include <catch_amalgamated.hpp>

#include "ppak/curvature.hpp"
#include "ppak/error.hpp"
#include "ppak/linalg.hpp"
#include "ppak/ppwave.hpp"
#include "support.hpp"

using namespace ppak;
using Catch::Approx;

namespace {

std::vector<std::string> transverse_vars(std::size_t n) {
  std::vector<std::string> v{"u"};
  for (std::size_t i = 3; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

Vector random_point(Rng& rng, std::size_t n, double r = 1.5) {
  Vector p(n);
  for (double& x : p) x = rng.uniform(-r, r);
  return p;
}

// Rm(a, b, c, d) on frame columns.
double frame_rm(const Tensor<4>& rm, const Matrix& e, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  const std::size_t n = e.dim();
  double s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) s += rm(i, j, k, l) * e(i, a) * e(j, b) * e(k, c) * e(l, d);
  return s;
}

}  // namespace

TEST_CASE("euclidean metric has vanishing christoffels") {
  const MetricField g = MetricField::constant(Signature::Riemannian, {"a", "b", "c"}, identity(3));
  const Vector p{0.3, -1, 2};
  CHECK(christoffel(g, p).gamma.max_abs() == 0.0);
  const CurvatureData c = riemann(g, p);
  CHECK(c.riemann.max_abs() == 0.0);
  CHECK(c.ricci.max_abs() == 0.0);
  CHECK(c.scalar == 0.0);
}

TEST_CASE("constant non-diagonal metric is flat") {
  Matrix m = identity(4);
  m(0, 1) = m(1, 0) = 1;
  m(0, 0) = 0;
  m(1, 1) = 0.3;
  const MetricField g = MetricField::constant(Signature::Lorentzian, ppwave_coordinates(4), m);
  CHECK(riemann(g, Vector{1, 2, 3, 4}).riemann.max_abs() == 0.0);
}

TEST_CASE("dual christoffels for H = x3") {
  const DualChart d = make_dual(make_ppwave(4, "x3"));
  Rng rng(1);
  for (int k = 0; k < 10; ++k) {
    const Vector p = random_point(rng, 4);
    const double h = p[2];
    const Tensor<3> gamma = christoffel(d.metric(), p).gamma;
    Tensor<3> expected(4);
    auto set = [&](std::size_t a, std::size_t i, std::size_t j, double x) { expected(a, i, j) = expected(a, j, i) = x; };
    const std::size_t v = 0, u = 1, x3 = 2;
    set(u, v, x3, 1.0);
    set(v, v, x3, -0.5 * h);
    set(x3, v, u, -0.5);
    set(x3, u, u, -0.5 * h);
    set(u, u, x3, 0.5 * h);
    set(v, u, x3, -0.25 * (h * h - 1));
    CHECK(max_abs_diff(gamma, expected) <= 1e-12);
  }
}

TEST_CASE("pp-wave with constant profile has zero christoffels") {
  const PpWaveChart w = make_ppwave(5, "2.5");
  CHECK(christoffel(w.metric(), Vector{1, 2, 3, 4, 5}).gamma.max_abs() == 0.0);
}

TEST_CASE("christoffels are symmetric in the lower pair") {
  const DualChart d = make_dual(make_ppwave(4, "sin(u)*x3^2 - x4*u"));
  const Tensor<3> g = christoffel(d.metric(), Vector{0.1, 0.2, 0.3, 0.4}).gamma;
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(g(k, i, j) == g(k, j, i));
}

TEST_CASE("singular metric is rejected") {
  Matrix m(2);
  m(0, 0) = 1;
  const MetricField g = MetricField::constant(Signature::Riemannian, {"a", "b"}, m);
  CHECK_THROWS_AS(christoffel(g, Vector{0, 0}), SingularMatrixError);
  CHECK_THROWS_AS(riemann(g, Vector{0, 0}), SingularMatrixError);
}

TEST_CASE("round sphere has positive scalar curvature") {
  const std::vector<std::string> coords{"th", "ph"};
  std::vector<ScalarField> upper{ScalarField::parse("1", coords), ScalarField::parse("0", coords),
                                 ScalarField::parse("sin(th)^2", coords)};
  const MetricField g = MetricField::from_components(Signature::Riemannian, coords, std::move(upper));
  const CurvatureData c = riemann(g, Vector{0.8, 0.1});
  CHECK(c.scalar == Approx(2.0));
  // sec(d_th, d_ph) = Rm(th, ph, ph, th) / |d_th ^ d_ph|^2 = 1
  CHECK(c.riemann(0, 1, 1, 0) / std::pow(std::sin(0.8), 2) == Approx(1.0));
}

TEST_CASE("sectional curvatures of the dual in the orthonormal frame") {
  {
    const DualChart d = make_dual(make_ppwave(4, "x3"));
    const Vector p{0.2, -0.4, 0.7, 0.1};
    const FrameData f = make_frame(d, p);
    const CurvatureData c = riemann(d.metric(), p);
    CHECK(frame_rm(c.riemann, f.frame, f.z_index(), f.t_index(), f.t_index(), f.z_index()) == Approx(0.25));
  }
  {
    const DualChart d = make_dual(make_ppwave(4, "x3^2 + x4^2"));
    const Vector p{0, 0, 1, 0};
    const FrameData f = make_frame(d, p);
    const CurvatureData c = riemann(d.metric(), p);
    const std::size_t x3 = FrameData::x_index(2);
    CHECK(std::abs(frame_rm(c.riemann, f.frame, f.t_index(), x3, x3, f.t_index())) <= 1e-12);
    // away from x3 = 1 the same entry is H_33/2 - H_3^2/4 = 1 - x3^2
    const Vector q{0, 0, 0.5, 0.3};
    const FrameData fq = make_frame(d, q);
    CHECK(frame_rm(riemann(d.metric(), q).riemann, fq.frame, 0, x3, x3, 0) == Approx(0.75));
  }
}

TEST_CASE("pp-wave ricci for a quadratic profile") {
  const PpWaveChart w = make_ppwave(4, "x3^2 + x4^2");
  const RicciScalar r = ricci_scalar(w.metric(), Vector{0.5, 1.5, -0.3, 2});
  Matrix expected(4);
  expected(1, 1) = -2;
  CHECK(max_abs_diff(r.ricci, expected) <= 1e-12);
  CHECK(std::abs(r.scalar) <= 1e-12);
}

TEST_CASE("dual scalar curvature for H = x3") {
  const DualChart d = make_dual(make_ppwave(4, "x3"));
  CHECK(ricci_scalar(d.metric(), Vector{3, -1, 2, 0.5}).scalar == Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("flat euclidean ricci and scalar") {
  const MetricField g = MetricField::constant(Signature::Riemannian, {"a", "b", "c", "d"}, identity(4));
  const RicciScalar r = ricci_scalar(g, Vector{1, 1, 1, 1});
  CHECK(r.ricci.max_abs() == 0.0);
  CHECK(r.scalar == 0.0);
}

TEST_CASE("change to an identity frame leaves tensors unchanged") {
  const DualChart d = make_dual(make_ppwave(4, "u*x3^2"));
  const Vector p{0.1, 0.7, -0.2, 0.4};
  const CurvatureData c = riemann(d.metric(), p);
  CHECK(change_to_frame(c.riemann, identity(4)) == c.riemann);
  CHECK(change_to_frame(c.ricci, identity(4)) == c.ricci);
}

TEST_CASE("frame ricci of x3^2 + x4^2 at (0, 0, 1, 0)") {
  const DualChart d = make_dual(make_ppwave(4, "x3^2 + x4^2"));
  const Vector p{0, 0, 1, 0};
  const FrameData f = make_frame(d, p);
  const Matrix ric = change_to_frame(ricci_scalar(d.metric(), p).ricci, f.frame);
  Matrix expected(4);
  expected(0, 0) = 2;
  expected(1, 1) = -2;
  expected(2, 2) = 0;
  expected(3, 3) = -2;
  expected(0, 3) = expected(3, 0) = -2;
  CHECK(max_abs_diff(ric, expected) <= 1e-12);
  CHECK(max_abs_diff(dual_ricci_closed_form(d, p), expected) <= 1e-12);
}

TEST_CASE("metric in its own orthonormal frame is the identity") {
  const DualChart d = make_dual(make_ppwave(6, "sin(u)*x3 + x5^2*x6"));
  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    const Vector p = random_point(rng, 6);
    CHECK(max_abs_diff(change_to_frame(d.metric().components(p), make_frame(d, p).frame), identity(6)) <= 1e-12);
  }
}

TEST_CASE("degenerate frames are rejected") {
  Matrix e = identity(3);
  e(0, 1) = 1;
  e(1, 1) = 0;
  CHECK_THROWS_AS(change_to_frame(identity(3), e), InvalidArgument);
}

TEST_CASE("vector components in a frame") {
  const DualChart d = make_dual(make_ppwave(4, "x3*u"));
  const Vector p{0, 1, 2, 0};
  const FrameData f = make_frame(d, p);
  const Vector x{0.5, -1, 2, 3};
  const Vector w = vector_to_frame(x, f.frame);
  const Vector back = f.frame * w;
  for (std::size_t i = 0; i < 4; ++i) CHECK(back[i] == Approx(x[i]));
}

TEST_CASE("generic frame ricci matches the closed form on random polynomials") {
  Rng rng(100);
  for (std::size_t dim : {4u, 6u, 8u}) {
    for (int k = 0; k < 25; ++k) {
      const std::string text = test::random_polynomial(rng, transverse_vars(dim), 3);
      const DualChart d = make_dual(make_ppwave(dim, text));
      const Vector p = random_point(rng, dim);
      const Matrix generic = change_to_frame(ricci_scalar(d.metric(), p).ricci, make_frame(d, p).frame);
      const Matrix closed = dual_ricci_closed_form(d, p);
      INFO(text);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) CHECK(test::rel_close(generic(i, j), closed(i, j), 1e-7));
    }
  }
}

TEST_CASE("riemann symmetries and first bianchi identity") {
  Rng rng(101);
  for (int k = 0; k < 20; ++k) {
    const std::size_t dim = 4 + 2 * (k % 2);
    const DualChart d = make_dual(make_ppwave(dim, test::random_polynomial(rng, transverse_vars(dim), 3)));
    const Vector p = random_point(rng, dim);
    const MetricField h = d.wave().metric();
    for (const MetricField* g : {&d.metric(), &h}) {
      const Tensor<4> r = riemann(*g, p).riemann;
      const double scale = std::max(1.0, r.max_abs());
      double worst = 0;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b) {
              worst = std::max(worst, std::abs(r(i, j, a, b) + r(j, i, a, b)));
              worst = std::max(worst, std::abs(r(i, j, a, b) + r(i, j, b, a)));
              worst = std::max(worst, std::abs(r(i, j, a, b) - r(a, b, i, j)));
              worst = std::max(worst, std::abs(r(i, j, a, b) + r(j, a, i, b) + r(a, i, j, b)));
            }
      CHECK(worst <= 1e-9 * scale);
    }
  }
}

TEST_CASE("dual scalar curvature law") {
  Rng rng(102);
  for (int k = 0; k < 40; ++k) {
    const std::size_t dim = 4 + 2 * (k % 3);
    const DualChart d = make_dual(make_ppwave(dim, test::random_polynomial(rng, transverse_vars(dim), 3)));
    const Vector p = random_point(rng, dim);
    const Jet2 h = d.profile().eval_jet2(p);
    double sum = 0;
    for (std::size_t i = 2; i < dim; ++i) sum += h.d(i) * h.d(i);
    const double scal = ricci_scalar(d.metric(), p).scalar;
    CHECK(test::rel_close(scal, -0.5 * sum, 1e-9));
    CHECK(scal <= 1e-12);
    CHECK(dual_scalar_closed_form(d, p) == Approx(-0.5 * sum));
  }
}

TEST_CASE("scalar-flat profiles are flat") {
  for (const char* text : {"sin(u) + 3", "0", "u^3 - cos(u)"}) {
    const DualChart d = make_dual(make_ppwave(4, text));
    Rng rng(103);
    for (int k = 0; k < 20; ++k) {
      const Vector p = random_point(rng, 4);
      const CurvatureData cd = riemann(d.metric(), p);
      REQUIRE(std::abs(cd.scalar) <= 1e-9);
      CHECK(cd.riemann.max_abs() <= 1e-9);
    }
  }
}

TEST_CASE("pointwise scalar zero does not force a flat point") {
  // H_3 vanishes on x3 = 1 while H_33 = 2, so Rm(T, X3, X3, T) = 1 there.
  const DualChart q = make_dual(make_ppwave(4, "(x3 - 1)^2 + u"));
  const Vector p{0, 0.3, 1, 0};
  const CurvatureData c = riemann(q.metric(), p);
  CHECK(std::abs(c.scalar) <= 1e-12);
  const FrameData f = make_frame(q, p);
  const std::size_t x3 = FrameData::x_index(2);
  CHECK(frame_rm(c.riemann, f.frame, 0, x3, x3, 0) == Approx(1.0));
}
