#include "ppak/almost_kahler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ppak/curvature.hpp"
#include "ppak/error.hpp"
#include "ppak/linalg.hpp"

namespace ppak {

Matrix frame_J(const PpWaveChart& chart) {
  const std::size_t n = chart.dim();
  if (n < 4 || n % 2 != 0) {
    throw InvalidArgument("almost complex structure needs an even dimension >= 4, got " + std::to_string(n));
  }
  Matrix j(n);
  j(n - 1, 0) = 1.0;   // J T = Z
  j(0, n - 1) = -1.0;  // J Z = -T
  for (const auto& [a, b] : chart.pairing()) {
    j(FrameData::x_index(b), FrameData::x_index(a)) = 1.0;
    j(FrameData::x_index(a), FrameData::x_index(b)) = -1.0;
  }
  return j;
}

AlmostComplexStructure build_J(const DualChart& chart, std::span<const double> point) {
  Matrix jf = frame_J(chart.wave());
  const std::size_t n = chart.dim();
  const double h = chart.profile().eval(point);
  // E J_f E^-1 written out: J d_v = H d_v - 2 d_u, J d_u = (H^2 + 1)/2 d_v - H d_u.
  Matrix jc(n);
  jc(0, 0) = h;
  jc(1, 0) = -2.0;
  jc(0, 1) = 0.5 * (h * h + 1.0);
  jc(1, 1) = -h;
  for (const auto& [a, b] : chart.wave().pairing()) {
    jc(b, a) = 1.0;
    jc(a, b) = -1.0;
  }
  return {Vector(point.begin(), point.end()), std::move(jf), std::move(jc)};
}

FundamentalForm build_omega(const DualChart& chart, std::span<const double> point) {
  const AlmostComplexStructure j = build_J(chart, point);
  const Matrix m = chart.metric().components(point) * j.coordinate;
  // g J is antisymmetric up to rounding; keep the exactly antisymmetric part.
  Matrix w(m.dim());
  for (std::size_t a = 0; a < m.dim(); ++a)
    for (std::size_t b = 0; b < m.dim(); ++b) w(a, b) = 0.5 * (m(a, b) - m(b, a));
  return {j.point, std::move(w)};
}

JetMatrix local_frame(const DualChart& chart, std::span<const double> point) {
  const std::size_t n = chart.dim();
  const Jet1 h = chart.profile().eval_jet1(point);
  JetMatrix e(n, n);
  e(0, 0) = (h + 1.0) * 0.5;
  e(1, 0).set_value(-1.0);
  for (std::size_t c = 2; c < n; ++c) e(c, FrameData::x_index(c)).set_value(1.0);
  e(0, n - 1) = (h - 1.0) * 0.5;
  e(1, n - 1).set_value(-1.0);
  return e;
}

JetMatrix local_J(const DualChart& chart, std::span<const double> point) {
  const JetMatrix e = local_frame(chart, point);
  return e * lift(frame_J(chart.wave()), chart.dim()) * inverse(e);
}

namespace {

JetMatrix local_metric(const DualChart& chart, std::span<const double> point) {
  const std::size_t n = chart.dim();
  const MetricJet m = chart.metric().jet(point);
  JetMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = truncate(m(i, j));
  return g;
}

}  // namespace

JetMatrix local_omega(const DualChart& chart, std::span<const double> point) {
  return local_metric(chart, point) * local_J(chart, point);
}

Tensor<3> exterior_derivative_omega(const DualChart& chart, std::span<const double> point) {
  const std::size_t n = chart.dim();
  const JetMatrix w = local_omega(chart, point);
  Tensor<3> d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) d(i, j, k) = w(j, k).d(i) - w(i, k).d(j) + w(i, j).d(k);
  return d;
}

double exterior_derivative_omega_frame(const DualChart& chart, std::span<const double> point,
                                       std::size_t a, std::size_t b, std::size_t c) {
  const JetMatrix e = local_frame(chart, point);
  const JetMatrix w = local_omega(chart, point);
  const LocalField fa = column(e, a), fb = column(e, b), fc = column(e, c);
  const Matrix wv = w.values();
  const double derivs = directional(fa, pairing(fb, w, fc)) - directional(fb, pairing(fa, w, fc)) +
                        directional(fc, pairing(fa, w, fb));
  const Vector ab = lie_bracket(fa, fb), ac = lie_bracket(fa, fc), bc = lie_bracket(fb, fc);
  const double brackets =
      -bilinear(wv, ab, values(fc)) + bilinear(wv, ac, values(fb)) - bilinear(wv, bc, values(fa));
  return derivs + brackets;
}

NijenhuisValue nijenhuis(const DualChart& chart, std::span<const double> point, std::size_t a, std::size_t b,
                         Basis basis) {
  const std::size_t n = chart.dim();
  if (a >= n || b >= n) throw InvalidArgument("basis index out of range");
  const JetMatrix j = local_J(chart, point);
  LocalField fa, fb;
  if (basis == Basis::Frame) {
    const JetMatrix e = local_frame(chart, point);
    fa = column(e, a);
    fb = column(e, b);
  } else {
    const JetMatrix id = lift(identity(n), n);
    fa = column(id, a);
    fb = column(id, b);
  }
  const LocalField ja = j * fa, jb = j * fb;
  const Matrix jv = j.values();
  Vector out = lie_bracket(ja, jb);
  const Vector t1 = jv * lie_bracket(ja, fb);
  const Vector t2 = jv * lie_bracket(fa, jb);
  const Vector t3 = lie_bracket(fa, fb);
  for (std::size_t k = 0; k < n; ++k) out[k] -= t1[k] + t2[k] + t3[k];
  return {Vector(point.begin(), point.end()), basis, a, b, std::move(out)};
}

Vector nijenhuis_closed_form(const DualChart& chart, std::span<const double> point, std::size_t c) {
  const std::size_t n = chart.dim();
  const Jet1 h = chart.profile().eval_jet1(point);
  const AlmostComplexStructure j = build_J(chart, point);
  // T - Z = d_v and J(T - Z) = T + Z.
  Vector tz(n, 0.0);
  tz[0] = 1.0;
  const Vector jtz = j.coordinate * tz;
  for (const auto& [a, b] : chart.wave().pairing()) {
    if (c != a && c != b) continue;
    Vector na(n);
    const double ha = h.d(a), hb = h.d(b);
    for (std::size_t k = 0; k < n; ++k) na[k] = 0.5 * (ha - hb) * tz[k] + 0.5 * (ha + hb) * jtz[k];
    if (c == a) return na;
    // N(T, J X) = -J N(T, X)
    Vector nb = j.coordinate * na;
    for (double& x : nb) x = -x;
    return nb;
  }
  throw InvalidArgument("coordinate " + std::to_string(c) + " is not a paired transverse direction");
}

Tensor<3> frame_brackets(const DualChart& chart, std::span<const double> point) {
  const std::size_t n = chart.dim();
  const JetMatrix e = local_frame(chart, point);
  const Matrix ev = e.values();
  Tensor<3> c(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Vector w = solve(ev, lie_bracket(column(e, a), column(e, b)));
      for (std::size_t k = 0; k < n; ++k) c(k, a, b) = w[k];
    }
  return c;
}

const char* to_string(Verdict v) {
  return v == Verdict::KahlerFlat ? "kahler_flat" : "strictly_almost_kahler";
}

ClassificationReport classify(const DualChart& chart, std::span<const Vector> points) {
  if (points.empty()) throw InvalidArgument("classification needs at least one sample point");
  const std::size_t n = chart.dim();
  ClassificationReport r;
  r.profile = chart.profile().source();
  r.samples = points.size();
  r.scalar_min = std::numeric_limits<double>::infinity();
  r.scalar_max = -std::numeric_limits<double>::infinity();
  const Matrix id = identity(n);
  for (const Vector& p : points) {
    const Jet1 h = chart.profile().eval_jet1(p);
    double grad = 0.0;
    for (std::size_t i = 2; i < n; ++i) grad = std::max(grad, std::abs(h.d(i)));

    const double scal = riemann(chart.metric(), p).scalar;

    const Matrix g = chart.metric().components(p);
    double nij = 0.0;
    for (std::size_t c = 2; c < n; ++c) {
      const Vector v = nijenhuis(chart, p, 0, FrameData::x_index(c)).value;
      nij = std::max(nij, std::sqrt(std::max(0.0, bilinear(g, v, v))));
    }

    const Tensor<3> dw = exterior_derivative_omega(chart, p);
    const AlmostComplexStructure j = build_J(chart, p);
    const Matrix j2 = j.coordinate * j.coordinate + id;
    const Matrix compat = transpose(j.coordinate) * g * j.coordinate - g;

    r.max_grad_h = std::max(r.max_grad_h, grad);
    r.scalar_min = std::min(r.scalar_min, scal);
    r.scalar_max = std::max(r.scalar_max, scal);
    r.max_nijenhuis = std::max(r.max_nijenhuis, nij);
    r.max_domega = std::max(r.max_domega, dw.max_abs());
    r.max_j_square = std::max(r.max_j_square, j2.max_abs());
    r.max_j_compatibility = std::max(r.max_j_compatibility, compat.max_abs());

    const bool grad_zero = grad <= kGradientThreshold;
    const bool nij_zero = nij <= kNijenhuisThreshold;
    const bool scal_zero = std::abs(scal) <= kScalarThreshold;
    if (grad_zero != nij_zero || grad_zero != scal_zero) ++r.inconsistent_samples;
  }
  r.verdict = r.max_grad_h <= kGradientThreshold ? Verdict::KahlerFlat : Verdict::StrictlyAlmostKahler;
  r.consistent = r.inconsistent_samples == 0;
  return r;
}

}  // namespace ppak
