#include "ppak/ppwave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ppak/error.hpp"
#include "ppak/random.hpp"

namespace ppak {

const char* to_string(WaveKind kind) { return kind == WaveKind::PpWave ? "ppwave" : "torus"; }

std::vector<std::string> ppwave_coordinates(std::size_t n) {
  std::vector<std::string> c{"v", "u"};
  for (std::size_t i = 3; i <= n; ++i) c.push_back("x" + std::to_string(i));
  return c;
}

std::vector<std::string> torus_coordinates(std::size_t half_dim) {
  std::vector<std::string> c{"phi", "theta"};
  for (std::size_t i = 1; i <= 2 * half_dim; ++i) c.push_back("x" + std::to_string(i));
  return c;
}

PpWaveChart::PpWaveChart(WaveKind kind, ScalarField profile) : kind_(kind), profile_(std::move(profile)) {
  const std::size_t n = profile_.dim();
  if (kind_ == WaveKind::PpWave) {
    if (n < 3) throw InvalidArgument("pp-wave dimension must be at least 3, got " + std::to_string(n));
    if (profile_.coordinates() != ppwave_coordinates(n)) {
      throw InvalidArgument("pp-wave profile must be declared over (v, u, x3, ..., xn)");
    }
    if (profile_.depends_on(0)) throw InvalidArgument("profile H must not depend on v");
  } else {
    if (n < 4 || n % 2 != 0) {
      throw InvalidArgument("torus dimension must be 2n + 2 with n >= 1, got " + std::to_string(n));
    }
    if (profile_.coordinates() != torus_coordinates((n - 2) / 2)) {
      throw InvalidArgument("torus profile must be declared over (phi, theta, x1, ..., x2n)");
    }
    if (profile_.depends_on(0)) throw InvalidArgument("profile H must not depend on phi");
    if (!is_structurally_periodic(profile_.expr())) {
      throw InvalidArgument("torus profile must be built from sin/cos of integer combinations of coordinates");
    }
  }
}

std::vector<std::size_t> PpWaveChart::transverse() const {
  std::vector<std::size_t> t;
  for (std::size_t i = 2; i < dim(); ++i) t.push_back(i);
  return t;
}

std::vector<std::pair<std::size_t, std::size_t>> PpWaveChart::pairing() const {
  std::vector<std::pair<std::size_t, std::size_t>> p;
  const std::size_t m = dim() - 2;
  if (m % 2 != 0) return p;
  if (kind_ == WaveKind::PpWave) {
    for (std::size_t a = 2; a + 1 < dim(); a += 2) p.emplace_back(a, a + 1);
  } else {
    const std::size_t half = m / 2;
    for (std::size_t i = 0; i < half; ++i) p.emplace_back(2 + i, 2 + half + i);
  }
  return p;
}

MetricField PpWaveChart::metric() const {
  const std::size_t n = dim();
  auto eval = [n, h = profile_](std::span<const double> x) {
    MetricJet m(n);
    m(0, 1).set_value(1.0);
    m(1, 1) = h.eval_jet2(x);
    for (std::size_t i = 2; i < n; ++i) m(i, i).set_value(1.0);
    return m;
  };
  return MetricField(Signature::Lorentzian, coordinates(), std::move(eval));
}

PpWaveChart make_ppwave(std::size_t n, const ScalarField& profile) {
  if (n < 3) throw InvalidArgument("pp-wave dimension must be at least 3, got " + std::to_string(n));
  if (profile.dim() != n) throw InvalidArgument("profile is declared over the wrong number of coordinates");
  return PpWaveChart(WaveKind::PpWave, profile);
}

PpWaveChart make_ppwave(std::size_t n, std::string_view profile, const ParameterMap& parameters) {
  if (n < 3) throw InvalidArgument("pp-wave dimension must be at least 3, got " + std::to_string(n));
  return make_ppwave(n, ScalarField::parse(profile, ppwave_coordinates(n), parameters));
}

PpWaveChart make_torus_chart(std::size_t half_dim, const ScalarField& profile) {
  if (half_dim < 1) throw InvalidArgument("torus factor must have positive dimension");
  if (profile.dim() != 2 * half_dim + 2) {
    throw InvalidArgument("profile is declared over the wrong number of coordinates");
  }
  return PpWaveChart(WaveKind::Torus, profile);
}

PpWaveChart make_torus_chart(std::size_t half_dim, std::string_view profile, const ParameterMap& parameters) {
  if (half_dim < 1) throw InvalidArgument("torus factor must have positive dimension");
  return make_torus_chart(half_dim, ScalarField::parse(profile, torus_coordinates(half_dim), parameters));
}

bool is_plane_wave(const PpWaveChart& chart, std::size_t probes, std::uint64_t seed) {
  const std::size_t n = chart.dim();
  Rng rng(seed);
  Vector a(n), b(n);
  for (std::size_t p = 0; p < probes; ++p) {
    for (std::size_t i = 0; i < n; ++i) a[i] = rng.uniform(-2.0, 2.0);
    b = a;
    for (std::size_t i = 2; i < n; ++i) b[i] = rng.uniform(-2.0, 2.0);
    const Jet2 ha = chart.profile().eval_jet2(a);
    const Jet2 hb = chart.profile().eval_jet2(b);
    for (std::size_t i = 2; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const double x = ha.d2(i, j);
        const double y = hb.d2(i, j);
        if (std::abs(x - y) > 1e-8 * std::max({1.0, std::abs(x), std::abs(y)})) return false;
      }
  }
  return true;
}

std::vector<Vector> sample_points(const PpWaveChart& chart, std::size_t count, Rng& rng) {
  std::vector<Vector> pts(count, Vector(chart.dim()));
  const bool torus = chart.kind() == WaveKind::Torus;
  for (Vector& p : pts)
    for (double& x : p) x = torus ? rng.uniform(0.0, 2.0 * std::numbers::pi) : rng.uniform(-2.0, 2.0);
  return pts;
}

Matrix ppwave_ricci_closed_form(const PpWaveChart& chart, std::span<const double> point) {
  const Jet2 h = chart.profile().eval_jet2(point);
  Matrix ric(chart.dim());
  double lap = 0.0;
  for (std::size_t i = 2; i < chart.dim(); ++i) lap += h.d2(i, i);
  ric(1, 1) = -0.5 * lap;
  return ric;
}

DualChart::DualChart(PpWaveChart wave)
    : wave_(std::move(wave)),
      metric_(Signature::Riemannian, wave_.coordinates(), [n = wave_.dim(), h = wave_.profile()](std::span<const double> x) {
        MetricJet m(n);
        const Jet2 hj = h.eval_jet2(x);
        m(0, 0).set_value(2.0);
        m(0, 1) = hj;
        Jet2 uu = hj * hj;
        uu += 1.0;
        uu *= 0.5;
        m(1, 1) = std::move(uu);
        for (std::size_t i = 2; i < n; ++i) m(i, i).set_value(1.0);
        return m;
      }) {}

DualChart make_dual(const PpWaveChart& chart) { return DualChart(chart); }

Matrix dual_components(double h, std::size_t dim) {
  Matrix g(dim);
  g(0, 0) = 2.0;
  g(0, 1) = g(1, 0) = h;
  g(1, 1) = 0.5 * (1.0 + h * h);
  for (std::size_t i = 2; i < dim; ++i) g(i, i) = 1.0;
  return g;
}

Matrix frame_matrix(double h, std::size_t dim) {
  Matrix e(dim);
  e(0, 0) = 0.5 * (h + 1.0);
  e(1, 0) = -1.0;
  for (std::size_t c = 2; c < dim; ++c) e(c, FrameData::x_index(c)) = 1.0;
  e(0, dim - 1) = 0.5 * (h - 1.0);
  e(1, dim - 1) = -1.0;
  return e;
}

FrameData make_frame(const DualChart& chart, std::span<const double> point) {
  Jet2 h = chart.profile().eval_jet2(point);
  Matrix e = frame_matrix(h.value(), chart.dim());
  return {Vector(point.begin(), point.end()), std::move(e), std::move(h)};
}

Tensor<3> dual_christoffel_closed_form(const DualChart& chart, std::span<const double> point) {
  const std::size_t n = chart.dim();
  const Jet2 hj = chart.profile().eval_jet2(point);
  const double h = hj.value();
  Tensor<3> g(n);
  auto set = [&g](std::size_t k, std::size_t i, std::size_t j, double value) {
    g(k, i, j) = value;
    g(k, j, i) = value;
  };
  constexpr std::size_t v = 0, u = 1;
  set(v, u, u, 0.5 * hj.d(u));
  for (std::size_t i = 2; i < n; ++i) {
    const double hi = hj.d(i);
    set(u, v, i, hi);
    set(i, v, u, -0.5 * hi);
    set(v, v, i, -0.5 * h * hi);
    set(i, u, u, -0.5 * h * hi);
    set(u, u, i, 0.5 * h * hi);
    set(v, u, i, -0.25 * (h * h - 1.0) * hi);
  }
  return g;
}

Matrix dual_ricci_closed_form(const DualChart& chart, std::span<const double> point) {
  const std::size_t n = chart.dim();
  const Jet2 h = chart.profile().eval_jet2(point);
  const std::size_t t = 0, z = n - 1;
  Matrix r(n);
  double lap = 0.0, grad2 = 0.0;
  for (std::size_t i = 2; i < n; ++i) {
    lap += h.d2(i, i);
    grad2 += h.d(i) * h.d(i);
  }
  r(t, t) = 0.5 * lap;
  r(z, z) = -0.5 * lap;
  r(t, z) = r(z, t) = -0.5 * grad2;
  for (std::size_t i = 2; i < n; ++i) {
    const std::size_t a = FrameData::x_index(i);
    r(t, a) = r(a, t) = 0.5 * h.d2(1, i);
    r(a, z) = r(z, a) = -0.5 * h.d2(i, 1);
    for (std::size_t j = 2; j < n; ++j) r(a, FrameData::x_index(j)) = -0.5 * h.d(i) * h.d(j);
  }
  return r;
}

double dual_scalar_closed_form(const DualChart& chart, std::span<const double> point) {
  const Jet1 h = chart.profile().eval_jet1(point);
  double s = 0.0;
  for (std::size_t i = 2; i < chart.dim(); ++i) s += h.d(i) * h.d(i);
  return -0.5 * s;
}

}  // namespace ppak
