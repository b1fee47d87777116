#include "ppak/penrose.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "ppak/curvature.hpp"
#include "ppak/error.hpp"
#include "ppak/linalg.hpp"
#include "ppak/ppwave.hpp"

namespace ppak {

std::vector<std::string> lightlike_coordinates(std::size_t n) {
  std::vector<std::string> c;
  for (std::size_t i = 0; i <= n; ++i) c.push_back("x" + std::to_string(i));
  return c;
}

namespace {

std::size_t parse_index(std::string_view text, std::string_view key) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("malformed component key '" + std::string(key) + "'");
  }
  return v;
}

}  // namespace

std::pair<std::size_t, std::size_t> parse_component_key(std::string_view key) {
  if (key.size() < 3 || key[0] != 'h') throw InvalidArgument("malformed component key '" + std::string(key) + "'");
  std::size_t i = 0, j = 0;
  if (key[1] == '_') {
    const std::string_view rest = key.substr(2);
    const std::size_t sep = rest.find('_');
    if (sep == std::string_view::npos) throw InvalidArgument("malformed component key '" + std::string(key) + "'");
    i = parse_index(rest.substr(0, sep), key);
    j = parse_index(rest.substr(sep + 1), key);
  } else {
    if (key.size() != 3) throw InvalidArgument("malformed component key '" + std::string(key) + "'");
    i = parse_index(key.substr(1, 1), key);
    j = parse_index(key.substr(2, 1), key);
  }
  return {std::min(i, j), std::max(i, j)};
}

std::string component_key(std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  if (j < 10) return "h" + std::to_string(i) + std::to_string(j);
  return "h_" + std::to_string(i) + "_" + std::to_string(j);
}

std::size_t LightlikeChart::slot(std::size_t i, std::size_t j) const {
  const std::size_t n = dim();
  if (i >= n || j >= n) throw InvalidArgument("component index out of range");
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

LightlikeChart LightlikeChart::make(std::size_t n, const ComponentTable& components,
                                    std::pair<double, double> x0_range, const ParameterMap& parameters) {
  if (n < 2) throw InvalidArgument("lightlike chart needs n >= 2 (at least one front coordinate)");
  if (!(x0_range.first < x0_range.second) || !std::isfinite(x0_range.first) || !std::isfinite(x0_range.second)) {
    throw InvalidArgument("x0_range must be a finite interval with lo < hi");
  }
  LightlikeChart c;
  c.coordinates_ = lightlike_coordinates(n);
  c.x0_range_ = x0_range;
  const std::size_t dim = n + 1;
  std::vector<std::optional<ScalarField>> given(dim * (dim + 1) / 2);
  for (const auto& [key, text] : components) {
    const auto [i, j] = parse_component_key(key);
    if (j >= dim) throw InvalidArgument("component " + key + " is outside dimension " + std::to_string(dim));
    if (i == 0) throw InvalidArgument("component " + key + " is fixed by the lightlike form and cannot be set");
    auto& dst = given[c.slot(i, j)];
    if (dst) throw InvalidArgument("component " + key + " given twice");
    dst = ScalarField::parse(text, c.coordinates_, parameters);
  }
  c.upper_.reserve(given.size());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      auto& g = given[c.slot(i, j)];
      if (g) {
        c.upper_.push_back(std::move(*g));
      } else {
        const double fixed = (i == 0 && j == 1) || (i >= 2 && i == j) ? 1.0 : 0.0;
        c.upper_.push_back(ScalarField::constant(fixed, c.coordinates_));
      }
    }

  const MetricField h = c.metric();
  Rng rng(0x5eed);
  for (const Vector& p : sample_points(c, 16, rng)) {
    if (!h.signature_holds(p)) {
      std::string where;
      for (double x : p) where += (where.empty() ? "" : ", ") + std::to_string(x);
      throw InvalidArgument("metric is not Lorentzian at probe point (" + where + ")");
    }
  }
  return c;
}

const ScalarField& LightlikeChart::component(std::size_t i, std::size_t j) const { return upper_[slot(i, j)]; }

MetricField LightlikeChart::metric() const {
  return MetricField::from_components(Signature::Lorentzian, coordinates_, upper_);
}

std::vector<Vector> sample_points(const LightlikeChart& chart, std::size_t count, Rng& rng, double half_width) {
  std::vector<Vector> pts(count, Vector(chart.dim()));
  for (Vector& p : pts) {
    p[0] = rng.uniform(chart.x0_range().first, chart.x0_range().second);
    for (std::size_t i = 1; i < p.size(); ++i) p[i] = rng.uniform(-half_width, half_width);
  }
  return pts;
}

PenroseFamily::PenroseFamily(LightlikeChart chart, double omega) : chart_(std::move(chart)), omega_(omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidArgument("scaling parameter must be positive");
}

Vector PenroseFamily::scales() const {
  Vector s(chart_.dim(), omega_);
  s[0] = 1.0;
  s[1] = omega_ * omega_;
  return s;
}

namespace {

Vector scaled_point(std::span<const double> y, const Vector& s) {
  Vector x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = s[i] * y[i];
  return x;
}

}  // namespace

MetricField PenroseFamily::metric() const {
  const std::size_t n = chart_.dim();
  const double w = omega_;
  return MetricField(Signature::Lorentzian, chart_.coordinates(),
                     [chart = chart_, s = scales(), n, w](std::span<const double> y) {
                       const Vector x = scaled_point(y, s);
                       MetricJet m(n);
                       m(0, 1).set_value(1.0);
                       for (std::size_t i = 1; i < n; ++i)
                         for (std::size_t j = i; j < n; ++j) {
                           Jet2 c = chart.component(i, j).eval_jet2(x);
                           scale_arguments(c, s);
                           if (i == 1 && j == 1) {
                             c *= w * w;
                           } else if (i == 1) {
                             c *= w;
                           }
                           m(i, j) = std::move(c);
                         }
                       return m;
                     });
}

MetricField PenroseFamily::pullback() const {
  const std::size_t n = chart_.dim();
  return MetricField(Signature::Lorentzian, chart_.coordinates(),
                     [chart = chart_, s = scales(), n](std::span<const double> y) {
                       const Vector x = scaled_point(y, s);
                       MetricJet m(n);
                       for (std::size_t i = 0; i < n; ++i)
                         for (std::size_t j = i; j < n; ++j) {
                           Jet2 c = chart.component(i, j).eval_jet2(x);
                           scale_arguments(c, s);
                           c *= s[i] * s[j];
                           m(i, j) = std::move(c);
                         }
                       return m;
                     });
}

double homothety_residual(const PenroseFamily& family, std::span<const Vector> points) {
  const MetricField g = family.metric();
  const MetricField h = family.pullback();
  const double w2 = family.omega() * family.omega();
  double r = 0.0;
  for (const Vector& p : points) {
    Matrix scaled = g.components(p);
    scaled *= w2;
    r = std::max(r, max_abs_diff(h.components(p), scaled));
  }
  return r;
}

double christoffel_residual(const PenroseFamily& family, std::span<const Vector> points) {
  const MetricField g = family.metric();
  const MetricField h = family.pullback();
  double r = 0.0;
  for (const Vector& p : points) {
    const ChristoffelData a = christoffel(g, p);
    const ChristoffelData b = christoffel(h, p);
    r = std::max(r, max_abs_diff(a.gamma, b.gamma) / std::max(1.0, a.gamma.max_abs()));
  }
  return r;
}

const ScalarField& PlaneWaveLimit::front(std::size_t i, std::size_t j) const {
  const std::size_t n = dim();
  if (i < 2 || j < 2 || i >= n || j >= n) throw InvalidArgument("front indices must lie in 2..n");
  if (i > j) std::swap(i, j);
  const std::size_t m = n - 2;
  const std::size_t a = i - 2, b = j - 2;
  return front_[a * m - a * (a - 1) / 2 + (b - a)];
}

ComponentTable PlaneWaveLimit::component_strings() const {
  ComponentTable t;
  const std::size_t n = dim();
  for (std::size_t j = 1; j < n; ++j) t[component_key(1, j)] = "0";
  for (std::size_t i = 2; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) t[component_key(i, j)] = front(i, j).to_string();
  return t;
}

MetricField PlaneWaveLimit::metric() const {
  const std::size_t n = dim();
  std::vector<ScalarField> upper;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (i >= 2) {
        upper.push_back(front(i, j));
      } else {
        upper.push_back(ScalarField::constant(i == 0 && j == 1 ? 1.0 : 0.0, coordinates_));
      }
    }
  return MetricField::from_components(Signature::Lorentzian, coordinates_, std::move(upper));
}

std::optional<Matrix> PlaneWaveLimit::constant_front() const {
  const std::size_t m = dim() - 2;
  Matrix a(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      const std::optional<double> v = constant_value(front(i + 2, j + 2).expr());
      if (!v) return std::nullopt;
      a(i, j) = a(j, i) = *v;
    }
  return a;
}

PlaneWaveLimit take_limit(const LightlikeChart& chart) {
  PlaneWaveLimit l;
  l.coordinates_ = chart.coordinates();
  l.x0_range_ = chart.x0_range();
  const std::size_t n = chart.dim();
  for (std::size_t i = 2; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Expr e = chart.component(i, j).expr();
      for (std::size_t k = 1; k < n; ++k) e = substitute(e, k, 0.0);
      if (const std::optional<double> v = constant_value(e)) e = Expr::constant(*v);
      l.front_.emplace_back(std::move(e), l.coordinates_);
    }
  return l;
}

double limit_deviation(const PenroseFamily& family, const PlaneWaveLimit& limit, std::span<const Vector> points) {
  const MetricField g = family.metric();
  const MetricField h = limit.metric();
  double r = 0.0;
  for (const Vector& p : points) r = std::max(r, max_abs_diff(g.components(p), h.components(p)));
  return r;
}

PlaneWaveCertificate limit_is_plane_wave(const PlaneWaveLimit& limit, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = limit.dim();
  const MetricField h = limit.metric();
  Rng rng(seed);
  PlaneWaveCertificate cert;
  for (std::size_t s = 0; s < samples; ++s) {
    Vector p(n);
    p[0] = rng.uniform(limit.x0_range().first, limit.x0_range().second);
    for (std::size_t i = 1; i < n; ++i) p[i] = rng.uniform(-1.0, 1.0);

    const Matrix g = h.components(p);
    cert.lightlike_residual = std::max(cert.lightlike_residual, std::abs(g(1, 1)));
    cert.n_field_norm = std::max(cert.n_field_norm, std::abs(g(0, 0)));

    const ChristoffelData gamma = christoffel(h, p);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        const double r = std::abs(gamma.gamma(k, i, 1));
        if (r > cert.parallel_residual) {
          cert.parallel_residual = r;
          if (r > kCertificateTolerance && cert.offending.empty()) {
            cert.offending = "nabla V: Gamma^" + std::to_string(k) + "_" + std::to_string(i) + "1";
          }
        }
      }

    const CurvatureData curv = riemann(h, p);
    cert.max_curvature = std::max(cert.max_curvature, curv.riemann.max_abs());
    const Matrix ginv = inverse(g);
    for (std::size_t a = 1; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        // R(d_a, d_b) as an endomorphism: M^l_k = g^lm R_abkm
        double f = 0.0;
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t k = 0; k < n; ++k) {
            double s = 0.0;
            for (std::size_t m = 0; m < n; ++m) s += ginv(l, m) * curv.riemann(a, b, k, m);
            f += s * s;
          }
        f = std::sqrt(f);
        if (f > cert.curvature_residual) {
          cert.curvature_residual = f;
          if (f > kCertificateTolerance && cert.offending.empty()) {
            cert.offending = "R(d" + std::to_string(a) + ", d" + std::to_string(b) + ") != 0";
          }
        }
      }
  }
  cert.plane_wave = cert.lightlike_residual <= kCertificateTolerance &&
                    cert.parallel_residual <= kCertificateTolerance &&
                    cert.curvature_residual <= kCertificateTolerance;
  return cert;
}

PipelineReport limit_to_dual_pipeline(const PlaneWaveLimit& limit, const PipelineOptions& options) {
  const std::size_t n = limit.dim();
  if (n < 4 || n % 2 != 0) {
    throw InvalidArgument("dual construction needs an even limit dimension >= 4, got " + std::to_string(n));
  }
  PipelineReport rep;
  std::optional<PpWaveChart> wave;
  if (options.brinkmann_profile) {
    wave = make_ppwave(n, *options.brinkmann_profile);
    if (!is_plane_wave(*wave)) throw InvalidArgument("supplied Brinkmann profile is not a plane wave");
    rep.conversion = "user-profile";
  } else if (const std::optional<Matrix> a = limit.constant_front()) {
    // Constant front A = L L^T: y = L^T x turns the limit into 2 dv du + |dy|^2.
    const Matrix l = cholesky(*a);
    const Matrix lt_inv = inverse(transpose(l));
    wave = make_ppwave(n, "0");
    rep.conversion = "constant-front";

    Matrix jac(n);
    jac(0, 1) = 1.0;  // x0 = u
    jac(1, 0) = 1.0;  // x1 = v
    for (std::size_t i = 0; i + 2 < n; ++i)
      for (std::size_t j = 0; j + 2 < n; ++j) jac(i + 2, j + 2) = lt_inv(i, j);
    const MetricField hpw = limit.metric();
    const MetricField hb = wave->metric();
    Rng rng(options.seed);
    double res = 0.0;
    for (const Vector& y : sample_points(*wave, 16, rng)) {
      const Vector x = jac * y;
      const Matrix pulled = transpose(jac) * hpw.components(x) * jac;
      res = std::max(res, max_abs_diff(pulled, hb.components(y)));
    }
    rep.pullback_residual = res;
  } else {
    rep.status = "limit computed; Brinkmann conversion unsupported";
    return rep;
  }

  rep.converted = true;
  rep.brinkmann_profile = wave->profile().source();
  const DualChart dual = make_dual(*wave);
  Rng rng(options.seed);
  const std::vector<Vector> pts = sample_points(*wave, std::max<std::size_t>(1, options.samples), rng);
  rep.classification = classify(dual, pts);
  rep.status = "converted";
  return rep;
}

}  // namespace ppak
