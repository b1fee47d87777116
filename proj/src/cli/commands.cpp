#include "cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "cli/reports.hpp"
#include "ppak/curvature.hpp"
#include "ppak/error.hpp"

namespace ppak::cli {
namespace {

struct RunConfig {
  std::string command;
  std::string profile;
  std::string chart_path;
  std::size_t dim = 4;
  std::size_t samples = 100;
  double horizon = 1000.0;
  double tol_abs = 1e-10;
  double tol_rel = 1e-10;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t jobs = 1;
  bool no_timestamp = false;
  std::vector<std::string> params;
  std::string point;
  std::string csv;
  std::string omegas = "1,0.5,0.1,0.01,0.001";
  std::string brinkmann;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(x)) {
      throw InvalidArgument(std::string("malformed number in ") + what + ": '" + item + "'");
    }
    v.push_back(x);
    pos = end + 1;
  }
  return v;
}

ParameterMap parse_params(const std::vector<std::string>& items) {
  ParameterMap m;
  for (const std::string& s : items) {
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidArgument("parameter must look like name=value: " + s);
    m[s.substr(0, eq)] = parse_list(s.substr(eq + 1), "--param").at(0);
  }
  return m;
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ChartDescription description(const RunConfig& c, bool torus) {
  ChartDescription d;
  if (!c.chart_path.empty()) {
    d = load_chart(c.chart_path);
  } else if (!c.profile.empty()) {
    d.kind = torus ? "torus" : "ppwave";
    d.dimension = c.dim;
    d.profile = c.profile;
  } else {
    throw InvalidArgument("one of --profile or --chart is required");
  }
  for (const auto& [k, v] : parse_params(c.params)) d.parameters[k] = v;
  return d;
}

PpWaveChart wave_chart(const ChartDescription& d, bool torus_only) {
  if (d.kind == "lightlike") throw InvalidArgument("lightlike charts are handled by the penrose command");
  if (torus_only && d.kind != "torus") throw InvalidArgument("torus-verify needs a torus chart");
  return build_wave_chart(d);
}

json header(const RunConfig& c, const ChartDescription& d) {
  json j{{"schema", 1}, {"command", c.command}, {"chart", to_json(d)}, {"seed", c.seed}};
  if (!c.no_timestamp) j["generated_at"] = timestamp();
  return j;
}

double relative_residual(const Matrix& a, const Matrix& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      r = std::max(r, std::abs(a(i, j) - b(i, j)) / std::max(1.0, std::abs(b(i, j))));
  return r;
}

int cmd_curvature(const RunConfig& c, json& rep) {
  const ChartDescription d = description(c, false);
  const PpWaveChart wave = wave_chart(d, false);
  const DualChart dual = make_dual(wave);
  rep = header(c, d);

  Rng rng(c.seed);
  const std::vector<Vector> pts = sample_points(wave, c.samples, rng);
  double ricci_res = 0.0, scalar_res = 0.0, pp_res = 0.0, max_riemann = 0.0;
  double smin = std::numeric_limits<double>::infinity(), smax = -smin;
  bool flatness_law = true;
  for (const Vector& p : pts) {
    const CurvatureData curv = riemann(dual.metric(), p);
    const FrameData f = make_frame(dual, p);
    ricci_res = std::max(ricci_res, relative_residual(change_to_frame(curv.ricci, f.frame),
                                                      dual_ricci_closed_form(dual, p)));
    scalar_res = std::max(scalar_res, std::abs(curv.scalar - dual_scalar_closed_form(dual, p)));
    const double rmax = curv.riemann.max_abs();
    max_riemann = std::max(max_riemann, rmax);
    if (std::abs(curv.scalar) <= 1e-9 && rmax > 1e-9) flatness_law = false;
    smin = std::min(smin, curv.scalar);
    smax = std::max(smax, curv.scalar);
    pp_res = std::max(pp_res, max_abs_diff(ricci_scalar(wave.metric(), p).ricci, ppwave_ricci_closed_form(wave, p)));
  }
  rep["samples"] = pts.size();
  rep["max_ricci_residual"] = ricci_res;
  rep["max_scalar_residual"] = scalar_res;
  rep["max_ppwave_ricci_residual"] = pp_res;
  rep["scalar_range"] = {smin, smax};
  rep["max_riemann"] = max_riemann;
  rep["flatness_law_holds"] = flatness_law;
  rep["verdict"] = max_riemann <= 1e-9 ? "flat" : "curved";
  rep["plane_wave"] = is_plane_wave(wave);

  if (!c.point.empty()) {
    const Vector p = parse_list(c.point, "--point");
    if (p.size() != wave.dim()) throw InvalidArgument("--point needs " + std::to_string(wave.dim()) + " coordinates");
    const CurvatureData curv = riemann(dual.metric(), p);
    const FrameData f = make_frame(dual, p);
    rep["point"] = {{"coordinates", p},
                    {"frame_ricci", to_json(change_to_frame(curv.ricci, f.frame))},
                    {"frame_ricci_closed_form", to_json(dual_ricci_closed_form(dual, p))},
                    {"coordinate_ricci", to_json(curv.ricci)},
                    {"ppwave_ricci", to_json(ricci_scalar(wave.metric(), p).ricci)},
                    {"scalar", curv.scalar}};
  }
  const bool ok = ricci_res <= 1e-7 && scalar_res <= 1e-9 && pp_res <= 1e-9 && flatness_law;
  return ok ? kOk : kVerificationFailed;
}

int cmd_verify_ak(const RunConfig& c, json& rep, bool torus) {
  const ChartDescription d = description(c, torus);
  const PpWaveChart wave = wave_chart(d, torus);
  const DualChart dual = make_dual(wave);
  frame_J(wave);  // dimension check
  rep = header(c, d);
  Rng rng(c.seed);
  const std::vector<Vector> pts = sample_points(wave, std::max<std::size_t>(1, c.samples), rng);
  const ClassificationReport r = classify(dual, pts);
  rep["classification"] = to_json(r);
  rep["domega_ok"] = r.max_domega <= 1e-10;
  return r.max_domega <= 1e-10 ? kOk : kVerificationFailed;
}

void write_csv(const std::string& path, const DualChart& dual, const GeodesicState& initial, double t_end,
               const OdeOptions& opts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << "t";
  for (const std::string& name : dual.wave().coordinates()) out << ',' << name;
  out << ",c,c2,speed\n";
  integrate(dual, initial, t_end, opts, [&out](const GeodesicState& s, const ConservedMonitors& m) {
    out << format_number(s.t);
    for (double x : s.position) out << ',' << format_number(x);
    out << ',' << format_number(m.c) << ',' << format_number(m.c2) << ',' << format_number(m.speed) << '\n';
  });
  if (!out) throw InvalidArgument("failed writing " + path);
}

int cmd_geodesics(const RunConfig& c, json& rep) {
  const ChartDescription d = description(c, false);
  const PpWaveChart wave = wave_chart(d, false);
  const DualChart dual = make_dual(wave);
  rep = header(c, d);
  ProbeOptions o;
  o.ensemble = c.samples;
  o.horizon = c.horizon;
  o.ode.abs_tol = c.tol_abs;
  o.ode.rel_tol = c.tol_rel;
  o.seed = c.seed;
  o.jobs = c.jobs;
  const ProbeReport r = completeness_probe(dual, o);
  rep["horizon"] = c.horizon;
  rep["tol_abs"] = c.tol_abs;
  rep["tol_rel"] = c.tol_rel;
  rep["probe"] = to_json(r);
  if (!c.csv.empty() && !r.members.empty()) {
    write_csv(c.csv, dual, r.members.front().initial, r.members.front().initial.t + c.horizon, o.ode);
    rep["csv_member"] = 0;
  }
  if (r.failures > 0) return kNumericFailure;
  return r.drift_ok && r.bounds_ok ? kOk : kVerificationFailed;
}

int cmd_penrose(const RunConfig& c, json& rep) {
  if (c.chart_path.empty()) throw InvalidArgument("penrose needs --chart with a lightlike chart");
  ChartDescription d = load_chart(c.chart_path);
  for (const auto& [k, v] : parse_params(c.params)) d.parameters[k] = v;
  const LightlikeChart chart = build_lightlike_chart(d);
  rep = header(c, d);

  std::vector<double> omegas = parse_list(c.omegas, "--omegas");
  for (double w : omegas)
    if (!(w > 0.0)) throw InvalidArgument("--omegas entries must be positive");
  Rng rng(c.seed);
  const std::vector<Vector> pts = sample_points(chart, std::max<std::size_t>(1, c.samples), rng);
  const PlaneWaveLimit limit = take_limit(chart);

  json sweep = json::array();
  double max_h = 0.0;
  std::vector<double> devs;
  for (double w : omegas) {
    const PenroseFamily fam(chart, w);
    const double h = homothety_residual(fam, pts);
    const double dev = limit_deviation(fam, limit, pts);
    max_h = std::max(max_h, h);
    devs.push_back(dev);
    sweep.push_back({{"omega", w},
                     {"homothety_residual", h},
                     {"christoffel_residual", christoffel_residual(fam, pts)},
                     {"limit_deviation", dev}});
  }
  bool monotone = true, order_one = true;
  for (std::size_t k = 1; k < omegas.size(); ++k) {
    if (omegas[k] >= omegas[k - 1]) continue;
    if (devs[k] > devs[k - 1]) monotone = false;
    if (devs[k - 1] == 0.0 && devs[k] == 0.0) continue;
    const double r = omegas[k] / omegas[k - 1];
    const double q = devs[k - 1] == 0.0 ? std::numeric_limits<double>::infinity() : devs[k] / devs[k - 1];
    if (q < r / 3.0 || q > 3.0 * r) order_one = false;
  }
  rep["omega_sweep"] = sweep;
  rep["max_homothety_residual"] = max_h;
  rep["deviation_monotone"] = monotone;
  rep["deviation_order_one"] = order_one;
  json comps = json::object();
  for (const auto& [k, v] : limit.component_strings()) comps[k] = v;
  rep["limit_components"] = comps;
  const PlaneWaveCertificate cert = limit_is_plane_wave(limit, 16, c.seed);
  rep["certificate"] = to_json(cert);

  if (limit.dim() >= 4 && limit.dim() % 2 == 0) {
    PipelineOptions po;
    po.samples = c.samples;
    po.seed = c.seed;
    if (!c.brinkmann.empty()) po.brinkmann_profile = c.brinkmann;
    rep["dual"] = to_json(limit_to_dual_pipeline(limit, po));
  } else {
    rep["dual"] = {{"status", "odd dimension; dual construction not applicable"}, {"converted", false}};
  }
  return max_h <= 1e-10 && cert.plane_wave ? kOk : kVerificationFailed;
}

void add_common(CLI::App* sub, RunConfig& c) {
  auto* prof = sub->add_option("--profile", c.profile, "wave profile H as an expression");
  auto* chart = sub->add_option("--chart", c.chart_path, "chart description file (JSON)");
  prof->excludes(chart);
  sub->add_option("--dim", c.dim, "total dimension for --profile")->check(CLI::Range(3, 64));
  sub->add_option("--samples", c.samples, "sample points (ensemble size for geodesics)");
  sub->add_option("--horizon", c.horizon, "geodesic integration horizon");
  sub->add_option("--tol-abs", c.tol_abs, "integrator absolute tolerance");
  sub->add_option("--tol-rel", c.tol_rel, "integrator relative tolerance");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--out", c.out, "write the JSON report here instead of stdout");
  sub->add_option("--jobs", c.jobs, "worker threads for geodesic ensembles")->check(CLI::Range(1, 256));
  sub->add_flag("--no-timestamp", c.no_timestamp, "omit the generation time from the report");
  sub->add_option("--param", c.params, "bind an expression parameter, name=value");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pp-wave duals and almost Kahler verification", "ppak"};
  app.require_subcommand(1);
  RunConfig c;
  struct CommandInfo {
    const char* name;
    const char* help;
  };
  const CommandInfo commands[] = {{"curvature", "curvature of the dual metric against closed forms"},
                                   {"verify-ak", "almost Kahler checks and Kahler classification"},
                                   {"geodesics", "geodesic conservation and completeness probe"},
                                   {"penrose", "plane-wave limit of a lightlike chart"},
                                   {"torus-verify", "almost Kahler checks on a flat-torus chart"}};
  for (const CommandInfo& s : commands) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, c);
    if (std::string(s.name) == "curvature") sub->add_option("--point", c.point, "comma-separated point for a detailed report");
    if (std::string(s.name) == "geodesics") sub->add_option("--csv", c.csv, "trajectory CSV of the first geodesic");
    if (std::string(s.name) == "penrose") {
      sub->add_option("--omegas", c.omegas, "comma-separated scaling parameters");
      sub->add_option("--brinkmann", c.brinkmann, "Brinkmann profile of the limit for the dual pipeline");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  c.command = app.get_subcommands().front()->get_name();

  json rep;
  int code = kOk;
  try {
    if (c.command == "curvature") {
      code = cmd_curvature(c, rep);
    } else if (c.command == "verify-ak") {
      code = cmd_verify_ak(c, rep, false);
    } else if (c.command == "torus-verify") {
      code = cmd_verify_ak(c, rep, true);
    } else if (c.command == "geodesics") {
      code = cmd_geodesics(c, rep);
    } else {
      code = cmd_penrose(c, rep);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  }

  rep["exit_code"] = code;
  const std::string text = rep.dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f || !(f << text)) {
      err << "cannot write " << c.out << "\n";
      return kInputError;
    }
  }
  return code;
}

}  // namespace ppak::cli
