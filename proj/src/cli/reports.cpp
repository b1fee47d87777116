#include "cli/reports.hpp"

namespace ppak::cli {

json to_json(const Vector& v) { return json(v); }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const ChartDescription& d) {
  json j = json::parse(dump_chart(d));
  return j;
}

json to_json(const ClassificationReport& r) {
  return {{"profile", r.profile},
          {"samples", r.samples},
          {"max_grad_H", r.max_grad_h},
          {"scalar_range", {r.scalar_min, r.scalar_max}},
          {"max_nijenhuis", r.max_nijenhuis},
          {"max_domega", r.max_domega},
          {"max_J_square_residual", r.max_j_square},
          {"max_J_compatibility_residual", r.max_j_compatibility},
          {"verdict", to_string(r.verdict)},
          {"consistent", r.consistent},
          {"inconsistent_samples", r.inconsistent_samples}};
}

namespace {

json monitors_json(const ConservedMonitors& m) { return {{"c", m.c}, {"c2", m.c2}, {"speed", m.speed}}; }

}  // namespace

json to_json(const GeodesicSummary& s) {
  return {{"initial_position", s.initial.position},
          {"initial_velocity", s.initial.velocity},
          {"initial_monitors", monitors_json(s.initial_monitors)},
          {"final_t", s.final.t},
          {"final_position", s.final.position},
          {"max_drift_c", s.max_drift_c},
          {"max_drift_c2", s.max_drift_c2},
          {"max_drift_speed", s.max_drift_speed},
          {"max_growth_excess", s.max_growth_excess},
          {"max_velocity_excess", s.max_velocity_excess},
          {"max_u_growth_excess", s.max_u_growth_excess},
          {"max_abs_u", s.max_abs_u},
          {"accepted_steps", s.stats.accepted},
          {"rejected_steps", s.stats.rejected}};
}

json to_json(const ProbeReport& r) {
  json members = json::array();
  for (std::size_t k = 0; k < r.members.size(); ++k) {
    const ProbeMember& m = r.members[k];
    json entry = m.summary ? to_json(*m.summary) : json{{"initial_position", m.initial.position},
                                                        {"initial_velocity", m.initial.velocity},
                                                        {"error", m.error}};
    entry["index"] = k;
    members.push_back(std::move(entry));
  }
  return {{"ensemble", r.members.size()},
          {"failures", r.failures},
          {"max_drift_c", r.max_drift_c},
          {"max_drift_c2", r.max_drift_c2},
          {"max_drift_speed", r.max_drift_speed},
          {"max_growth_excess", r.max_growth_excess},
          {"max_velocity_excess", r.max_velocity_excess},
          {"max_u_growth_excess", r.max_u_growth_excess},
          {"drift_ok", r.drift_ok},
          {"bounds_ok", r.bounds_ok},
          {"members", members}};
}

json to_json(const PlaneWaveCertificate& c) {
  return {{"plane_wave", c.plane_wave},
          {"parallel_field", "d/dx1 (gradient of x0)"},
          {"lightlike_residual", c.lightlike_residual},
          {"parallel_residual", c.parallel_residual},
          {"curvature_condition_residual", c.curvature_residual},
          {"max_curvature", c.max_curvature},
          {"d_x0_norm", c.n_field_norm},
          {"offending", c.offending}};
}

json to_json(const PipelineReport& r) {
  json j{{"status", r.status}, {"converted", r.converted}};
  if (r.converted) {
    j["conversion"] = r.conversion;
    j["brinkmann_profile"] = r.brinkmann_profile;
  }
  if (r.pullback_residual) j["pullback_residual"] = *r.pullback_residual;
  if (r.classification) j["classification"] = to_json(*r.classification);
  return j;
}

}  // namespace ppak::cli
