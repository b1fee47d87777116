#include "ppak/chart_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ppak/error.hpp"

namespace ppak {

using nlohmann::json;

namespace {

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidArgument(std::string("chart description lacks \"") + key + "\"");
  return doc.at(key);
}

}  // namespace

ChartDescription parse_chart(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed chart JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
  if (!doc.is_object()) throw InvalidArgument("chart description must be a JSON object");
  static const char* const allowed[] = {"kind", "dimension", "profile", "components", "x0_range", "parameters"};
  for (const auto& item : doc.items()) {
    if (std::find_if(std::begin(allowed), std::end(allowed), [&](const char* k) { return item.key() == k; }) ==
        std::end(allowed)) {
      throw InvalidArgument("unknown chart field \"" + item.key() + "\"");
    }
  }

  ChartDescription d;
  const json& kind = require(doc, "kind");
  if (!kind.is_string()) throw InvalidArgument("\"kind\" must be a string");
  d.kind = kind.get<std::string>();
  if (d.kind != "ppwave" && d.kind != "torus" && d.kind != "lightlike") {
    throw InvalidArgument("unknown chart kind \"" + d.kind + "\"");
  }
  const json& dim = require(doc, "dimension");
  if (!dim.is_number_unsigned()) throw InvalidArgument("\"dimension\" must be a positive integer");
  d.dimension = dim.get<std::size_t>();

  if (d.kind == "lightlike") {
    if (doc.contains("profile")) throw InvalidArgument("lightlike charts take \"components\", not \"profile\"");
    if (doc.contains("components")) {
      const json& comps = doc.at("components");
      if (!comps.is_object()) throw InvalidArgument("\"components\" must be an object");
      for (const auto& item : comps.items()) {
        if (!item.value().is_string()) throw InvalidArgument("component " + item.key() + " must be a string");
        d.components[item.key()] = item.value().get<std::string>();
      }
    }
    if (doc.contains("x0_range")) {
      const json& r = doc.at("x0_range");
      if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
        throw InvalidArgument("\"x0_range\" must be a pair of numbers");
      }
      d.x0_range = std::make_pair(r[0].get<double>(), r[1].get<double>());
    }
  } else {
    if (doc.contains("components") || doc.contains("x0_range")) {
      throw InvalidArgument("\"components\" and \"x0_range\" apply to lightlike charts only");
    }
    const json& p = require(doc, "profile");
    if (!p.is_string()) throw InvalidArgument("\"profile\" must be a string");
    d.profile = p.get<std::string>();
  }

  if (doc.contains("parameters")) {
    const json& params = doc.at("parameters");
    if (!params.is_object()) throw InvalidArgument("\"parameters\" must be an object");
    for (const auto& item : params.items()) {
      if (!item.value().is_number()) throw InvalidArgument("parameter " + item.key() + " must be a number");
      d.parameters[item.key()] = item.value().get<double>();
    }
  }
  return d;
}

ChartDescription load_chart(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open chart file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_chart(ss.str());
}

std::string dump_chart(const ChartDescription& d) {
  json doc;
  doc["kind"] = d.kind;
  doc["dimension"] = d.dimension;
  if (d.kind == "lightlike") {
    json comps = json::object();
    for (const auto& [k, v] : d.components) comps[k] = v;
    doc["components"] = comps;
    if (d.x0_range) doc["x0_range"] = {d.x0_range->first, d.x0_range->second};
  } else {
    doc["profile"] = d.profile;
  }
  if (!d.parameters.empty()) {
    json params = json::object();
    for (const auto& [k, v] : d.parameters) params[k] = v;
    doc["parameters"] = params;
  }
  return doc.dump(2) + "\n";
}

void save_chart(const std::filesystem::path& path, const ChartDescription& description) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write chart file " + path.string());
  out << dump_chart(description);
}

ChartDescription describe(const PpWaveChart& chart) {
  ChartDescription d;
  d.kind = to_string(chart.kind());
  d.dimension = chart.dim();
  d.profile = chart.profile().source();
  return d;
}

PpWaveChart build_wave_chart(const ChartDescription& d) {
  if (d.kind == "ppwave") return make_ppwave(d.dimension, d.profile, d.parameters);
  if (d.kind == "torus") {
    if (d.dimension < 4 || d.dimension % 2 != 0) {
      throw InvalidArgument("torus dimension must be 2n + 2 with n >= 1, got " + std::to_string(d.dimension));
    }
    return make_torus_chart((d.dimension - 2) / 2, d.profile, d.parameters);
  }
  throw InvalidArgument("chart kind \"" + d.kind + "\" is not a wave chart");
}

LightlikeChart build_lightlike_chart(const ChartDescription& d) {
  if (d.kind != "lightlike") throw InvalidArgument("chart kind \"" + d.kind + "\" is not a lightlike chart");
  if (d.dimension < 3) throw InvalidArgument("lightlike chart dimension must be at least 3");
  return LightlikeChart::make(d.dimension - 1, d.components, d.x0_range.value_or(std::make_pair(-1.0, 1.0)),
                              d.parameters);
}

}  // namespace ppak
