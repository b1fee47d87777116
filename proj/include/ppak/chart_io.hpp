#pragma once

// Chart description files (JSON):
//
//   {"kind": "ppwave", "dimension": 4, "profile": "x3^2 + x4^2"}
//   {"kind": "torus", "dimension": 4, "profile": "sin(x1)"}
//   {"kind": "lightlike", "dimension": 4,
//    "components": {"h22": "exp(x0)", "h33": "1"}, "x0_range": [0, 1]}
//
// "parameters" (an object of name -> number) is optional for every kind;
// parameter names may then appear in expressions.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "ppak/penrose.hpp"
#include "ppak/ppwave.hpp"

namespace ppak {

struct ChartDescription {
  std::string kind;
  std::size_t dimension = 0;
  std::string profile;
  ComponentTable components;
  std::optional<std::pair<double, double>> x0_range;
  ParameterMap parameters;

  friend bool operator==(const ChartDescription&, const ChartDescription&) = default;
};

/// Throws ParseError for malformed JSON (offset of the last byte read) and
/// InvalidArgument for a well-formed document that is not a chart description.
ChartDescription parse_chart(std::string_view json_text);
ChartDescription load_chart(const std::filesystem::path& path);
/// Deterministic output (sorted keys); parse_chart(dump_chart(d)) == d.
std::string dump_chart(const ChartDescription& description);
void save_chart(const std::filesystem::path& path, const ChartDescription& description);

ChartDescription describe(const PpWaveChart& chart);

/// For kinds "ppwave" and "torus".
PpWaveChart build_wave_chart(const ChartDescription& description);
/// For kind "lightlike"; dimension is the total n + 1.
LightlikeChart build_lightlike_chart(const ChartDescription& description);

}  // namespace ppak
