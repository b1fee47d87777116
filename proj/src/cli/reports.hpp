#pragma once

// JSON serialisation of library results for the command-line reports.

#include "json.hpp"
#include "ppak/almost_kahler.hpp"
#include "ppak/chart_io.hpp"
#include "ppak/geodesics.hpp"
#include "ppak/penrose.hpp"

namespace ppak::cli {

using nlohmann::json;

json to_json(const Vector& v);
json to_json(const Matrix& m);
json to_json(const ChartDescription& d);
json to_json(const ClassificationReport& r);
json to_json(const GeodesicSummary& s);
json to_json(const ProbeReport& r);
json to_json(const PlaneWaveCertificate& c);
json to_json(const PipelineReport& r);

}  // namespace ppak::cli
