#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "bbqmis/coloring.hpp"
#include "bbqmis/graph.hpp"
#include "bbqmis/mis.hpp"
#include "bbqmis/qaoa.hpp"
#include "bbqmis/spectral.hpp"

namespace bbqmis::io {

using nlohmann::json;

/// {"n", "edges" (sorted), "labels", "coords" when present}
json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

/// {"shots", "backend", "seed", "entries": {bitstring: count}}; bitstrings
/// span the graph's labels, most significant character = highest label.
json histogram_to_json(const SampleHistogram& h, const Graph& g);
SampleHistogram histogram_from_json(const json& j, const Graph& g);

json coloring_to_json(const Coloring& c);
json bounds_to_json(const BoundsReport& b);
json report_to_json(const SolveReport& r);
/// Fields needed to recompute shot budgets from a saved report.
SolveReport report_from_json(const json& j);

json qaoa_config_to_json(const QaoaConfig& cfg);
/// Missing keys keep their defaults.
QaoaConfig qaoa_config_from_json(const json& j);
json schedule_to_json(const rydberg::PulseSchedule& s);

json bb_config_to_json(const BBConfig& cfg);
BBConfig bb_config_from_json(const json& j);

json read_json(const std::filesystem::path& p);
void write_json(const std::filesystem::path& p, const json& j);

}  // namespace bbqmis::io
