#include "bbqmis/io.hpp"

#include <fstream>
#include <stdexcept>

namespace bbqmis::io {

json graph_to_json(const Graph& g) {
  json j;
  j["n"] = g.size();
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  j["labels"] = g.labels();
  if (g.has_coords()) {
    json coords = json::array();
    for (const auto& p : g.coords()) coords.push_back({p.x, p.y});
    j["coords"] = std::move(coords);
  }
  return j;
}

Graph graph_from_json(const json& j) {
  const auto n = j.at("n").get<std::size_t>();
  std::vector<Label> labels;
  if (j.contains("labels")) {
    labels = j.at("labels").get<std::vector<Label>>();
  } else {
    for (std::size_t i = 0; i < n; ++i) labels.push_back(static_cast<Label>(i));
  }
  if (labels.size() != n) throw std::invalid_argument("graph JSON: labels do not match n");
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<Label>(), e.at(1).get<Label>());
  std::optional<std::vector<Point>> coords;
  if (j.contains("coords")) {
    coords.emplace();
    for (const auto& p : j.at("coords")) coords->push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  return Graph(std::move(labels), edges, std::move(coords));
}

json histogram_to_json(const SampleHistogram& h, const Graph& g) {
  json entries = json::object();
  for (const auto& [s, count] : h.entries) entries[to_bitstring(g, s)] = count;
  return {{"shots", h.shots}, {"backend", h.backend}, {"seed", h.seed}, {"entries", std::move(entries)}};
}

SampleHistogram histogram_from_json(const json& j, const Graph& g) {
  SampleHistogram h;
  h.backend = j.value("backend", "");
  h.seed = j.value("seed", std::uint64_t{0});
  for (const auto& [bits, count] : j.at("entries").items()) h.add(from_bitstring(g, bits), count.get<std::size_t>());
  if (j.contains("shots") && j.at("shots").get<std::size_t>() != h.shots)
    throw std::invalid_argument("histogram JSON: counts do not sum to shots");
  h.shots_requested = h.shots;
  h.shots_consumed = h.shots;
  return h;
}

json coloring_to_json(const Coloring& c) {
  json classes = json::array();
  for (auto cls : c.classes) classes.push_back(cls.labels());
  return {{"k", c.k()}, {"classes", std::move(classes)}};
}

namespace {

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

json bounds_to_json(const BoundsReport& b) {
  return {{"lb_hoffman", optional_number(b.lower.hoffman)},
          {"lb_ew", optional_number(b.lower.elphick_wocjan)},
          {"lb_ee", optional_number(b.lower.edwards_elphick)},
          {"ub_greedy", b.upper.greedy},
          {"ub_wp", b.upper.welsh_powell},
          {"combined_lb", b.combined_lb},
          {"combined_ub", b.combined_ub}};
}

json report_to_json(const SolveReport& r) {
  json trace = json::array();
  for (const auto& t : r.trace) {
    trace.push_back({{"node", t.node},
                     {"parent", t.parent ? json(*t.parent) : json(nullptr)},
                     {"depth", t.depth},
                     {"priority", t.priority},
                     {"lb", t.lb},
                     {"ub", t.ub},
                     {"action", t.action}});
  }
  json j = {{"best", coloring_to_json(r.best)},
            {"k", r.best.k()},
            {"nodes_explored", r.nodes_explored},
            {"nodes_created", r.nodes_created},
            {"nodes_pruned", r.nodes_pruned},
            {"shots_consumed", r.shots_consumed},
            {"wall_time", r.wall_time},
            {"terminated_by", to_string(r.terminated_by)},
            {"incumbent_history", r.incumbent_history},
            {"sampler_fallbacks", r.sampler_fallbacks},
            {"trace", std::move(trace)}};
  j["first_leaf_k"] = r.first_leaf_k ? json(*r.first_leaf_k) : json(nullptr);
  return j;
}

SolveReport report_from_json(const json& j) {
  SolveReport r;
  r.nodes_explored = j.at("nodes_explored").get<std::size_t>();
  r.shots_consumed = j.value("shots_consumed", std::size_t{0});
  r.nodes_created = j.value("nodes_created", std::size_t{0});
  r.wall_time = j.value("wall_time", 0.0);
  r.terminated_by = j.value("terminated_by", "optimality") == "node_budget" ? TerminatedBy::NodeBudget : TerminatedBy::Optimality;
  if (j.contains("best"))
    for (const auto& cls : j.at("best").at("classes")) r.best.classes.push_back(VertexSet::from_labels(cls.get<std::vector<Label>>()));
  return r;
}

json qaoa_config_to_json(const QaoaConfig& cfg) {
  json j = {{"layers", cfg.layers},
            {"eval_shots", cfg.eval_shots},
            {"max_evals", cfg.max_evals},
            {"final_shots", cfg.final_shots},
            {"c6", cfg.device.c6},
            {"max_amp_mhz", cfg.device.max_amp / rydberg::mhz_to_rad_per_us(1.0)},
            {"max_det_mhz", cfg.device.max_det / rydberg::mhz_to_rad_per_us(1.0)},
            {"max_duration_us", cfg.device.max_duration},
            {"objective", cfg.objective == QaoaObjective::MisCost ? "mis_cost" : "ising_energy"},
            {"cost_detuning_fraction", cfg.cost_detuning_fraction},
            {"drive_during_cost", cfg.drive_during_cost},
            {"coordinate_scale", cfg.embed.coordinate_scale},
            {"max_qubits", cfg.embed.max_qubits}};
  j["penalty"] = cfg.penalty ? json(*cfg.penalty) : json("auto");
  return j;
}

QaoaConfig qaoa_config_from_json(const json& j) {
  QaoaConfig cfg;
  cfg.layers = j.value("layers", cfg.layers);
  cfg.eval_shots = j.value("eval_shots", cfg.eval_shots);
  cfg.max_evals = j.value("max_evals", cfg.max_evals);
  cfg.final_shots = j.value("final_shots", cfg.final_shots);
  cfg.device.c6 = j.value("c6", cfg.device.c6);
  if (j.contains("max_amp_mhz")) cfg.device.max_amp = rydberg::mhz_to_rad_per_us(j.at("max_amp_mhz").get<double>());
  if (j.contains("max_det_mhz")) cfg.device.max_det = rydberg::mhz_to_rad_per_us(j.at("max_det_mhz").get<double>());
  cfg.device.max_duration = j.value("max_duration_us", cfg.device.max_duration);
  if (j.contains("penalty")) {
    const auto& p = j.at("penalty");
    if (p.is_string()) {
      if (p.get<std::string>() != "auto") throw std::invalid_argument("penalty must be a number or \"auto\"");
      cfg.penalty.reset();
    } else {
      cfg.penalty = p.get<double>();
    }
  }
  const auto objective = j.value("objective", std::string("mis_cost"));
  if (objective == "mis_cost")
    cfg.objective = QaoaObjective::MisCost;
  else if (objective == "ising_energy")
    cfg.objective = QaoaObjective::IsingEnergy;
  else
    throw std::invalid_argument("unknown objective '" + objective + "'");
  cfg.cost_detuning_fraction = j.value("cost_detuning_fraction", cfg.cost_detuning_fraction);
  cfg.drive_during_cost = j.value("drive_during_cost", cfg.drive_during_cost);
  cfg.embed.coordinate_scale = j.value("coordinate_scale", cfg.embed.coordinate_scale);
  cfg.embed.max_qubits = j.value("max_qubits", cfg.embed.max_qubits);
  cfg.validate();
  return cfg;
}

json schedule_to_json(const rydberg::PulseSchedule& s) {
  json segs = json::array();
  for (const auto& seg : s.segments()) segs.push_back({{"omega", seg.omega}, {"delta", seg.delta}, {"duration", seg.duration}});
  return segs;
}

json bb_config_to_json(const BBConfig& cfg) {
  json j = {{"shots_per_node", cfg.shots_per_node},
            {"lb_rounding", cfg.lb_rounding == LbRounding::Floor ? "floor" : "ceil"},
            {"seed", cfg.seed},
            {"exploration", to_string(cfg.exploration)},
            {"prune_non_improving", cfg.prune_non_improving},
            {"prune_redundant", cfg.prune_redundant},
            {"workers", cfg.workers}};
  j["node_budget"] = cfg.node_budget ? json(*cfg.node_budget) : json(nullptr);
  return j;
}

BBConfig bb_config_from_json(const json& j) {
  BBConfig cfg;
  if (j.contains("node_budget")) {
    if (j.at("node_budget").is_null())
      cfg.node_budget.reset();
    else
      cfg.node_budget = j.at("node_budget").get<std::size_t>();
  }
  cfg.shots_per_node = j.value("shots_per_node", cfg.shots_per_node);
  const auto rounding = j.value("lb_rounding", std::string("floor"));
  if (rounding != "floor" && rounding != "ceil") throw std::invalid_argument("lb_rounding must be floor or ceil");
  cfg.lb_rounding = rounding == "floor" ? LbRounding::Floor : LbRounding::Ceil;
  cfg.seed = j.value("seed", cfg.seed);
  cfg.exploration = exploration_from_string(j.value("exploration", std::string("priority")));
  cfg.prune_non_improving = j.value("prune_non_improving", cfg.prune_non_improving);
  cfg.prune_redundant = j.value("prune_redundant", cfg.prune_redundant);
  cfg.workers = j.value("workers", cfg.workers);
  cfg.record_trace = j.value("record_trace", cfg.record_trace);
  return cfg;
}

json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  return json::parse(in);
}

void write_json(const std::filesystem::path& p, const json& j) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << j.dump(2) << '\n';
}

}  // namespace bbqmis::io
