// Command-line front end: dataset generation, single solves, batch
// benchmarks, shot-budget projection and result summaries.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "bbqmis/bench.hpp"
#include "bbqmis/coloring.hpp"
#include "bbqmis/io.hpp"
#include "bbqmis/qaoa.hpp"

namespace fs = std::filesystem;
using namespace bbqmis;
using io::json;

namespace {

int cmd_gen(const std::string& spec_path, const std::string& out_dir) {
  bench::DatasetSpec spec;
  if (!spec_path.empty()) spec = bench::dataset_spec_from_json(io::read_json(spec_path));
  const auto instances = bench::generate_dataset(spec);
  bench::write_dataset(out_dir, instances);
  io::write_json(fs::path(out_dir) / "dataset_spec.json", bench::dataset_spec_to_json(spec));
  std::cout << "wrote " << instances.size() << " graphs to " << out_dir << '\n';
  return 0;
}

int cmd_solve(const std::string& graph_path, const std::string& solver, const std::string& sampler_name,
              const std::string& config_path, std::uint64_t seed, const std::string& out_path) {
  const Graph g = io::graph_from_json(io::read_json(graph_path));
  json cfg_json = config_path.empty() ? json::object() : io::read_json(config_path);
  BBConfig bb = cfg_json.contains("bb") ? io::bb_config_from_json(cfg_json.at("bb")) : BBConfig{};
  bb.seed = seed;
  const QaoaConfig qaoa = cfg_json.contains("qaoa") ? io::qaoa_config_from_json(cfg_json.at("qaoa")) : QaoaConfig{};
  const std::size_t greedy_shots = cfg_json.value("greedy_shots", std::size_t{100});

  SolveReport report;
  if (solver == "exact") {
    report.best = exact_chromatic(g).witness;
  } else {
    const auto sampler = bench::make_sampler(sampler_name, qaoa);
    if (solver == "greedy")
      report = greedy_it_mis(g, *sampler, greedy_shots, seed);
    else if (solver == "bbq")
      report = bbq_mis(g, *sampler, bb);
    else
      throw std::invalid_argument("unknown solver '" + solver + "'");
  }
  if (!verify_coloring(g, report.best)) throw std::logic_error("solver returned an infeasible coloring");

  json out = io::report_to_json(report);
  out["solver"] = solver;
  out["sampler"] = sampler_name;
  out["seed"] = seed;
  out["bounds"] = io::bounds_to_json(compute_bounds(g, bb.lb_rounding));
  if (sampler_name == "qaoa") out["qaoa"] = io::qaoa_config_to_json(qaoa);
  if (out_path.empty())
    std::cout << out.dump(2) << '\n';
  else
    io::write_json(out_path, out);
  std::cerr << solver << "/" << sampler_name << ": k = " << report.best.k() << ", nodes = " << report.nodes_explored << '\n';
  return 0;
}

int cmd_bench(const std::string& dataset_dir, const std::string& matrix_path, std::size_t parallel,
              const std::string& out_path, bool strict, bool no_timing) {
  const auto dataset = bench::read_dataset(dataset_dir);
  const auto matrix = matrix_path.empty() ? bench::ExperimentMatrix{} : bench::matrix_from_json(io::read_json(matrix_path));

  const fs::path cache_path = fs::path(dataset_dir) / "chi_cache.json";
  bench::ChiCache cache;
  if (fs::exists(cache_path)) cache = io::read_json(cache_path).get<bench::ChiCache>();
  const auto rows = bench::run_experiment(dataset, matrix, parallel, &cache);
  io::write_json(cache_path, json(cache));

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  bench::write_csv(out, rows, !no_timing);

  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (r.error.empty()) continue;
    ++failed;
    std::cerr << "row failed: " << r.instance << " " << r.solver << "/" << r.sampler << ": " << r.error << '\n';
  }
  std::cout << rows.size() << " rows written to " << out_path << " (" << failed << " failed)\n";
  return strict && failed > 0 ? 2 : 0;
}

int cmd_budget(const std::string& report_path, const std::string& config_path, double rate_hz,
               std::optional<std::size_t> nodes) {
  QaoaConfig qaoa;
  if (!config_path.empty()) {
    const auto j = io::read_json(config_path);
    qaoa = io::qaoa_config_from_json(j.contains("qaoa") ? j.at("qaoa") : j);
  }
  std::size_t explored = 0;
  if (nodes) {
    explored = *nodes;
  } else {
    const auto j = io::read_json(report_path);
    if (j.contains("qaoa")) qaoa = io::qaoa_config_from_json(j.at("qaoa"));
    explored = io::report_from_json(j).nodes_explored;
  }
  const auto b = bench::shot_budget(explored, qaoa, rate_hz);
  json out = {{"nodes_explored", explored}, {"shots", b.shots}, {"rate_hz", rate_hz}, {"seconds", b.seconds}, {"hours", b.seconds / 3600.0}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_report(const std::string& in_path, const std::string& out_path, const std::string& series_path) {
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open " + in_path);
  const auto rows = bench::read_csv(in);
  if (rows.empty()) throw std::invalid_argument("no rows in " + in_path);
  io::write_json(out_path, bench::summarize(rows));
  if (!series_path.empty()) {
    std::ofstream s(series_path);
    bench::write_series_csv(s, rows);
  }
  std::cout << "summary written to " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph coloring with maximal-independent-set sampling"};
  app.require_subcommand(1);

  std::string spec_path, out_dir;
  auto* gen = app.add_subcommand("gen", "Generate a unit-disk graph dataset");
  gen->add_option("--spec", spec_path, "Dataset spec JSON (defaults when omitted)");
  gen->add_option("--out", out_dir, "Output directory")->required();

  std::string graph_path, solver = "bbq", sampler = "exact", config_path, solve_out;
  std::uint64_t seed = 0;
  auto* solve = app.add_subcommand("solve", "Color one graph");
  solve->add_option("--graph", graph_path, "Graph JSON")->required();
  solve->add_option("--solver", solver)->check(CLI::IsMember({"greedy", "bbq", "exact"}));
  solve->add_option("--sampler", sampler)->check(CLI::IsMember({"exact", "qaoa", "rgreedy"}));
  solve->add_option("--config", config_path, "JSON with optional \"bb\", \"qaoa\" and \"greedy_shots\" blocks");
  solve->add_option("--seed", seed);
  solve->add_option("--out", solve_out, "Report JSON (stdout when omitted)");

  std::string dataset_dir, matrix_path, csv_out;
  std::size_t parallel = 1;
  bool strict = false;
  bool no_timing = false;
  auto* bench_cmd = app.add_subcommand("bench", "Run a solver x sampler matrix over a dataset");
  bench_cmd->add_option("--dataset", dataset_dir)->required();
  bench_cmd->add_option("--matrix", matrix_path);
  bench_cmd->add_option("--parallel", parallel)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", csv_out)->required();
  bench_cmd->add_flag("--strict", strict, "Nonzero exit status when any row fails");
  bench_cmd->add_flag("--no-timing", no_timing, "Write wall_s as 0 for byte-reproducible output");

  std::string report_path, budget_config;
  double rate_hz = 5.0;
  std::optional<std::size_t> nodes;
  auto* budget = app.add_subcommand("budget", "Project device shots and time for a QAOA-backed run");
  auto* report_opt = budget->add_option("--report", report_path);
  auto* nodes_opt = budget->add_option("--nodes", nodes, "Explored node count instead of a report");
  report_opt->excludes(nodes_opt);
  budget->add_option("--config", budget_config, "QAOA config JSON");
  budget->add_option("--rate-hz", rate_hz)->check(CLI::PositiveNumber);

  std::string report_in, summary_out, series_out;
  auto* report = app.add_subcommand("report", "Summarise a results CSV");
  report->add_option("--in", report_in)->required();
  report->add_option("--out", summary_out)->required();
  report->add_option("--series", series_out, "Per-instance greedy/bbq/oracle CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(spec_path, out_dir);
    if (*solve) return cmd_solve(graph_path, solver, sampler, config_path, seed, solve_out);
    if (*bench_cmd) return cmd_bench(dataset_dir, matrix_path, parallel, csv_out, strict, no_timing);
    if (*budget) {
      if (report_path.empty() && !nodes) throw std::invalid_argument("budget needs --report or --nodes");
      return cmd_budget(report_path, budget_config, rate_hz, nodes);
    }
    if (*report) return cmd_report(report_in, summary_out, series_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
