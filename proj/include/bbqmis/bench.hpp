#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbqmis/coloring.hpp"
#include "bbqmis/graph.hpp"
#include "bbqmis/io.hpp"
#include "bbqmis/qaoa.hpp"

namespace bbqmis::bench {

struct SizeCount {
  std::size_t n = 0;
  std::size_t count = 0;
};

/// Random connected unit-disk graphs in a square.
struct DatasetSpec {
  std::vector<SizeCount> sizes{{10, 20}, {11, 20}, {12, 20}, {13, 20}, {14, 20}, {15, 20}};
  double side = 22.5;          // um
  double radius = 7.5;         // um
  double min_separation = 4.0; // um
  /// Relative band around the radius kept free of pair distances: every pair
  /// is closer than radius / (1 + margin) or farther than radius * (1 + margin).
  /// A positive margin leaves room for a blockade radius between edges and
  /// non-edges when the graph is placed on atoms.
  double radius_margin = 0.0;
  std::uint64_t seed = 2024;
  std::size_t max_attempts = 200000;
};

io::json dataset_spec_to_json(const DatasetSpec& s);
DatasetSpec dataset_spec_from_json(const io::json& j);

class InfeasibleGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Instance {
  std::string id;
  Graph graph;
};

std::vector<Instance> generate_dataset(const DatasetSpec& spec);
void write_dataset(const std::filesystem::path& dir, const std::vector<Instance>& instances);
/// Every *.json graph file in dir, ordered by file name.
std::vector<Instance> read_dataset(const std::filesystem::path& dir);

struct ExperimentRow {
  std::string instance;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string solver;
  std::string sampler;
  int k = -1;
  int chi = -1;
  std::size_t nodes_explored = 0;
  std::size_t shots = 0;
  double wall_s = 0.0;
  std::string terminated_by;
  std::uint64_t seed = 0;
  /// Empty on success; failed rows carry k = -1.
  std::string error;
};

struct ExperimentMatrix {
  std::vector<std::string> solvers{"greedy", "bbq"};
  std::vector<std::string> samplers{"exact"};
  BBConfig bb;
  QaoaConfig qaoa;
  std::size_t greedy_shots = 100;
  std::uint64_t seed = 0;
};

io::json matrix_to_json(const ExperimentMatrix& m);
ExperimentMatrix matrix_from_json(const io::json& j);

/// Chromatic numbers keyed by instance id and graph fingerprint.
using ChiCache = std::map<std::string, int>;
std::string chi_cache_key(const Instance& inst);

/// Runs every (instance, solver, sampler) combination on up to `parallel`
/// workers. Rows come back in canonical order; per-run failures are recorded
/// in the row.
std::vector<ExperimentRow> run_experiment(const std::vector<Instance>& dataset, const ExperimentMatrix& matrix,
                                          std::size_t parallel, ChiCache* cache = nullptr);

std::unique_ptr<MisSampler> make_sampler(const std::string& name, const QaoaConfig& qaoa);

struct ShotBudget {
  std::size_t shots = 0;
  double seconds = 0.0;
};

/// Device shots for a QAOA-backed run explored over `nodes` nodes.
ShotBudget shot_budget(std::size_t nodes, const QaoaConfig& cfg, double rate_hz);
ShotBudget shot_budget(const SolveReport& report, const QaoaConfig& cfg, double rate_hz);

inline const char* kCsvHeader = "instance,n,m,solver,sampler,k,chi,nodes_explored,shots,wall_s,terminated_by,seed";

/// Without timing, wall_s is written as zero so that reruns are byte-identical.
void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows, bool include_timing = true);
std::vector<ExperimentRow> read_csv(std::istream& in);

/// Optimality rates, k - chi distributions and node histograms per solver,
/// plus per-instance series (greedy, bbq, oracle).
io::json summarize(const std::vector<ExperimentRow>& rows);
/// instance,n,greedy,bbq,oracle
void write_series_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

}  // namespace bbqmis::bench
