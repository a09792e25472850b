#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bbqmis/graph.hpp"
#include "bbqmis/mis.hpp"
#include "bbqmis/spectral.hpp"

namespace bbqmis {

/// Color classes in color order; every class is nonempty.
struct Coloring {
  std::vector<VertexSet> classes;

  std::size_t k() const { return classes.size(); }
};

/// Classes partition the vertices of g and each class is independent.
bool verify_coloring(const Graph& g, const Coloring& c);

/// Inherited classes followed by one singleton per remaining vertex.
Coloring worst_case_completion(const std::vector<VertexSet>& inherited, const Graph& subgraph);

struct ChromaticResult {
  int chi = 0;
  Coloring witness;
};

inline constexpr std::size_t kExactOracleLimit = 25;

/// DSATUR branch-and-bound. Hints only tighten the search; they must be
/// valid bounds (pass 0 to ignore).
ChromaticResult exact_chromatic(const Graph& g, int lb_hint = 0, int ub_hint = 0);

inline constexpr std::size_t kTheoremCheckLimit = 10;

/// Enumerates every optimal coloring of g and reports whether one of them
/// has a maximal independent set as a color class.
bool theorem1_check(const Graph& g);

enum class TerminatedBy { Optimality, NodeBudget };
std::string to_string(TerminatedBy t);

enum class Exploration { Priority, Fifo, Dfs, Gap };
std::string to_string(Exploration e);
Exploration exploration_from_string(const std::string& s);

struct TraceEntry {
  std::size_t node = 0;
  std::optional<std::size_t> parent;
  int depth = 0;
  long priority = 0;
  int lb = 0;
  int ub = 0;
  std::string action;
};

struct SolveReport {
  Coloring best;
  std::size_t nodes_explored = 0;
  std::size_t nodes_created = 0;
  std::map<std::string, std::size_t> nodes_pruned;
  std::size_t shots_consumed = 0;
  double wall_time = 0.0;
  TerminatedBy terminated_by = TerminatedBy::Optimality;
  /// Incumbent color count after each improvement, starting with the initial one.
  std::vector<std::size_t> incumbent_history;
  /// Color count of the first complete (leaf) coloring reached, if any.
  std::optional<std::size_t> first_leaf_k;
  std::size_t sampler_fallbacks = 0;
  std::vector<TraceEntry> trace;
};

/// Iterated MIS coloring: repeatedly colors the most frequent sampled
/// independent set (augmented to maximality) and removes it.
SolveReport greedy_it_mis(const Graph& g, const MisSampler& sampler, std::size_t shots, std::uint64_t seed);

struct BBConfig {
  /// Maximum number of explored (sampled) nodes; unset means unlimited.
  std::optional<std::size_t> node_budget = 50;
  std::size_t shots_per_node = 100;
  LbRounding lb_rounding = LbRounding::Floor;
  std::uint64_t seed = 0;
  Exploration exploration = Exploration::Priority;
  bool prune_non_improving = true;
  bool prune_redundant = true;
  /// Concurrent workers sharing the frontier.
  std::size_t workers = 1;
  bool record_trace = true;
};

/// Branch and bound over maximal independent sets drawn from the sampler.
SolveReport bbq_mis(const Graph& g, const MisSampler& sampler, const BBConfig& cfg = {});

}  // namespace bbqmis
