#include "bbqmis/coloring.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <stdexcept>

#include "bbqmis/rng.hpp"

namespace bbqmis {

bool verify_coloring(const Graph& g, const Coloring& c) {
  VertexSet covered;
  for (auto cls : c.classes) {
    if (cls.empty() || cls.intersects(covered) || !cls.subset_of(g.vertex_set())) return false;
    if (!is_independent(g, cls)) return false;
    covered = covered | cls;
  }
  return covered == g.vertex_set();
}

Coloring worst_case_completion(const std::vector<VertexSet>& inherited, const Graph& subgraph) {
  Coloring c;
  VertexSet seen;
  for (auto cls : inherited) {
    if (cls.intersects(seen) || cls.intersects(subgraph.vertex_set()))
      throw std::logic_error("inherited classes overlap each other or the subgraph");
    seen = seen | cls;
    c.classes.push_back(cls);
  }
  for (Label l : subgraph.labels()) c.classes.push_back(VertexSet{l});
  return c;
}

namespace {

// Local-index DSATUR search. Colors are bitmasks over local indices.
class DsaturSearch {
 public:
  DsaturSearch(const Graph& g, int lb, int ub) : g_(g), n_(g.size()), lb_(lb), best_k_(ub) {}

  void run(std::vector<std::uint64_t> initial) {
    best_ = std::move(initial);
    best_k_ = std::min<int>(best_k_, static_cast<int>(best_.size()));
    if (best_k_ <= lb_) return;
    std::vector<std::uint64_t> classes;
    search(classes, 0);
  }

  const std::vector<std::uint64_t>& best() const { return best_; }

 private:
  void search(std::vector<std::uint64_t>& classes, std::uint64_t colored) {
    if (best_k_ <= lb_) return;
    if (std::popcount(colored) == static_cast<int>(n_)) {
      if (static_cast<int>(classes.size()) < best_k_) {
        best_k_ = static_cast<int>(classes.size());
        best_ = classes;
      }
      return;
    }
    // Max saturation, ties by degree among uncolored vertices.
    std::size_t pick = n_;
    int best_sat = -1;
    int best_deg = -1;
    for (std::size_t v = 0; v < n_; ++v) {
      if ((colored >> v) & 1U) continue;
      const std::uint64_t nb = g_.local_neighbors(v);
      int sat = 0;
      for (auto cls : classes) sat += (cls & nb) != 0 ? 1 : 0;
      const int deg = std::popcount(nb & ~colored);
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        pick = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    const std::uint64_t bit = std::uint64_t{1} << pick;
    const std::uint64_t nb = g_.local_neighbors(pick);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if ((classes[c] & nb) != 0) continue;
      classes[c] |= bit;
      search(classes, colored | bit);
      classes[c] &= ~bit;
      if (best_k_ <= lb_) return;
    }
    if (static_cast<int>(classes.size()) + 1 < best_k_) {
      classes.push_back(bit);
      search(classes, colored | bit);
      classes.pop_back();
    }
  }

  const Graph& g_;
  std::size_t n_;
  int lb_;
  int best_k_;
  std::vector<std::uint64_t> best_;
};

std::vector<std::uint64_t> greedy_dsatur(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint64_t> classes;
  std::uint64_t colored = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    int best_sat = -1;
    int best_deg = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if ((colored >> v) & 1U) continue;
      int sat = 0;
      for (auto cls : classes) sat += (cls & g.local_neighbors(v)) != 0 ? 1 : 0;
      const int deg = std::popcount(g.local_neighbors(v) & ~colored);
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        pick = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    const std::uint64_t bit = std::uint64_t{1} << pick;
    auto it = std::find_if(classes.begin(), classes.end(), [&](std::uint64_t c) { return (c & g.local_neighbors(pick)) == 0; });
    if (it == classes.end())
      classes.push_back(bit);
    else
      *it |= bit;
    colored |= bit;
  }
  return classes;
}

// Size of a greedily grown clique: a cheap valid lower bound.
int greedy_clique(const Graph& g) {
  int best = g.empty() ? 0 : 1;
  for (std::size_t start = 0; start < g.size(); ++start) {
    std::uint64_t cand = g.local_neighbors(start);
    int size = 1;
    while (cand != 0) {
      std::size_t pick = 0;
      int deg = -1;
      for (std::uint64_t b = cand; b != 0; b &= b - 1) {
        const auto v = static_cast<std::size_t>(std::countr_zero(b));
        const int d = std::popcount(g.local_neighbors(v) & cand);
        if (d > deg) {
          deg = d;
          pick = v;
        }
      }
      ++size;
      cand &= g.local_neighbors(pick);
    }
    best = std::max(best, size);
  }
  return best;
}

Coloring to_coloring(const Graph& g, const std::vector<std::uint64_t>& local_classes) {
  Coloring c;
  for (auto m : local_classes)
    if (m != 0) c.classes.push_back(g.to_labels(m));
  return c;
}

}  // namespace

ChromaticResult exact_chromatic(const Graph& g, int lb_hint, int ub_hint) {
  if (g.size() > kExactOracleLimit)
    throw std::invalid_argument("exact oracle is limited to " + std::to_string(kExactOracleLimit) + " vertices");
  if (g.empty()) return {0, {}};
  const int lb = std::max(lb_hint, greedy_clique(g));
  const int ub = ub_hint > 0 ? ub_hint + 1 : static_cast<int>(g.size()) + 1;
  DsaturSearch search(g, lb, ub);
  search.run(greedy_dsatur(g));
  ChromaticResult r;
  r.witness = to_coloring(g, search.best());
  r.chi = static_cast<int>(r.witness.k());
  return r;
}

bool theorem1_check(const Graph& g) {
  if (g.size() > kTheoremCheckLimit)
    throw std::invalid_argument("theorem check is limited to " + std::to_string(kTheoremCheckLimit) + " vertices");
  if (g.empty()) return true;
  const int chi = exact_chromatic(g).chi;
  const std::size_t n = g.size();

  // Restricted-growth enumeration of partitions into at most chi
  // independent classes; every complete one is an optimal coloring.
  std::vector<std::uint64_t> classes;
  std::function<bool(std::size_t)> rec = [&](std::size_t v) -> bool {
    if (v == n) {
      for (auto m : classes)
        if (is_maximal_independent(g, g.to_labels(m))) return true;
      return false;
    }
    const std::uint64_t bit = std::uint64_t{1} << v;
    // Indexed access: deeper levels push onto `classes`.
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if ((classes[c] & g.local_neighbors(v)) != 0) continue;
      classes[c] |= bit;
      const bool found = rec(v + 1);
      classes[c] &= ~bit;
      if (found) return true;
    }
    if (static_cast<int>(classes.size()) < chi) {
      classes.push_back(bit);
      const bool found = rec(v + 1);
      classes.pop_back();
      if (found) return true;
    }
    return false;
  };
  return rec(0);
}

std::string to_string(TerminatedBy t) { return t == TerminatedBy::Optimality ? "optimality" : "node_budget"; }

std::string to_string(Exploration e) {
  switch (e) {
    case Exploration::Priority: return "priority";
    case Exploration::Fifo: return "fifo";
    case Exploration::Dfs: return "dfs";
    case Exploration::Gap: return "gap";
  }
  return "priority";
}

Exploration exploration_from_string(const std::string& s) {
  if (s == "priority") return Exploration::Priority;
  if (s == "fifo") return Exploration::Fifo;
  if (s == "dfs") return Exploration::Dfs;
  if (s == "gap") return Exploration::Gap;
  throw std::invalid_argument("unknown exploration policy '" + s + "'");
}

SolveReport greedy_it_mis(const Graph& g, const MisSampler& sampler, std::size_t shots, std::uint64_t seed) {
  if (g.empty()) throw std::invalid_argument("greedy_it_mis needs at least one vertex");
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  Graph rest = g;
  std::uint64_t iteration = 0;
  while (!rest.empty()) {
    if (!rest.has_edges()) {
      report.best.classes.push_back(rest.vertex_set());
      break;
    }
    const auto hist = sampler.sample(rest, shots, derive_seed(seed, iteration));
    ++report.nodes_explored;
    report.shots_consumed += hist.shots_consumed;

    std::optional<VertexSet> chosen;
    for (const auto& [s, count] : hist.by_frequency()) {
      if (s.subset_of(rest.vertex_set()) && is_independent(rest, s) && !s.empty()) {
        chosen = augment_to_maximal(rest, s);
        break;
      }
    }
    if (!chosen) {
      ++report.sampler_fallbacks;
      const auto fb = RandomGreedySampler{}.sample(rest, 1, derive_seed(seed, iteration ^ 0xfa11bac4ULL));
      chosen = fb.entries.begin()->first;
    }
    report.best.classes.push_back(*chosen);
    rest = induced_remove(rest, *chosen);
    ++iteration;
  }
  report.incumbent_history.push_back(report.best.k());
  report.first_leaf_k = report.best.k();
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace bbqmis
