#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "bbqmis/coloring.hpp"
#include "bbqmis/rng.hpp"

namespace bbqmis {

namespace {

struct Node {
  Graph subgraph;
  std::vector<VertexSet> inherited;
  int depth = 0;
  int lb = 0;
  int ub = 0;
  long priority = 0;
  std::uint64_t fingerprint = 0;
  std::size_t id = 0;
  std::optional<std::size_t> parent;
};

Node make_node(Graph subgraph, std::vector<VertexSet> inherited, LbRounding rounding) {
  Node n;
  const auto bounds = compute_bounds(subgraph, rounding);
  n.depth = static_cast<int>(inherited.size());
  n.lb = n.depth + bounds.combined_lb;
  n.ub = bounds.combined_ub;
  n.priority = -static_cast<long>(n.ub) * static_cast<long>(subgraph.edge_count());
  n.fingerprint = fingerprint(subgraph);
  n.subgraph = std::move(subgraph);
  n.inherited = std::move(inherited);
  return n;
}

// Strict "explore a before b" for each policy; node ids break ties.
struct ExploreOrder {
  Exploration policy;

  bool operator()(const std::unique_ptr<Node>& a, const std::unique_ptr<Node>& b) const {
    switch (policy) {
      case Exploration::Priority:
        if (a->priority != b->priority) return a->priority > b->priority;
        return a->id < b->id;
      case Exploration::Fifo:
        return a->id < b->id;
      case Exploration::Dfs:
        if (a->depth != b->depth) return a->depth > b->depth;
        return a->id > b->id;
      case Exploration::Gap: {
        const int ga = a->depth + a->ub - a->lb;
        const int gb = b->depth + b->ub - b->lb;
        if (ga != gb) return ga < gb;
        return a->id < b->id;
      }
    }
    return a->id < b->id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const Graph& g, const MisSampler& sampler, const BBConfig& cfg)
      : sampler_(sampler), cfg_(cfg), frontier_(ExploreOrder{cfg.exploration}) {
    report_.best = worst_case_completion({}, g);
    report_.incumbent_history.push_back(report_.best.k());
    auto root = std::make_unique<Node>(make_node(g, {}, cfg.lb_rounding));
    seen_[root->fingerprint] = 0;
    report_.nodes_created = 1;
    record(*root, "root");
    admit(std::move(root));
  }

  SolveReport run() {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t workers = std::max<std::size_t>(1, cfg_.workers);
    if (workers == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t i = 0; i < workers; ++i) pool.emplace_back([this] { work(); });
    }
    if (failure_) std::rethrow_exception(failure_);
    report_.terminated_by = budget_hit_ ? TerminatedBy::NodeBudget : TerminatedBy::Optimality;
    report_.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(report_);
  }

 private:
  void work() {
    std::unique_lock lock(mutex_);
    for (;;) {
      wake_.wait(lock, [&] { return stop_ || !frontier_.empty() || active_ == 0; });
      if (stop_) return;
      if (frontier_.empty()) {
        stop_ = true;
        wake_.notify_all();
        return;
      }
      if (cfg_.node_budget && report_.nodes_explored >= *cfg_.node_budget) {
        budget_hit_ = true;
        stop_ = true;
        wake_.notify_all();
        return;
      }

      std::unique_ptr<Node> node = std::move(frontier_.extract(frontier_.begin()).value());
      if (cfg_.prune_non_improving && node->lb >= static_cast<int>(report_.best.k())) {
        ++report_.nodes_pruned["non_improving"];
        record(*node, "pruned_non_improving");
        continue;
      }
      ++report_.nodes_explored;
      ++active_;
      record(*node, "explored");
      lock.unlock();

      std::vector<std::unique_ptr<Node>> children;
      SampleHistogram hist;
      std::size_t unfeasible = 0;
      bool fallback = false;
      try {
        expand(*node, hist, children, unfeasible, fallback);
      } catch (...) {
        lock.lock();
        if (!failure_) failure_ = std::current_exception();
        stop_ = true;
        --active_;
        wake_.notify_all();
        return;
      }

      lock.lock();
      report_.shots_consumed += hist.shots_consumed;
      if (unfeasible > 0) report_.nodes_pruned["unfeasible"] += unfeasible;
      if (fallback) ++report_.sampler_fallbacks;
      for (auto& child : children) admit_child(std::move(child));
      --active_;
      wake_.notify_all();
    }
  }

  // Sampling and child construction; runs without the lock.
  void expand(const Node& node, SampleHistogram& hist, std::vector<std::unique_ptr<Node>>& children,
              std::size_t& unfeasible, bool& fallback) const {
    // Seeded by content, so a node samples identically whatever the worker count.
    const std::uint64_t seed = derive_seed(derive_seed(cfg_.seed, node.fingerprint), static_cast<std::uint64_t>(node.depth));
    hist = sampler_.sample(node.subgraph, cfg_.shots_per_node, seed);
    auto candidates = extract_candidates(hist, node.subgraph);
    unfeasible = hist.entries.size() - candidates.size();
    if (candidates.empty()) {
      fallback = true;
      const auto fb = RandomGreedySampler{}.sample(node.subgraph, 1, seed ^ 0xfa11bac4ULL);
      candidates.push_back(fb.entries.begin()->first);
    }
    children.reserve(candidates.size());
    for (auto mis : candidates) {
      auto inherited = node.inherited;
      inherited.push_back(mis);
      auto child = std::make_unique<Node>(make_node(induced_remove(node.subgraph, mis), std::move(inherited), cfg_.lb_rounding));
      child->parent = node.id;
      children.push_back(std::move(child));
    }
  }

  // Called with the lock held.
  void admit_child(std::unique_ptr<Node> child) {
    child->id = next_id_++;
    ++report_.nodes_created;
    if (cfg_.prune_redundant) {
      auto [it, inserted] = seen_.try_emplace(child->fingerprint, child->depth);
      if (!inserted) {
        // The same remaining subgraph reached with no more colors used.
        if (it->second <= child->depth) {
          ++report_.nodes_pruned["redundant"];
          record(*child, "pruned_redundant");
          return;
        }
        it->second = child->depth;
      }
    }
    admit(std::move(child));
  }

  void admit(std::unique_ptr<Node> node) {
    if (!node->subgraph.has_edges()) {
      Coloring c;
      c.classes = node->inherited;
      if (!node->subgraph.empty()) c.classes.push_back(node->subgraph.vertex_set());
      if (!report_.first_leaf_k) report_.first_leaf_k = c.k();
      offer(std::move(c));
      record(*node, "leaf");
      return;
    }
    if (static_cast<std::size_t>(node->depth) + node->subgraph.size() < report_.best.k())
      offer(worst_case_completion(node->inherited, node->subgraph));
    if (cfg_.prune_non_improving && node->lb >= static_cast<int>(report_.best.k())) {
      ++report_.nodes_pruned["non_improving"];
      record(*node, "pruned_non_improving");
      return;
    }
    record(*node, "queued");
    frontier_.insert(std::move(node));
  }

  void offer(Coloring c) {
    if (c.k() >= report_.best.k()) return;
    report_.best = std::move(c);
    report_.incumbent_history.push_back(report_.best.k());
  }

  void record(const Node& n, const char* action) {
    if (!cfg_.record_trace) return;
    report_.trace.push_back({n.id, n.parent, n.depth, n.priority, n.lb, n.ub, action});
  }

  const MisSampler& sampler_;
  BBConfig cfg_;
  SolveReport report_;
  std::set<std::unique_ptr<Node>, ExploreOrder> frontier_;
  std::exception_ptr failure_;
  std::unordered_map<std::uint64_t, int> seen_;
  std::size_t next_id_ = 1;
  std::size_t active_ = 0;
  bool stop_ = false;
  bool budget_hit_ = false;
  std::mutex mutex_;
  std::condition_variable wake_;
};

}  // namespace

SolveReport bbq_mis(const Graph& g, const MisSampler& sampler, const BBConfig& cfg) {
  if (g.empty()) throw std::invalid_argument("bbq_mis needs at least one vertex");
  if (cfg.node_budget && *cfg.node_budget == 0) throw std::invalid_argument("node budget must be positive");
  BranchAndBound bb(g, sampler, cfg);
  return bb.run();
}

}  // namespace bbqmis
