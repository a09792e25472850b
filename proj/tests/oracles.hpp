#pragma once

// Brute-force reference implementations and random instance generators shared
// by the unit and acceptance tests. Nothing here calls into the solvers.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "bbqmis/graph.hpp"

namespace oracle {

using bbqmis::Edge;
using bbqmis::Graph;
using bbqmis::Label;
using bbqmis::Point;

/// Local-index adjacency masks rebuilt from the edge list.
inline std::vector<std::uint64_t> adjacency(const Graph& g) {
  std::vector<std::uint64_t> adj(g.size(), 0);
  for (auto [a, b] : g.edges()) {
    const auto i = *g.local_index(a);
    const auto j = *g.local_index(b);
    adj[i] |= std::uint64_t{1} << j;
    adj[j] |= std::uint64_t{1} << i;
  }
  return adj;
}

inline bool independent_local(const std::vector<std::uint64_t>& adj, std::uint64_t s) {
  for (std::size_t i = 0; i < adj.size(); ++i)
    if (((s >> i) & 1U) && (adj[i] & s)) return false;
  return true;
}

inline std::uint64_t local_to_labels(const Graph& g, std::uint64_t s) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if ((s >> i) & 1U) out |= std::uint64_t{1} << g.label(i);
  return out;
}

/// Every maximal independent set by subset filtering, as label bitmasks, sorted.
inline std::vector<std::uint64_t> maximal_independent_sets(const Graph& g) {
  const auto adj = adjacency(g);
  const std::size_t n = g.size();
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    if (!independent_local(adj, s)) continue;
    bool maximal = true;
    for (std::size_t v = 0; v < n && maximal; ++v)
      if (!((s >> v) & 1U) && !(adj[v] & s)) maximal = false;
    if (maximal) out.push_back(local_to_labels(g, s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t independence_number(const Graph& g) {
  const auto adj = adjacency(g);
  std::size_t best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.size()); ++s)
    if (independent_local(adj, s)) best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(s)));
  return best;
}

/// Chromatic number by dynamic programming over vertex subsets: the fewest
/// independent sets covering each subset.
inline int chromatic_number(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) return 0;
  const auto adj = adjacency(g);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<char> indep(full + 1);
  for (std::uint64_t s = 0; s <= full; ++s) indep[s] = independent_local(adj, s);
  std::vector<int> best(full + 1, 1 << 20);
  best[0] = 0;
  for (std::uint64_t s = 1; s <= full; ++s) {
    const std::uint64_t low = s & (~s + 1);
    const std::uint64_t rest = s ^ low;
    for (std::uint64_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint64_t cls = sub | low;
      if (indep[cls]) best[s] = std::min(best[s], best[s ^ cls] + 1);
      if (sub == 0) break;
    }
  }
  return best[full];
}

inline Graph erdos_renyi(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Label i = 0; i < n; ++i)
    for (Label j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return Graph(n, edges);
}

/// Uniform points in a square, not necessarily connected.
inline Graph random_udg(std::size_t n, double side, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(0.0, side);
  std::vector<Point> pts;
  while (pts.size() < n) {
    const Point p{coord(rng), coord(rng)};
    const bool clash = std::any_of(pts.begin(), pts.end(), [&](const Point& q) { return bbqmis::distance(p, q) < 1e-6; });
    if (!clash) pts.push_back(p);
  }
  return bbqmis::unit_disk_graph(pts, radius);
}

/// Alternates unit-disk and Erdos-Renyi graphs with sizes in [lo, hi].
inline Graph mixed_graph(std::size_t index, std::size_t lo, std::size_t hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(lo, hi);
  const std::size_t n = size(rng);
  if (index % 2 == 0) {
    std::uniform_real_distribution<double> side(1.5, 4.0);
    return random_udg(n, side(rng), 1.0, rng);
  }
  std::uniform_real_distribution<double> p(0.1, 0.9);
  return erdos_renyi(n, p(rng), rng);
}

}  // namespace oracle
