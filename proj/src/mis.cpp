#include "bbqmis/mis.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "bbqmis/rng.hpp"

namespace bbqmis {

void SampleHistogram::add(VertexSet s, std::size_t count) {
  entries[s] += count;
  shots += count;
}

std::vector<std::pair<VertexSet, std::size_t>> SampleHistogram::by_frequency() const {
  std::vector<std::pair<VertexSet, std::size_t>> out(entries.begin(), entries.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

std::string to_bitstring(const Graph& g, VertexSet s) {
  const std::uint64_t local = g.to_local(s);
  std::string bits(g.size(), '0');
  for (std::size_t i = 0; i < g.size(); ++i)
    if ((local >> i) & 1U) bits[g.size() - 1 - i] = '1';
  return bits;
}

VertexSet from_bitstring(const Graph& g, const std::string& bits) {
  if (bits.size() != g.size()) throw std::invalid_argument("bitstring length does not match graph size");
  std::uint64_t local = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const char c = bits[bits.size() - 1 - i];
    if (c == '1')
      local |= std::uint64_t{1} << i;
    else if (c != '0')
      throw std::invalid_argument("bitstring must contain only 0 and 1");
  }
  return g.to_labels(local);
}

namespace {

// Bron-Kerbosch with Tomita pivoting on the complement graph: maximal
// cliques of the complement are the maximal independent sets of g.
void bron_kerbosch(const std::vector<std::uint64_t>& comp, std::uint64_t r, std::uint64_t p, std::uint64_t x,
                   std::vector<std::uint64_t>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  std::uint64_t pivot_nbrs = 0;
  int best = -1;
  for (std::uint64_t b = p | x; b != 0; b &= b - 1) {
    const auto u = static_cast<std::size_t>(std::countr_zero(b));
    const int c = std::popcount(p & comp[u]);
    if (c > best) {
      best = c;
      pivot_nbrs = comp[u];
    }
  }
  for (std::uint64_t b = p & ~pivot_nbrs; b != 0; b &= b - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(b));
    const std::uint64_t bit = std::uint64_t{1} << v;
    bron_kerbosch(comp, r | bit, p & comp[v], x & comp[v], out);
    p &= ~bit;
    x |= bit;
  }
}

void require_shots(std::size_t shots) {
  if (shots == 0) throw std::invalid_argument("shots must be at least 1");
}

}  // namespace

std::vector<VertexSet> enumerate_mis(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) return {VertexSet{}};
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> comp(n);
  for (std::size_t i = 0; i < n; ++i) comp[i] = all & ~g.local_neighbors(i) & ~(std::uint64_t{1} << i);

  std::vector<std::uint64_t> local;
  bron_kerbosch(comp, 0, all, 0, local);

  std::vector<VertexSet> out;
  out.reserve(local.size());
  for (auto m : local) out.push_back(g.to_labels(m));
  std::sort(out.begin(), out.end(), [](VertexSet a, VertexSet b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.bits() < b.bits();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SampleHistogram ExactSampler::sample(const Graph& g, std::size_t shots, std::uint64_t seed) const {
  require_shots(shots);
  const auto sets = enumerate_mis(g);
  std::vector<double> weights;
  weights.reserve(sets.size());
  for (auto s : sets) weights.push_back(weighting_ == MisWeighting::BySize ? static_cast<double>(s.size()) : 1.0);
  // Only K0 produces a zero-weight set under size weighting.
  if (std::accumulate(weights.begin(), weights.end(), 0.0) == 0.0) std::fill(weights.begin(), weights.end(), 1.0);

  SampleHistogram h;
  h.backend = name();
  h.seed = seed;
  h.shots_requested = shots;
  Rng rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  for (std::size_t i = 0; i < shots; ++i) h.add(sets[pick(rng)]);
  h.shots_consumed = shots;
  return h;
}

SampleHistogram RandomGreedySampler::sample(const Graph& g, std::size_t shots, std::uint64_t seed) const {
  require_shots(shots);
  SampleHistogram h;
  h.backend = name();
  h.seed = seed;
  h.shots_requested = shots;
  Rng rng(seed);
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < shots; ++i) {
    std::shuffle(order.begin(), order.end(), rng);
    std::uint64_t chosen = 0;
    for (std::size_t v : order)
      if ((g.local_neighbors(v) & chosen) == 0) chosen |= std::uint64_t{1} << v;
    h.add(g.to_labels(chosen));
  }
  h.shots_consumed = shots;
  return h;
}

std::vector<VertexSet> extract_candidates(const SampleHistogram& h, const Graph& g) {
  std::vector<VertexSet> out;
  for (const auto& [s, count] : h.by_frequency()) {
    if (!s.subset_of(g.vertex_set())) throw std::invalid_argument("histogram was not sampled on this graph");
    if (is_maximal_independent(g, s)) out.push_back(s);
  }
  return out;
}

}  // namespace bbqmis
