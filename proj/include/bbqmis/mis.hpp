#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bbqmis/graph.hpp"

namespace bbqmis {

/// Measured bitstrings with multiplicities. Keys are label sets of the
/// graph the histogram was sampled on.
struct SampleHistogram {
  std::map<VertexSet, std::size_t> entries;
  std::size_t shots = 0;
  std::string backend;
  std::uint64_t seed = 0;
  std::size_t shots_requested = 0;
  /// Device shots spent to produce this histogram, including any
  /// optimisation loop (equals shots for classical backends).
  std::size_t shots_consumed = 0;

  void add(VertexSet s, std::size_t count = 1);
  /// Entries ordered by count descending, ties by bitmask ascending.
  std::vector<std::pair<VertexSet, std::size_t>> by_frequency() const;
};

/// Bitstring over the graph's labels, most significant character = highest label.
std::string to_bitstring(const Graph& g, VertexSet s);
VertexSet from_bitstring(const Graph& g, const std::string& bits);

/// Source of maximal-independent-set samples. Implementations must be
/// deterministic in (graph, shots, seed) and safe to call concurrently.
class MisSampler {
 public:
  virtual ~MisSampler() = default;
  virtual SampleHistogram sample(const Graph& g, std::size_t shots, std::uint64_t seed) const = 0;
  virtual std::string name() const = 0;
};

/// All maximal independent sets, ordered by size descending then bitmask
/// ascending. The empty graph has the single empty set.
std::vector<VertexSet> enumerate_mis(const Graph& g);

enum class MisWeighting { BySize, Uniform };

/// Multinomial draws over the complete list of maximal independent sets.
class ExactSampler final : public MisSampler {
 public:
  explicit ExactSampler(MisWeighting weighting = MisWeighting::BySize) : weighting_(weighting) {}
  SampleHistogram sample(const Graph& g, std::size_t shots, std::uint64_t seed) const override;
  std::string name() const override { return "exact"; }

 private:
  MisWeighting weighting_;
};

/// One random-permutation greedy maximal independent set per shot.
class RandomGreedySampler final : public MisSampler {
 public:
  SampleHistogram sample(const Graph& g, std::size_t shots, std::uint64_t seed) const override;
  std::string name() const override { return "rgreedy"; }
};

/// Distinct maximal independent sets of g found in h, by count descending
/// then bitmask ascending. Anything else is discarded.
std::vector<VertexSet> extract_candidates(const SampleHistogram& h, const Graph& g);

}  // namespace bbqmis
