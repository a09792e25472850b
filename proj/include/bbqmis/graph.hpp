#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bbqmis {

/// Root graphs are limited to 64 vertices so that vertex sets and
/// fingerprints fit in a single machine word.
inline constexpr std::size_t kMaxLabels = 64;

using Label = std::uint32_t;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Set of vertices identified by their original (root graph) labels.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
  VertexSet(std::initializer_list<Label> labels);

  static VertexSet from_labels(const std::vector<Label>& labels);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(Label l) const { return l < kMaxLabels && ((bits_ >> l) & 1U) != 0; }

  void insert(Label l);
  void erase(Label l) { bits_ &= ~(std::uint64_t{1} << l); }

  constexpr bool subset_of(VertexSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(VertexSet other) const { return (bits_ & other.bits_) != 0; }

  std::vector<Label> labels() const;

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(VertexSet a, VertexSet b) = default;
  friend constexpr auto operator<=>(VertexSet a, VertexSet b) = default;

 private:
  std::uint64_t bits_ = 0;
};

using Edge = std::pair<Label, Label>;

/// Immutable undirected simple graph.
///
/// Vertices are stored at local indices 0..n-1 in ascending label order.
/// Labels are the indices of the root graph and survive induced_remove, so
/// vertex sets, colorings and fingerprints compose across subgraphs.
class Graph {
 public:
  Graph() = default;

  /// Graph on labels 0..n-1.
  Graph(std::size_t n, const std::vector<Edge>& edges);

  /// Graph on the given labels; edges are expressed in labels.
  Graph(std::vector<Label> labels, const std::vector<Edge>& edges,
        std::optional<std::vector<Point>> coords = std::nullopt);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t edge_count() const;
  bool has_edges() const;

  const std::vector<Label>& labels() const { return labels_; }
  Label label(std::size_t local) const { return labels_[local]; }
  VertexSet vertex_set() const { return vertex_set_; }

  /// Local index of a label, or nullopt when the label is not a vertex.
  std::optional<std::size_t> local_index(Label l) const;

  /// Neighbourhood of local vertex i as a bitmask over local indices.
  std::uint64_t local_neighbors(std::size_t i) const { return adjacency_[i]; }
  /// Neighbourhood of the vertex labelled l, as a set of labels.
  VertexSet neighbors(Label l) const;

  bool adjacent_local(std::size_t i, std::size_t j) const { return ((adjacency_[i] >> j) & 1U) != 0; }
  bool adjacent(Label a, Label b) const;

  std::vector<Edge> edges() const;

  bool has_coords() const { return coords_.has_value(); }
  const std::vector<Point>& coords() const;

  /// Converts between label sets and local-index bitmasks.
  std::uint64_t to_local(VertexSet s) const;
  VertexSet to_labels(std::uint64_t local_mask) const;

  /// True iff edges are exactly the pairs closer than radius.
  bool udg_consistent(double radius) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  void require_subset(VertexSet s) const;

  std::vector<Label> labels_;
  std::vector<std::uint64_t> adjacency_;
  std::optional<std::vector<Point>> coords_;
  VertexSet vertex_set_;

  friend Graph induced_remove(const Graph& g, VertexSet s);
  friend bool is_independent(const Graph& g, VertexSet s);
  friend bool is_maximal_independent(const Graph& g, VertexSet s);
};

/// Edge between i and j iff their distance is strictly below radius.
Graph unit_disk_graph(const std::vector<Point>& points, double radius);

bool is_independent(const Graph& g, VertexSet s);
bool is_maximal_independent(const Graph& g, VertexSet s);

/// Subgraph induced by the vertices of g not in s.
Graph induced_remove(const Graph& g, VertexSet s);

/// Bitmask of the labels present in g.
std::uint64_t fingerprint(const Graph& g);

struct DegreeInfo {
  std::vector<std::size_t> degrees;  // by local index
  std::size_t max_degree = 0;
};

DegreeInfo degrees(const Graph& g);

bool is_connected(const Graph& g);

/// Adds vertices of g (ascending label) to s while independence holds.
VertexSet augment_to_maximal(const Graph& g, VertexSet s);

}  // namespace bbqmis
