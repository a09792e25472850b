#include "bbqmis/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bbqmis {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

VertexSet::VertexSet(std::initializer_list<Label> labels) {
  for (Label l : labels) insert(l);
}

VertexSet VertexSet::from_labels(const std::vector<Label>& labels) {
  VertexSet s;
  for (Label l : labels) s.insert(l);
  return s;
}

void VertexSet::insert(Label l) {
  if (l >= kMaxLabels) throw GraphError("label " + std::to_string(l) + " exceeds the 64-vertex limit");
  bits_ |= std::uint64_t{1} << l;
}

std::vector<Label> VertexSet::labels() const {
  std::vector<Label> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<Label>(std::countr_zero(b)));
  return out;
}

Graph::Graph(std::size_t n, const std::vector<Edge>& edges)
    : Graph([n] {
        std::vector<Label> l(n);
        std::iota(l.begin(), l.end(), Label{0});
        return l;
      }(),
            edges) {}

Graph::Graph(std::vector<Label> labels, const std::vector<Edge>& edges, std::optional<std::vector<Point>> coords)
    : labels_(std::move(labels)), coords_(std::move(coords)) {
  if (labels_.size() > kMaxLabels) throw GraphError("graphs are limited to 64 vertices");
  if (coords_ && coords_->size() != labels_.size()) throw GraphError("coordinate count does not match vertex count");

  // Keep vertices in ascending label order; permute coordinates alongside.
  std::vector<std::size_t> order(labels_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return labels_[a] < labels_[b]; });
  std::vector<Label> sorted(labels_.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = labels_[order[i]];
  if (coords_) {
    std::vector<Point> c(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) c[i] = (*coords_)[order[i]];
    coords_ = std::move(c);
  }
  labels_ = std::move(sorted);

  for (Label l : labels_) {
    if (vertex_set_.contains(l)) throw GraphError("duplicate label " + std::to_string(l));
    vertex_set_.insert(l);
  }

  adjacency_.assign(labels_.size(), 0);
  for (const auto& [a, b] : edges) {
    auto ia = local_index(a);
    auto ib = local_index(b);
    if (!ia || !ib) throw GraphError("edge references unknown label");
    if (*ia == *ib) throw GraphError("self-loops are not allowed");
    adjacency_[*ia] |= std::uint64_t{1} << *ib;
    adjacency_[*ib] |= std::uint64_t{1} << *ia;
  }
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (auto row : adjacency_) twice += static_cast<std::size_t>(std::popcount(row));
  return twice / 2;
}

bool Graph::has_edges() const {
  return std::any_of(adjacency_.begin(), adjacency_.end(), [](std::uint64_t r) { return r != 0; });
}

std::optional<std::size_t> Graph::local_index(Label l) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
  if (it == labels_.end() || *it != l) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

VertexSet Graph::neighbors(Label l) const {
  auto i = local_index(l);
  if (!i) throw GraphError("unknown label " + std::to_string(l));
  return to_labels(adjacency_[*i]);
}

bool Graph::adjacent(Label a, Label b) const {
  auto ia = local_index(a);
  auto ib = local_index(b);
  if (!ia || !ib) throw GraphError("unknown label");
  return adjacent_local(*ia, *ib);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (adjacent_local(i, j)) out.emplace_back(labels_[i], labels_[j]);
  return out;
}

const std::vector<Point>& Graph::coords() const {
  if (!coords_) throw GraphError("graph has no coordinates");
  return *coords_;
}

std::uint64_t Graph::to_local(VertexSet s) const {
  require_subset(s);
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (s.contains(labels_[i])) mask |= std::uint64_t{1} << i;
  return mask;
}

VertexSet Graph::to_labels(std::uint64_t local_mask) const {
  VertexSet s;
  for (std::uint64_t b = local_mask; b != 0; b &= b - 1) s.insert(labels_[static_cast<std::size_t>(std::countr_zero(b))]);
  return s;
}

bool Graph::udg_consistent(double radius) const {
  const auto& c = coords();
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (adjacent_local(i, j) != (distance(c[i], c[j]) < radius)) return false;
  return true;
}

void Graph::require_subset(VertexSet s) const {
  if (!s.subset_of(vertex_set_)) throw GraphError("vertex set contains labels that are not in the graph");
}

bool operator==(const Graph& a, const Graph& b) {
  return a.labels_ == b.labels_ && a.adjacency_ == b.adjacency_;
}

Graph unit_disk_graph(const std::vector<Point>& points, double radius) {
  if (!(radius > 0.0)) throw GraphError("radius must be positive");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = distance(points[i], points[j]);
      if (d == 0.0) throw GraphError("duplicate points " + std::to_string(i) + " and " + std::to_string(j));
      if (d < radius) edges.emplace_back(static_cast<Label>(i), static_cast<Label>(j));
    }
  }
  std::vector<Label> labels(points.size());
  std::iota(labels.begin(), labels.end(), Label{0});
  return Graph(std::move(labels), edges, points);
}

bool is_independent(const Graph& g, VertexSet s) {
  const std::uint64_t mask = g.to_local(s);
  for (std::uint64_t b = mask; b != 0; b &= b - 1)
    if ((g.adjacency_[static_cast<std::size_t>(std::countr_zero(b))] & mask) != 0) return false;
  return true;
}

bool is_maximal_independent(const Graph& g, VertexSet s) {
  if (!is_independent(g, s)) return false;
  const std::uint64_t mask = g.to_local(s);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if ((mask >> i) & 1U) continue;
    if ((g.adjacency_[i] & mask) == 0) return false;
  }
  return true;
}

Graph induced_remove(const Graph& g, VertexSet s) {
  g.require_subset(s);
  Graph out;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!s.contains(g.labels_[i])) keep.push_back(i);

  out.labels_.reserve(keep.size());
  out.adjacency_.assign(keep.size(), 0);
  if (g.coords_) out.coords_.emplace();
  for (std::size_t a = 0; a < keep.size(); ++a) {
    out.labels_.push_back(g.labels_[keep[a]]);
    if (g.coords_) out.coords_->push_back((*g.coords_)[keep[a]]);
    for (std::size_t b = 0; b < keep.size(); ++b)
      if (g.adjacent_local(keep[a], keep[b])) out.adjacency_[a] |= std::uint64_t{1} << b;
  }
  out.vertex_set_ = g.vertex_set_ - s;
  return out;
}

std::uint64_t fingerprint(const Graph& g) { return g.vertex_set().bits(); }

DegreeInfo degrees(const Graph& g) {
  DegreeInfo info;
  info.degrees.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    info.degrees[i] = static_cast<std::size_t>(std::popcount(g.local_neighbors(i)));
    info.max_degree = std::max(info.max_degree, info.degrees[i]);
  }
  return info;
}

bool is_connected(const Graph& g) {
  if (g.size() <= 1) return true;
  std::uint64_t seen = 1;
  std::uint64_t frontier = 1;
  while (frontier != 0) {
    std::uint64_t next = 0;
    for (std::uint64_t b = frontier; b != 0; b &= b - 1) next |= g.local_neighbors(static_cast<std::size_t>(std::countr_zero(b)));
    frontier = next & ~seen;
    seen |= next;
  }
  return std::popcount(seen) == static_cast<int>(g.size());
}

VertexSet augment_to_maximal(const Graph& g, VertexSet s) {
  std::uint64_t mask = g.to_local(s);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if ((mask >> i) & 1U) continue;
    if ((g.local_neighbors(i) & mask) == 0) mask |= std::uint64_t{1} << i;
  }
  return g.to_labels(mask);
}

}  // namespace bbqmis
