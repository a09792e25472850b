#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bbqmis/graph.hpp"

namespace bbqmis {

/// Dense row-major symmetric matrix, used only for small adjacency spectra.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

SymmetricMatrix adjacency_matrix(const Graph& g);

struct EigenDecomposition {
  std::vector<double> values;                 // descending
  std::vector<std::vector<double>> vectors;   // vectors[k] pairs with values[k]
};

/// Cyclic Jacobi rotations. Converges quadratically; for n <= 64 the cost is
/// a handful of O(n^3) sweeps.
EigenDecomposition jacobi_eigen(SymmetricMatrix a, double tol = 1e-14, int max_sweeps = 100);

struct Inertia {
  std::size_t positive = 0;
  std::size_t zero = 0;
  std::size_t negative = 0;
};

struct SpectrumSummary {
  std::vector<double> eigenvalues;  // descending
  Inertia inertia;
};

/// Adjacency spectrum. A negative zero_tol selects the default,
/// 1e-8 * max|lambda|.
SpectrumSummary spectrum(const Graph& g, double zero_tol = -1.0);

struct LowerBounds {
  std::optional<double> hoffman;
  std::optional<double> elphick_wocjan;
  std::optional<double> edwards_elphick;
};

LowerBounds lower_bounds(const SpectrumSummary& s, std::size_t n);

struct UpperBounds {
  int greedy = 0;
  int welsh_powell = 0;
};

UpperBounds upper_bounds(const Graph& g);

enum class LbRounding { Floor, Ceil };

struct BoundsReport {
  LowerBounds lower;
  UpperBounds upper;
  int combined_lb = 1;
  int combined_ub = 1;
};

struct CombinedBounds {
  int lb = 1;
  int ub = 1;
};

CombinedBounds combine(const LowerBounds& lower, const UpperBounds& upper, bool has_edges,
                       LbRounding rounding = LbRounding::Floor);

/// Full bound computation for one graph. Graphs without edges short-circuit
/// to (1, 1), the empty graph to (0, 0).
BoundsReport compute_bounds(const Graph& g, LbRounding rounding = LbRounding::Floor);

}  // namespace bbqmis
