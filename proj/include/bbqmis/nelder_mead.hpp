#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace bbqmis {

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  std::vector<double> clamp(std::vector<double> x) const;
};

struct NelderMeadOptions {
  std::size_t max_evals = 100;
  /// Stop once every vertex lies within this distance of the best one.
  double diameter_tol = 1e-4;
  /// Initial simplex vertex i perturbs coordinate i by this fraction.
  double relative_step = 0.1;
  /// Step used for coordinates that start at zero.
  double zero_step = 2.5e-4;
  std::optional<Box> bounds;
};

struct NelderMeadResult {
  std::vector<double> best_point;
  double best_value = 0.0;
  std::size_t evaluations = 0;
  /// Best value seen after each evaluation.
  std::vector<double> trace;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Downhill simplex with reflection 1, expansion 2, contraction 0.5 and
/// shrink 0.5. Points are clamped into the box before every evaluation.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> init, const NelderMeadOptions& opts = {});

}  // namespace bbqmis
