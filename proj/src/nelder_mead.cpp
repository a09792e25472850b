#include "bbqmis/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bbqmis {

std::vector<double> Box::clamp(std::vector<double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  return x;
}

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Vertex {
  std::vector<double> x;
  double f = 0.0;
};

class BudgetExhausted {};

class Evaluator {
 public:
  Evaluator(const Objective& f, const NelderMeadOptions& opts, NelderMeadResult& result)
      : f_(f), opts_(opts), result_(result) {}

  Vertex operator()(std::vector<double> x) {
    if (result_.evaluations >= opts_.max_evals) throw BudgetExhausted{};
    if (opts_.bounds) x = opts_.bounds->clamp(std::move(x));
    const double v = f_(x);
    ++result_.evaluations;
    if (result_.trace.empty() || v < result_.best_value) {
      result_.best_value = v;
      result_.best_point = x;
    }
    result_.trace.push_back(result_.best_value);
    return {std::move(x), v};
  }

 private:
  const Objective& f_;
  const NelderMeadOptions& opts_;
  NelderMeadResult& result_;
};

std::vector<double> affine(const std::vector<double>& c, const std::vector<double>& p, double t) {
  // c + t * (p - c)
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] + t * (p[i] - c[i]);
  return out;
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> init, const NelderMeadOptions& opts) {
  const std::size_t k = init.size();
  if (k == 0) throw std::invalid_argument("Nelder-Mead needs at least one parameter");
  if (opts.bounds && (opts.bounds->lower.size() != k || opts.bounds->upper.size() != k))
    throw std::invalid_argument("bounds dimension mismatch");

  NelderMeadResult result;
  Evaluator eval(f, opts, result);
  try {
    std::vector<Vertex> simplex;
    simplex.push_back(eval(init));
    for (std::size_t i = 0; i < k; ++i) {
      auto x = init;
      x[i] = x[i] != 0.0 ? x[i] * (1.0 + opts.relative_step) : opts.zero_step;
      if (opts.bounds && x[i] > opts.bounds->upper[i]) x[i] = init[i] * (1.0 - opts.relative_step);
      simplex.push_back(eval(std::move(x)));
    }

    for (;;) {
      std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

      double diameter = 0.0;
      for (std::size_t v = 1; v <= k; ++v) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < k; ++i) d2 += std::pow(simplex[v].x[i] - simplex[0].x[i], 2);
        diameter = std::max(diameter, std::sqrt(d2));
      }
      if (diameter < opts.diameter_tol) break;

      std::vector<double> centroid(k, 0.0);
      for (std::size_t v = 0; v < k; ++v)
        for (std::size_t i = 0; i < k; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(k);

      Vertex& worst = simplex[k];
      const Vertex reflected = eval(affine(centroid, worst.x, -kReflect));
      if (reflected.f < simplex[0].f) {
        Vertex expanded = eval(affine(centroid, worst.x, -kExpand));
        worst = expanded.f < reflected.f ? std::move(expanded) : reflected;
        continue;
      }
      if (reflected.f < simplex[k - 1].f) {
        worst = reflected;
        continue;
      }
      bool shrink = false;
      if (reflected.f < worst.f) {
        Vertex outside = eval(affine(centroid, reflected.x, kContract));
        if (outside.f <= reflected.f)
          worst = std::move(outside);
        else
          shrink = true;
      } else {
        Vertex inside = eval(affine(centroid, worst.x, kContract));
        if (inside.f < worst.f)
          worst = std::move(inside);
        else
          shrink = true;
      }
      if (shrink)
        for (std::size_t v = 1; v <= k; ++v) simplex[v] = eval(affine(simplex[0].x, simplex[v].x, kShrink));
    }
  } catch (const BudgetExhausted&) {
  }
  return result;
}

}  // namespace bbqmis
