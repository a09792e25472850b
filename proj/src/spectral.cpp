#include "bbqmis/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bbqmis {

namespace {

// Bounds that land on an integer up to round-off must not lose a unit when
// floored (K_n gives exactly n analytically).
constexpr double kRoundingSlack = 1e-9;

int round_bound(double x, LbRounding rounding) {
  return rounding == LbRounding::Floor ? static_cast<int>(std::floor(x + kRoundingSlack))
                                       : static_cast<int>(std::ceil(x - kRoundingSlack));
}

}  // namespace

SymmetricMatrix adjacency_matrix(const Graph& g) {
  SymmetricMatrix a(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g.adjacent_local(i, j)) a(i, j) = 1.0;
  return a;
}

EigenDecomposition jacobi_eigen(SymmetricMatrix a, double tol, int max_sweeps) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));  // v[row][col]
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));

  for (int sweep = 0; sweep < max_sweeps && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= tol * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        // Rotation angle annihilating a(p,q) (Rutishauser's stable form).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

  EigenDecomposition out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t k : order) {
    out.values.push_back(a(k, k));
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v[i][k];
    out.vectors.push_back(std::move(col));
  }
  return out;
}

SpectrumSummary spectrum(const Graph& g, double zero_tol) {
  SpectrumSummary s;
  if (g.empty()) return s;
  s.eigenvalues = jacobi_eigen(adjacency_matrix(g)).values;

  double max_abs = 0.0;
  for (double l : s.eigenvalues) max_abs = std::max(max_abs, std::abs(l));
  // An edgeless graph has max_abs = 0; everything is then a zero eigenvalue.
  const double tol = zero_tol >= 0.0 ? zero_tol : 1e-8 * max_abs;
  for (double l : s.eigenvalues) {
    if (std::abs(l) <= tol)
      ++s.inertia.zero;
    else if (l > 0.0)
      ++s.inertia.positive;
    else
      ++s.inertia.negative;
  }
  return s;
}

LowerBounds lower_bounds(const SpectrumSummary& s, std::size_t n) {
  LowerBounds lb;
  if (s.eigenvalues.empty() || n == 0) return lb;
  const double l1 = s.eigenvalues.front();
  const double ln = s.eigenvalues.back();
  const double nd = static_cast<double>(n);

  if (s.inertia.negative > 0 && ln < 0.0) lb.hoffman = 1.0 - l1 / ln;
  if (s.inertia.positive > 0 && s.inertia.negative > 0) {
    const double pos = static_cast<double>(s.inertia.positive);
    const double neg = static_cast<double>(s.inertia.negative);
    lb.elphick_wocjan = 1.0 + std::max(pos / neg, neg / pos);
  }
  if (nd - l1 > 0.0) lb.edwards_elphick = nd / (nd - l1);
  return lb;
}

UpperBounds upper_bounds(const Graph& g) {
  auto info = degrees(g);
  UpperBounds ub;
  ub.greedy = static_cast<int>(info.max_degree) + 1;
  auto d = info.degrees;
  std::sort(d.begin(), d.end(), std::greater<>());
  for (std::size_t i = 0; i < d.size(); ++i)
    ub.welsh_powell = std::max(ub.welsh_powell, static_cast<int>(std::min(d[i] + 1, i + 1)));
  return ub;
}

CombinedBounds combine(const LowerBounds& lower, const UpperBounds& upper, bool has_edges, LbRounding rounding) {
  CombinedBounds c;
  c.lb = has_edges ? 2 : 1;
  for (const auto& b : {lower.hoffman, lower.elphick_wocjan, lower.edwards_elphick})
    if (b) c.lb = std::max(c.lb, round_bound(*b, rounding));
  c.ub = std::min(upper.greedy, upper.welsh_powell);
  return c;
}

BoundsReport compute_bounds(const Graph& g, LbRounding rounding) {
  BoundsReport r;
  if (g.empty()) {
    r.combined_lb = r.combined_ub = 0;
    return r;
  }
  r.upper = upper_bounds(g);
  if (!g.has_edges()) {
    r.combined_lb = r.combined_ub = 1;
    return r;
  }
  r.lower = lower_bounds(spectrum(g), g.size());
  auto c = combine(r.lower, r.upper, true, rounding);
  r.combined_lb = c.lb;
  r.combined_ub = c.ub;
  return r;
}

}  // namespace bbqmis
