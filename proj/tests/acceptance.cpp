// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "bbqmis/bench.hpp"
#include "bbqmis/coloring.hpp"
#include "bbqmis/mis.hpp"
#include "bbqmis/qaoa.hpp"
#include "bbqmis/rydberg.hpp"
#include "bbqmis/spectral.hpp"
#include "oracles.hpp"

using namespace bbqmis;

namespace {

// Pinned thresholds.
constexpr std::size_t kDatasetSize = 120;
constexpr std::size_t kOptimalWithBudget = 118;
constexpr std::size_t kBudget = 50;
constexpr double kGreedyStrictFraction = 0.10;
constexpr std::size_t kSmallTreeNodes = 20;
constexpr double kSmallTreeFraction = 0.90;
constexpr std::size_t kSandwichGraphs = 500;
constexpr std::size_t kTheoremGraphs = 200;
constexpr std::size_t kEnumerationGraphs = 200;
constexpr double kRabiTolerance = 1e-9;
constexpr std::size_t kRabiPoints = 100;
constexpr double kNormDrift = 1e-6;
constexpr double kBlockadedP11 = 0.05;
constexpr double kFreeP11 = 0.5;
constexpr std::size_t kQaoaGraphs = 10;
constexpr std::size_t kQaoaMaximum = 7;
constexpr std::size_t kShotsAt50 = 255000;
constexpr double kRateHz = 5.0;
constexpr double kHoursLow = 2.0;
constexpr double kHoursHigh = 6.0;
constexpr std::size_t kPruneGraphs = 50;
constexpr std::uint64_t kSeed = 2024;
constexpr std::size_t kGreedyShots = 100;

struct Outcome {
  bool pass = false;
  std::string detail;
};

const std::vector<bench::Instance>& dataset() {
  static const auto ds = bench::generate_dataset(bench::DatasetSpec{});
  return ds;
}

const std::vector<int>& dataset_chi() {
  static const auto chi = [] {
    std::vector<int> out;
    for (const auto& inst : dataset()) out.push_back(exact_chromatic(inst.graph).chi);
    return out;
  }();
  return chi;
}

BBConfig bb_config(std::optional<std::size_t> budget, std::size_t workers = 1) {
  BBConfig cfg;
  cfg.node_budget = budget;
  cfg.seed = kSeed;
  cfg.workers = workers;
  cfg.record_trace = false;
  return cfg;
}

const std::vector<SolveReport>& budget_runs() {
  static const auto runs = [] {
    std::vector<SolveReport> out;
    for (const auto& inst : dataset()) out.push_back(bbq_mis(inst.graph, ExactSampler(), bb_config(kBudget)));
    return out;
  }();
  return runs;
}

Outcome optimality() {
  const auto& ds = dataset();
  std::size_t with_budget = 0;
  std::size_t unlimited = 0;
  bool feasible = true;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& r = budget_runs()[i];
    feasible = feasible && verify_coloring(ds[i].graph, r.best);
    with_budget += static_cast<int>(r.best.k()) == dataset_chi()[i] ? 1 : 0;
    const auto u = bbq_mis(ds[i].graph, ExactSampler(), bb_config(std::nullopt));
    feasible = feasible && verify_coloring(ds[i].graph, u.best);
    unlimited += static_cast<int>(u.best.k()) == dataset_chi()[i] ? 1 : 0;
  }
  std::ostringstream s;
  s << "budget " << kBudget << ": " << with_budget << "/" << ds.size() << " optimal (need " << kOptimalWithBudget
    << "); unlimited: " << unlimited << "/" << ds.size() << (feasible ? "" : "; INFEASIBLE coloring seen");
  return {ds.size() == kDatasetSize && with_budget >= kOptimalWithBudget && unlimited == ds.size() && feasible, s.str()};
}

Outcome greedy_gap() {
  const auto& ds = dataset();
  std::size_t strict = 0;
  std::size_t violations = 0;
  int max_gap = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto g = greedy_it_mis(ds[i].graph, ExactSampler(), kGreedyShots, kSeed);
    const int diff = static_cast<int>(g.best.k()) - static_cast<int>(budget_runs()[i].best.k());
    violations += diff < 0 ? 1 : 0;
    strict += diff > 0 ? 1 : 0;
    max_gap = std::max(max_gap, diff);
  }
  const auto need = static_cast<std::size_t>(std::ceil(kGreedyStrictFraction * static_cast<double>(ds.size())));
  std::ostringstream s;
  s << "greedy worse on " << strict << "/" << ds.size() << " (need " << need << "), greedy better on " << violations
    << ", max gap " << max_gap;
  return {violations == 0 && strict >= need, s.str()};
}

Outcome node_scale() {
  std::map<std::size_t, std::size_t> hist;
  std::size_t small = 0;
  for (const auto& r : budget_runs()) {
    ++hist[r.nodes_explored];
    small += r.nodes_explored <= kSmallTreeNodes ? 1 : 0;
  }
  const double frac = static_cast<double>(small) / static_cast<double>(budget_runs().size());
  std::ostringstream s;
  s << small << "/" << budget_runs().size() << " within " << kSmallTreeNodes << " nodes; histogram {";
  bool first = true;
  for (const auto& [nodes, count] : hist) {
    s << (first ? "" : ", ") << nodes << ":" << count;
    first = false;
  }
  s << "}";
  return {frac >= kSmallTreeFraction, s.str()};
}

Outcome sandwich() {
  std::mt19937_64 rng(kSeed + 4);
  std::size_t violations = 0;
  std::size_t udg = 0;
  for (std::size_t i = 0; i < kSandwichGraphs; ++i) {
    const Graph g = oracle::mixed_graph(i, 1, 12, rng);
    udg += g.has_coords() ? 1 : 0;
    const int chi = exact_chromatic(g).chi;
    const auto b = compute_bounds(g);
    violations += (b.combined_lb <= chi && chi <= b.combined_ub) ? 0 : 1;
  }
  std::ostringstream s;
  s << violations << " violations over " << kSandwichGraphs << " graphs (" << udg << " unit-disk)";
  return {violations == 0, s.str()};
}

Outcome theorem() {
  std::mt19937_64 rng(kSeed + 5);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < kTheoremGraphs; ++i) failures += theorem1_check(oracle::mixed_graph(i, 1, 8, rng)) ? 0 : 1;
  std::ostringstream s;
  s << failures << " failures over " << kTheoremGraphs << " graphs";
  return {failures == 0, s.str()};
}

Outcome enumeration() {
  std::mt19937_64 rng(kSeed + 6);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < kEnumerationGraphs; ++i) {
    const Graph g = oracle::mixed_graph(i, 1, 10, rng);
    std::vector<std::uint64_t> got;
    for (auto s : enumerate_mis(g)) got.push_back(s.bits());
    std::sort(got.begin(), got.end());
    mismatches += got == oracle::maximal_independent_sets(g) ? 0 : 1;
  }
  std::ostringstream s;
  s << mismatches << " mismatches over " << kEnumerationGraphs << " graphs";
  return {mismatches == 0, s.str()};
}

Outcome physics() {
  using namespace rydberg;
  const DeviceSpec spec;

  // (a) Rabi oscillation of one atom.
  const double omega = mhz_to_rad_per_us(7.0);
  const Register one({{0, 0}}, omega, spec.c6);
  double rabi_err = 0.0;
  for (std::size_t k = 1; k <= kRabiPoints; ++k) {
    const double t = spec.max_duration * static_cast<double>(k) / static_cast<double>(kRabiPoints);
    const auto psi = evolve(QuantumState::ground(1), one, PulseSchedule({{omega, 0.0, t}}, spec));
    rabi_err = std::max(rabi_err, std::abs(psi.probability(1) - std::pow(std::sin(omega * t / 2), 2)));
  }

  // (b) Norm drift over random legal schedules.
  std::mt19937_64 rng(kSeed + 7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double drift = 0.0;
  for (std::size_t n = 1; n <= kDenseQubitLimit; ++n) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({6.0 * static_cast<double>(i % 4) + unit(rng), 6.0 * static_cast<double>(i / 4) + unit(rng)});
    const Register reg(pts, spec.max_amp, spec.c6);
    std::vector<PulseSegment> segs;
    double left = spec.max_duration;
    for (int k = 0; k < 4; ++k) {
      const double d = left * unit(rng) * 0.6 + 1e-3;
      left -= d;
      segs.push_back({spec.max_amp * unit(rng), spec.max_det * (2 * unit(rng) - 1), d});
    }
    const auto psi = evolve(QuantumState::ground(n), reg, PulseSchedule(segs, spec));
    drift = std::max(drift, std::abs(psi.norm() - 1.0));
  }

  // (c) Two-atom blockade under a single-atom pi pulse.
  const double rb = std::pow(spec.c6 / spec.max_amp, 1.0 / 6.0);
  const PulseSchedule pi({{spec.max_amp, 0.0, std::numbers::pi / spec.max_amp}}, spec);
  const auto p11 = [&](double d) {
    const Register pair({{0, 0}, {d, 0}}, spec.max_amp, spec.c6);
    return evolve(QuantumState::ground(2), pair, pi).probability(3);
  };
  const double near = p11(0.5 * rb);
  const double far = p11(2.0 * rb);

  std::ostringstream s;
  s << "rabi max err " << rabi_err << "; norm drift " << drift << "; P11 at 0.5 r_b " << near << ", at 2 r_b " << far;
  return {rabi_err < kRabiTolerance && drift < kNormDrift && near < kBlockadedP11 && far > kFreeP11, s.str()};
}

Outcome qaoa_end_to_end() {
  // Ten connected unit-disk graphs with n <= 8 on a device-embeddable geometry.
  bench::DatasetSpec spec;
  spec.sizes = {{5, 2}, {6, 3}, {7, 3}, {8, 2}};
  spec.side = 16.0;
  spec.radius_margin = 0.1;
  spec.seed = 7;
  const auto graphs = bench::generate_dataset(spec);

  const QaoaSampler sampler;
  std::size_t maximum = 0;
  std::size_t nonempty = 0;
  std::ostringstream per;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const Graph& g = graphs[i].graph;
    const auto cands = extract_candidates(sampler.sample(g, sampler.config().final_shots, kSeed + i), g);
    const std::size_t alpha = oracle::independence_number(g);
    nonempty += cands.empty() ? 0 : 1;
    const bool hit = !cands.empty() && cands.front().size() == alpha;
    maximum += hit ? 1 : 0;
    per << (i ? " " : "") << (hit ? "+" : "-");
  }
  std::ostringstream s;
  s << "modal candidate maximum on " << maximum << "/" << graphs.size() << " (need " << kQaoaMaximum << "), nonempty on "
    << nonempty << "/" << graphs.size() << " [" << per.str() << "]";
  return {graphs.size() == kQaoaGraphs && maximum >= kQaoaMaximum && nonempty == graphs.size(), s.str()};
}

Outcome shot_budget_arithmetic() {
  const QaoaConfig cfg;
  const auto b50 = bench::shot_budget(50, cfg, kRateHz);
  const double h8 = bench::shot_budget(8, cfg, kRateHz).seconds / 3600.0;
  const double h20 = bench::shot_budget(20, cfg, kRateHz).seconds / 3600.0;
  std::ostringstream s;
  s << "50 nodes -> " << b50.shots << " shots (" << b50.seconds / 3600.0 << " h); 8 nodes " << h8 << " h; 20 nodes " << h20
    << " h";
  return {b50.shots == kShotsAt50 && h8 >= kHoursLow && h8 <= kHoursHigh && h20 >= kHoursLow && h20 <= kHoursHigh, s.str()};
}

Outcome parallel_correctness() {
  const auto& ds = dataset();
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto k1 = budget_runs()[i].best.k();
    for (std::size_t p : {4u, 8u}) mismatches += bbq_mis(ds[i].graph, ExactSampler(), bb_config(kBudget, p)).best.k() == k1 ? 0 : 1;
  }

  // Single-worker runs end to end: results CSV and full reports with traces.
  bench::ExperimentMatrix matrix;
  matrix.bb = bb_config(kBudget);
  matrix.seed = kSeed;
  const auto csv = [&] {
    std::ostringstream out;
    bench::write_csv(out, bench::run_experiment(ds, matrix, 1), false);
    return out.str();
  };
  const bool csv_same = csv() == csv();
  const auto reports = [&] {
    std::string all;
    for (const auto& inst : ds) {
      BBConfig cfg = bb_config(kBudget);
      cfg.record_trace = true;
      auto r = bbq_mis(inst.graph, ExactSampler(), cfg);
      r.wall_time = 0.0;
      all += io::report_to_json(r).dump();
    }
    return all;
  };
  const bool reports_same = reports() == reports();

  std::ostringstream s;
  s << mismatches << " k mismatches across P in {1,4,8}; P=1 csv " << (csv_same ? "identical" : "DIFFERS") << ", reports "
    << (reports_same ? "identical" : "DIFFER");
  return {mismatches == 0 && csv_same && reports_same, s.str()};
}

Outcome pruning_soundness() {
  std::mt19937_64 rng(kSeed + 11);
  std::size_t k_changed = 0;
  std::size_t fewer_nodes = 0;
  std::size_t explored_pruned = 0;
  std::size_t explored_plain = 0;
  for (std::size_t i = 0; i < kPruneGraphs; ++i) {
    const Graph g = oracle::mixed_graph(i, 2, 10, rng);
    BBConfig pruned = bb_config(std::nullopt);
    BBConfig plain = pruned;
    plain.prune_non_improving = false;
    plain.prune_redundant = false;
    const auto a = bbq_mis(g, ExactSampler(), pruned);
    const auto b = bbq_mis(g, ExactSampler(), plain);
    k_changed += a.best.k() == b.best.k() ? 0 : 1;
    fewer_nodes += b.nodes_explored >= a.nodes_explored ? 0 : 1;
    explored_pruned += a.nodes_explored;
    explored_plain += b.nodes_explored;
  }
  std::ostringstream s;
  s << k_changed << " k changes, " << fewer_nodes << " instances where unpruned explored fewer; nodes " << explored_pruned
    << " pruned vs " << explored_plain << " unpruned";
  return {k_changed == 0 && fewer_nodes == 0, s.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 optimality on the unit-disk dataset", optimality},
      {"2 greedy never beats branch and bound", greedy_gap},
      {"3 small search trees", node_scale},
      {"4 bound sandwich", sandwich},
      {"5 optimal coloring with a maximal class", theorem},
      {"6 maximal set enumeration", enumeration},
      {"7 emulator physics", physics},
      {"8 qaoa sampler finds maximum sets", qaoa_end_to_end},
      {"9 shot budget", shot_budget_arithmetic},
      {"10 parallel and deterministic runs", parallel_correctness},
      {"11 pruning soundness", pruning_soundness},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] C%s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
