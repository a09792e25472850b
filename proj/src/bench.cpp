#include "bbqmis/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "bbqmis/rng.hpp"

namespace bbqmis::bench {

namespace fs = std::filesystem;
using io::json;

json dataset_spec_to_json(const DatasetSpec& s) {
  json sizes = json::array();
  for (const auto& sc : s.sizes) sizes.push_back({{"n", sc.n}, {"count", sc.count}});
  return {{"sizes", std::move(sizes)},
          {"side", s.side},
          {"radius", s.radius},
          {"min_separation", s.min_separation},
          {"radius_margin", s.radius_margin},
          {"seed", s.seed},
          {"max_attempts", s.max_attempts}};
}

DatasetSpec dataset_spec_from_json(const json& j) {
  DatasetSpec s;
  if (j.contains("sizes")) {
    s.sizes.clear();
    for (const auto& e : j.at("sizes")) s.sizes.push_back({e.at("n").get<std::size_t>(), e.at("count").get<std::size_t>()});
  }
  s.side = j.value("side", s.side);
  s.radius = j.value("radius", s.radius);
  s.min_separation = j.value("min_separation", s.min_separation);
  s.radius_margin = j.value("radius_margin", s.radius_margin);
  s.seed = j.value("seed", s.seed);
  s.max_attempts = j.value("max_attempts", s.max_attempts);
  return s;
}

namespace {

std::string instance_id(std::size_t n, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "udg_n%02zu_%03zu", n, index);
  return buf;
}

// One connected UDG on n points by rejection sampling.
Graph sample_udg(std::size_t n, const DatasetSpec& spec, Rng& rng, std::size_t& attempts) {
  std::uniform_real_distribution<double> coord(0.0, spec.side);
  const double lo = spec.radius / (1.0 + spec.radius_margin);
  const double hi = spec.radius * (1.0 + spec.radius_margin);
  for (;;) {
    std::vector<Point> pts;
    while (pts.size() < n) {
      if (++attempts > spec.max_attempts)
        throw InfeasibleGeometry("could not place " + std::to_string(n) + " connected points within " +
                                 std::to_string(spec.max_attempts) + " attempts");
      const Point p{coord(rng), coord(rng)};
      const bool clear = std::all_of(pts.begin(), pts.end(), [&](const Point& q) {
        const double d = distance(p, q);
        return d >= spec.min_separation && (d <= lo || d >= hi);
      });
      if (clear) pts.push_back(p);
    }
    Graph g = unit_disk_graph(pts, spec.radius);
    if (is_connected(g)) return g;
  }
}

}  // namespace

std::vector<Instance> generate_dataset(const DatasetSpec& spec) {
  if (!(spec.radius > 0.0 && spec.side > 0.0 && spec.min_separation >= 0.0 && spec.radius_margin >= 0.0))
    throw std::invalid_argument("dataset geometry must be positive");
  std::vector<Instance> out;
  for (const auto& sc : spec.sizes) {
    if (sc.n == 0 || sc.n > kMaxLabels) throw std::invalid_argument("dataset sizes must lie in 1..64");
    for (std::size_t i = 0; i < sc.count; ++i) {
      Rng rng(derive_seed(spec.seed, sc.n * 1000003ULL + i));
      std::size_t attempts = 0;
      try {
        out.push_back({instance_id(sc.n, i), sample_udg(sc.n, spec, rng, attempts)});
      } catch (const InfeasibleGeometry& e) {
        throw InfeasibleGeometry(std::string(e.what()) + " (n = " + std::to_string(sc.n) + ")");
      }
    }
  }
  return out;
}

void write_dataset(const fs::path& dir, const std::vector<Instance>& instances) {
  fs::create_directories(dir);
  for (const auto& inst : instances) io::write_json(dir / (inst.id + ".graph.json"), io::graph_to_json(inst.graph));
}

std::vector<Instance> read_dataset(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (e.is_regular_file() && name.size() > 11 && name.ends_with(".graph.json")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Instance> out;
  for (const auto& f : files) {
    auto name = f.filename().string();
    out.push_back({name.substr(0, name.size() - 11), io::graph_from_json(io::read_json(f))});
  }
  return out;
}

json matrix_to_json(const ExperimentMatrix& m) {
  return {{"solvers", m.solvers},
          {"samplers", m.samplers},
          {"bb", io::bb_config_to_json(m.bb)},
          {"qaoa", io::qaoa_config_to_json(m.qaoa)},
          {"greedy_shots", m.greedy_shots},
          {"seed", m.seed}};
}

ExperimentMatrix matrix_from_json(const json& j) {
  ExperimentMatrix m;
  if (j.contains("solvers")) m.solvers = j.at("solvers").get<std::vector<std::string>>();
  if (j.contains("samplers")) m.samplers = j.at("samplers").get<std::vector<std::string>>();
  if (j.contains("bb")) m.bb = io::bb_config_from_json(j.at("bb"));
  if (j.contains("qaoa")) m.qaoa = io::qaoa_config_from_json(j.at("qaoa"));
  m.greedy_shots = j.value("greedy_shots", m.greedy_shots);
  m.seed = j.value("seed", m.seed);
  m.bb.seed = m.seed;
  for (const auto& s : m.solvers)
    if (s != "greedy" && s != "bbq" && s != "exact") throw std::invalid_argument("unknown solver '" + s + "'");
  for (const auto& s : m.samplers)
    if (s != "exact" && s != "qaoa" && s != "rgreedy") throw std::invalid_argument("unknown sampler '" + s + "'");
  return m;
}

std::unique_ptr<MisSampler> make_sampler(const std::string& name, const QaoaConfig& qaoa) {
  if (name == "exact") return std::make_unique<ExactSampler>();
  if (name == "rgreedy") return std::make_unique<RandomGreedySampler>();
  if (name == "qaoa") return std::make_unique<QaoaSampler>(qaoa);
  throw std::invalid_argument("unknown sampler '" + name + "'");
}

std::string chi_cache_key(const Instance& inst) {
  std::uint64_t h = fingerprint(inst.graph);
  for (const auto& [a, b] : inst.graph.edges()) h = splitmix64(h ^ (static_cast<std::uint64_t>(a) << 32 | b));
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return inst.id + "#" + buf;
}

namespace {

struct Task {
  std::size_t instance;
  std::string solver;
  std::string sampler;
};

template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const std::vector<Instance>& dataset, const ExperimentMatrix& matrix,
                                          std::size_t parallel, ChiCache* cache) {
  if (dataset.empty()) throw std::invalid_argument("dataset is empty");
  parallel = std::max<std::size_t>(1, parallel);

  std::vector<int> chi(dataset.size(), -1);
  std::vector<std::string> keys(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    keys[i] = chi_cache_key(dataset[i]);
    if (cache)
      if (auto it = cache->find(keys[i]); it != cache->end()) chi[i] = it->second;
  }
  parallel_for(dataset.size(), parallel, [&](std::size_t i) {
    if (chi[i] < 0) chi[i] = exact_chromatic(dataset[i].graph).chi;
  });
  if (cache)
    for (std::size_t i = 0; i < dataset.size(); ++i) (*cache)[keys[i]] = chi[i];

  std::vector<Task> tasks;
  for (std::size_t i = 0; i < dataset.size(); ++i)
    for (const auto& solver : matrix.solvers)
      for (const auto& sampler : matrix.samplers) tasks.push_back({i, solver, sampler});

  // Instance-level parallelism takes the whole worker allowance.
  BBConfig bb = matrix.bb;
  bb.seed = matrix.seed;
  bb.record_trace = false;
  if (parallel > 1) bb.workers = 1;
  bb.workers = std::min(bb.workers, parallel);

  std::vector<ExperimentRow> rows(tasks.size());
  parallel_for(tasks.size(), parallel, [&](std::size_t t) {
    const Task& task = tasks[t];
    const Instance& inst = dataset[task.instance];
    ExperimentRow& row = rows[t];
    row.instance = inst.id;
    row.n = inst.graph.size();
    row.m = inst.graph.edge_count();
    row.solver = task.solver;
    row.sampler = task.sampler;
    row.chi = chi[task.instance];
    row.seed = matrix.seed;
    try {
      SolveReport report;
      if (task.solver == "exact") {
        const auto start = std::chrono::steady_clock::now();
        report.best = exact_chromatic(inst.graph).witness;
        report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      } else {
        const auto sampler = make_sampler(task.sampler, matrix.qaoa);
        if (task.solver == "greedy")
          report = greedy_it_mis(inst.graph, *sampler, matrix.greedy_shots, matrix.seed);
        else if (task.solver == "bbq")
          report = bbq_mis(inst.graph, *sampler, bb);
        else
          throw std::invalid_argument("unknown solver '" + task.solver + "'");
      }
      if (!verify_coloring(inst.graph, report.best)) throw std::logic_error("solver returned an infeasible coloring");
      if (static_cast<int>(report.best.k()) < row.chi) throw std::logic_error("coloring uses fewer colors than the oracle");
      row.k = static_cast<int>(report.best.k());
      row.nodes_explored = report.nodes_explored;
      row.shots = report.shots_consumed;
      row.wall_s = report.wall_time;
      row.terminated_by = to_string(report.terminated_by);
    } catch (const std::exception& e) {
      row.k = -1;
      row.terminated_by = "error";
      row.error = e.what();
    }
  });
  return rows;
}

ShotBudget shot_budget(std::size_t nodes, const QaoaConfig& cfg, double rate_hz) {
  if (!(rate_hz > 0.0)) throw std::invalid_argument("sampling rate must be positive");
  ShotBudget b;
  b.shots = nodes * (cfg.max_evals * cfg.eval_shots + cfg.final_shots);
  b.seconds = static_cast<double>(b.shots) / rate_hz;
  return b;
}

ShotBudget shot_budget(const SolveReport& report, const QaoaConfig& cfg, double rate_hz) {
  return shot_budget(report.nodes_explored, cfg, rate_hz);
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows, bool include_timing) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.6f", include_timing ? r.wall_s : 0.0);
    out << r.instance << ',' << r.n << ',' << r.m << ',' << r.solver << ',' << r.sampler << ',' << r.k << ',' << r.chi << ','
        << r.nodes_explored << ',' << r.shots << ',' << wall << ',' << r.terminated_by << ',' << r.seed << '\n';
  }
}

std::vector<ExperimentRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("unexpected CSV header");
  std::vector<ExperimentRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 12) throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields: " + line);
    ExperimentRow r;
    r.instance = f[0];
    r.n = std::stoul(f[1]);
    r.m = std::stoul(f[2]);
    r.solver = f[3];
    r.sampler = f[4];
    r.k = std::stoi(f[5]);
    r.chi = std::stoi(f[6]);
    r.nodes_explored = std::stoul(f[7]);
    r.shots = std::stoul(f[8]);
    r.wall_s = std::stod(f[9]);
    r.terminated_by = f[10];
    r.seed = std::stoull(f[11]);
    rows.push_back(std::move(r));
  }
  return rows;
}

json summarize(const std::vector<ExperimentRow>& rows) {
  struct Stats {
    std::size_t runs = 0;
    std::size_t optimal = 0;
    std::size_t failed = 0;
    int max_gap = 0;
    std::map<int, std::size_t> gaps;
    std::map<std::size_t, std::size_t> nodes;
  };
  std::map<std::string, Stats> by_solver;
  for (const auto& r : rows) {
    auto& s = by_solver[r.solver + "/" + r.sampler];
    ++s.runs;
    if (r.k < 0) {
      ++s.failed;
      continue;
    }
    const int gap = r.k - r.chi;
    s.optimal += gap == 0 ? 1 : 0;
    s.max_gap = std::max(s.max_gap, gap);
    ++s.gaps[gap];
    ++s.nodes[r.nodes_explored];
  }

  json solvers = json::object();
  for (const auto& [key, s] : by_solver) {
    json gaps = json::object();
    for (const auto& [g, c] : s.gaps) gaps[std::to_string(g)] = c;
    json nodes = json::object();
    for (const auto& [n, c] : s.nodes) nodes[std::to_string(n)] = c;
    const std::size_t ok = s.runs - s.failed;
    solvers[key] = {{"runs", s.runs},
                    {"failed", s.failed},
                    {"optimal", s.optimal},
                    {"worse_than_oracle", ok - s.optimal},
                    {"optimality_rate", ok == 0 ? 0.0 : static_cast<double>(s.optimal) / static_cast<double>(ok)},
                    {"max_gap", s.max_gap},
                    {"gap_histogram", std::move(gaps)},
                    {"nodes_explored_histogram", std::move(nodes)}};
  }

  // Greedy against BB on the same instance and sampler.
  std::map<std::pair<std::string, std::string>, std::pair<int, int>> pairs;
  for (const auto& r : rows) {
    auto& p = pairs.try_emplace({r.instance, r.sampler}, -1, -1).first->second;
    if (r.solver == "greedy") p.first = r.k;
    if (r.solver == "bbq") p.second = r.k;
  }
  std::size_t compared = 0;
  std::size_t greedy_worse = 0;
  std::size_t greedy_better = 0;
  int max_diff = 0;
  for (const auto& [key, p] : pairs) {
    if (p.first < 0 || p.second < 0) continue;
    ++compared;
    greedy_worse += p.first > p.second ? 1 : 0;
    greedy_better += p.first < p.second ? 1 : 0;
    max_diff = std::max(max_diff, p.first - p.second);
  }

  return {{"rows", rows.size()},
          {"solvers", std::move(solvers)},
          {"greedy_vs_bbq",
           {{"compared", compared}, {"greedy_worse", greedy_worse}, {"greedy_better", greedy_better}, {"max_difference", max_diff}}}};
}

void write_series_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  struct Series {
    std::size_t n = 0;
    int greedy = -1;
    int bbq = -1;
    int oracle = -1;
  };
  std::vector<std::string> order;
  std::map<std::string, Series> series;
  for (const auto& r : rows) {
    auto [it, inserted] = series.try_emplace(r.instance);
    if (inserted) order.push_back(r.instance);
    it->second.n = r.n;
    it->second.oracle = r.chi;
    if (r.solver == "greedy" && it->second.greedy < 0) it->second.greedy = r.k;
    if (r.solver == "bbq" && it->second.bbq < 0) it->second.bbq = r.k;
  }
  out << "instance,n,greedy,bbq,oracle\n";
  for (const auto& id : order) {
    const auto& s = series.at(id);
    out << id << ',' << s.n << ',' << s.greedy << ',' << s.bbq << ',' << s.oracle << '\n';
  }
}

}  // namespace bbqmis::bench
