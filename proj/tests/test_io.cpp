#include "doctest.h"

#include "bbqmis/bench.hpp"
#include "bbqmis/io.hpp"

using namespace bbqmis;
using io::json;

TEST_SUITE("io") {

TEST_CASE("graph round trip") {
  const Graph g = unit_disk_graph({{0, 0}, {5, 0}, {10, 0}, {2, 4}}, 6.0);
  const json j = io::graph_to_json(g);
  CHECK(j["n"] == 4);
  CHECK(io::graph_from_json(j) == g);

  const Graph sub = induced_remove(Graph(5, {{0, 1}, {1, 4}, {3, 4}}), {0});
  const Graph back = io::graph_from_json(io::graph_to_json(sub));
  CHECK(back == sub);
  CHECK(back.labels() == std::vector<Label>{1, 2, 3, 4});
}

TEST_CASE("malformed graphs are rejected") {
  CHECK_THROWS(io::graph_from_json(json{{"n", 2}, {"edges", {{0, 5}}}}));
  CHECK_THROWS(io::graph_from_json(json{{"edges", json::array()}}));
}

TEST_CASE("histogram round trip") {
  const Graph p(3, {{0, 1}, {1, 2}});
  SampleHistogram h;
  h.add({0, 2}, 7);
  h.add({1}, 3);
  h.shots = 10;
  h.backend = "exact";
  h.seed = 5;
  const json j = io::histogram_to_json(h, p);
  CHECK(j["entries"]["101"] == 7);
  const auto back = io::histogram_from_json(j, p);
  CHECK(back.entries == h.entries);
  CHECK(back.shots == 10);
  CHECK(back.backend == "exact");
}

TEST_CASE("config round trips") {
  QaoaConfig q;
  q.penalty = 3.5;
  q.max_evals = 40;
  q.objective = QaoaObjective::IsingEnergy;
  q.drive_during_cost = false;
  const auto qb = io::qaoa_config_from_json(io::qaoa_config_to_json(q));
  CHECK(*qb.penalty == 3.5);
  CHECK(qb.max_evals == 40);
  CHECK(qb.objective == QaoaObjective::IsingEnergy);
  CHECK_FALSE(qb.drive_during_cost);
  CHECK(qb.device.max_amp == doctest::Approx(q.device.max_amp));
  CHECK_FALSE(io::qaoa_config_from_json(json{{"penalty", "auto"}}).penalty.has_value());

  BBConfig b;
  b.node_budget.reset();
  b.exploration = Exploration::Gap;
  b.lb_rounding = LbRounding::Ceil;
  b.workers = 3;
  const auto bb = io::bb_config_from_json(io::bb_config_to_json(b));
  CHECK_FALSE(bb.node_budget.has_value());
  CHECK(bb.exploration == Exploration::Gap);
  CHECK(bb.lb_rounding == LbRounding::Ceil);
  CHECK(bb.workers == 3);

  bench::ExperimentMatrix m;
  m.samplers = {"exact", "rgreedy"};
  m.seed = 8;
  const auto mb = bench::matrix_from_json(bench::matrix_to_json(m));
  CHECK(mb.samplers == m.samplers);
  CHECK(mb.seed == 8);

  bench::DatasetSpec d;
  d.radius_margin = 0.1;
  d.sizes = {{4, 2}};
  const auto db = bench::dataset_spec_from_json(bench::dataset_spec_to_json(d));
  CHECK(db.radius_margin == 0.1);
  CHECK(db.sizes.size() == 1);
  CHECK(db.sizes[0].count == 2);
}

TEST_CASE("report round trip keeps budget fields") {
  const Graph p(3, {{0, 1}, {1, 2}});
  const auto r = bbq_mis(p, ExactSampler());
  const json j = io::report_to_json(r);
  CHECK(j["k"] == 2);
  const auto back = io::report_from_json(j);
  CHECK(back.nodes_explored == r.nodes_explored);
  CHECK(back.best.classes == r.best.classes);
  CHECK(back.terminated_by == r.terminated_by);
}

TEST_CASE("bounds serialise absent values as null") {
  const json j = io::bounds_to_json(compute_bounds(Graph(3, {})));
  CHECK(j["lb_hoffman"].is_null());
  CHECK(j["combined_lb"] == 1);
}

}  // TEST_SUITE
