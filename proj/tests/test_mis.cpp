#include "doctest.h"

#include <random>

#include "bbqmis/mis.hpp"
#include "oracles.hpp"

using namespace bbqmis;

namespace {

Graph path3() { return Graph(3, {{0, 1}, {1, 2}}); }
Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
Graph cycle5() { return Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}); }

std::vector<std::uint64_t> as_bits(const std::vector<VertexSet>& v) {
  std::vector<std::uint64_t> out;
  for (auto s : v) out.push_back(s.bits());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("mis") {

TEST_CASE("enumeration on named graphs") {
  CHECK(as_bits(enumerate_mis(triangle())) == std::vector<std::uint64_t>{1, 2, 4});
  CHECK(enumerate_mis(path3()) == std::vector<VertexSet>{{0, 2}, {1}});
  CHECK(as_bits(enumerate_mis(cycle5())) == as_bits({{0, 2}, {0, 3}, {1, 3}, {1, 4}, {2, 4}}));
  CHECK(enumerate_mis(Graph()) == std::vector<VertexSet>{VertexSet{}});
  CHECK(enumerate_mis(Graph(4, {})) == std::vector<VertexSet>{{0, 1, 2, 3}});
}

TEST_CASE("enumeration order is size descending then bitmask") {
  const auto all = enumerate_mis(Graph(4, {{0, 1}, {0, 2}, {0, 3}}));
  REQUIRE(all.size() == 2);
  CHECK(all[0] == VertexSet{1, 2, 3});
  CHECK(all[1] == VertexSet{0});
}

TEST_CASE("property: enumeration matches subset filtering") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = oracle::mixed_graph(trial, 1, 11, rng);
    CHECK(as_bits(enumerate_mis(g)) == oracle::maximal_independent_sets(g));
  }
}

TEST_CASE("bitstrings") {
  const Graph p = path3();
  CHECK(to_bitstring(p, {0, 2}) == "101");
  CHECK(to_bitstring(p, {0}) == "001");
  CHECK(from_bitstring(p, "010") == VertexSet{1});
  const Graph sub({1, 4}, {});
  CHECK(to_bitstring(sub, {4}) == "10");
  CHECK(from_bitstring(sub, "01") == VertexSet{1});
  CHECK_THROWS(from_bitstring(p, "10"));
  CHECK_THROWS(from_bitstring(p, "1x1"));
}

TEST_CASE("exact sampler weights by size") {
  const auto h = ExactSampler().sample(path3(), 30, 4);
  CHECK(h.shots == 30);
  CHECK(h.backend == "exact");
  CHECK(h.entries.size() <= 2);
  for (const auto& [s, c] : h.entries) CHECK((s == VertexSet{0, 2} || s == VertexSet{1}));

  // Mean frequency of {0,2} over many seeds approaches 2/3.
  std::size_t big = 0;
  std::size_t total = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto hs = ExactSampler().sample(path3(), 30, seed);
    if (auto it = hs.entries.find({0, 2}); it != hs.entries.end()) big += it->second;
    total += 30;
  }
  CHECK(static_cast<double>(big) / static_cast<double>(total) == doctest::Approx(2.0 / 3.0).epsilon(0.03));

  const auto u = ExactSampler(MisWeighting::Uniform);
  std::size_t big_u = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    if (auto hs = u.sample(path3(), 30, seed); hs.entries.count({0, 2})) big_u += hs.entries.at({0, 2});
  CHECK(static_cast<double>(big_u) / static_cast<double>(total) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("exact sampler edge cases") {
  const auto h = ExactSampler().sample(Graph(1, {}), 17, 0);
  CHECK(h.entries.size() == 1);
  CHECK(h.entries.at({0}) == 17);
  const auto t = ExactSampler().sample(triangle(), 3, 9);
  for (const auto& [s, c] : t.entries) CHECK(s.size() == 1);
  CHECK_THROWS_AS(ExactSampler().sample(path3(), 0, 1), std::invalid_argument);
}

TEST_CASE("samplers are deterministic in the seed") {
  const Graph g = cycle5();
  CHECK(ExactSampler().sample(g, 100, 7).entries == ExactSampler().sample(g, 100, 7).entries);
  CHECK(RandomGreedySampler().sample(g, 100, 7).entries == RandomGreedySampler().sample(g, 100, 7).entries);
}

TEST_CASE("random greedy sampler returns maximal independent sets") {
  const auto e = RandomGreedySampler().sample(Graph(4, {}), 10, 1);
  CHECK(e.entries.size() == 1);
  CHECK(e.entries.at({0, 1, 2, 3}) == 10);

  const auto all = enumerate_mis(cycle5());
  const auto h = RandomGreedySampler().sample(cycle5(), 1000, 42);
  for (const auto& [s, c] : h.entries) CHECK(std::find(all.begin(), all.end(), s) != all.end());

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = oracle::mixed_graph(trial, 2, 12, rng);
    for (const auto& [s, c] : RandomGreedySampler().sample(g, 50, trial).entries) CHECK(is_maximal_independent(g, s));
  }
}

TEST_CASE("candidate extraction") {
  SampleHistogram h;
  h.add({0, 2}, 20);
  h.add({1}, 10);
  h.add({0, 1}, 5);
  CHECK(extract_candidates(h, path3()) == std::vector<VertexSet>{{0, 2}, {1}});

  SampleHistogram lone;
  lone.add({0}, 50);
  CHECK(extract_candidates(lone, path3()).empty());

  // ties break by bitmask
  SampleHistogram tie;
  tie.add({1}, 5);
  tie.add({0, 2}, 5);
  CHECK(extract_candidates(tie, path3()) == std::vector<VertexSet>{{1}, {0, 2}});
}

TEST_CASE("property: exact sampler output survives extraction") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = oracle::mixed_graph(trial, 1, 10, rng);
    const auto h = ExactSampler().sample(g, 200, trial);
    CHECK(extract_candidates(h, g).size() == h.entries.size());
  }
}

}  // TEST_SUITE
