#include "doctest.h"

#include <chrono>
#include <algorithm>
#include <map>
#include <set>

#include "richclub/consensus.hpp"
#include "richclub/errors.hpp"
#include "support.hpp"

using namespace richclub;

namespace {

std::vector<Partition> partitions_of(const std::vector<RunOutcome>& runs) {
  std::vector<Partition> out;
  for (const auto& r : runs) {
    REQUIRE_MESSAGE(r.ok(), r.error);
    out.push_back(*r.partition);
  }
  return out;
}

bool edge_connected(const Graph& g, const std::vector<std::size_t>& core) {
  const std::set<std::size_t> members(core.begin(), core.end());
  std::set<std::size_t> seen{core.front()};
  std::vector<std::size_t> stack{core.front()};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto nb : g.neighbors(v))
      if (members.count(nb) && seen.insert(nb).second) stack.push_back(nb);
  }
  return seen.size() == members.size();
}

}  // namespace

TEST_CASE("null kind parsing") {
  CHECK(null_kind_from_string("NG") == NullKind::NG);
  CHECK(to_string(NullKind::ME3) == "ME3");
  CHECK_THROWS_AS(null_kind_from_string("ME4"), std::invalid_argument);
}

TEST_CASE("co-occurrence counts by hand") {
  const std::vector<Partition> parts{make_partition({0, 0, 1, 1}), make_partition({0, 1, 1, 1}),
                                     make_partition({0, 0, 0, 1})};
  const auto cm = cooccurrence(parts);
  CHECK(cm.run_count == 3);
  for (std::size_t i = 0; i < 4; ++i) CHECK(cm(i, i) == 3);
  CHECK(cm(0, 1) == 2);
  CHECK(cm(1, 2) == 2);
  CHECK(cm(2, 3) == 2);
  CHECK(cm(0, 3) == 0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(cm(i, j) == cm(j, i));
  CHECK_THROWS_AS(cooccurrence({make_partition({0, 0}), make_partition({0, 0, 0})}), std::invalid_argument);
  CHECK(cooccurrence({}).node_count == 0);
}

TEST_CASE("invariant cores are edge-linked components of always-together pairs") {
  // path 0-1-2-3 plus 4-5; nodes 0,1,2 always together, 4 and 5 together twice out of 3
  const auto g = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {0, 2}});
  const std::vector<Partition> parts{make_partition({0, 0, 0, 1, 2, 2}), make_partition({0, 0, 0, 0, 1, 2}),
                                     make_partition({1, 1, 1, 0, 2, 2})};
  const auto cm = cooccurrence(parts);
  const auto cores = invariant_cores(cm, g);
  REQUIRE(cores.size() == 1);
  CHECK(cores[0] == std::vector<std::size_t>{0, 1, 2});
  const auto loose = invariant_cores(cm, g, 2);
  REQUIRE(loose.size() == 2);
  CHECK(loose[1] == std::vector<std::size_t>{4, 5});
  CHECK_THROWS_AS(invariant_cores(cm, testing::triangle()), std::invalid_argument);
}

TEST_CASE("run seeds and pipeline determinism") {
  CHECK(run_seed(1, 0) != run_seed(1, 1));
  CHECK(run_seed(1, 0) != run_seed(2, 0));
  const auto g = testing::karate();
  ModelRecipe recipe;
  const auto a = run_pipeline(g, recipe, 99);
  const auto b = run_pipeline(g, recipe, 99);
  CHECK(a.partition.assignment == b.partition.assignment);
}

TEST_CASE("karate ME1 consensus: invariants, reproducibility, thread independence") {
  const auto g = testing::karate();
  ModelRecipe recipe;
  const auto start = std::chrono::steady_clock::now();
  const auto runs = randomized_rank_runs(g, recipe, 100, 2024);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 60.0);
  const auto parts = partitions_of(runs);
  for (std::size_t r = 0; r < runs.size(); ++r) {
    CHECK(runs[r].index == r);
    CHECK(runs[r].seed == run_seed(2024, r));
  }
  const auto cm = cooccurrence(parts);
  CHECK(cm.counts == cooccurrence(partitions_of(randomized_rank_runs(g, recipe, 100, 2024))).counts);
  CHECK(cm.counts == cooccurrence(partitions_of(randomized_rank_runs(g, recipe, 100, 2024, 4))).counts);

  const auto cores = invariant_cores(cm, g);
  for (const auto& core : cores) {
    CHECK(core.size() >= 2);
    CHECK(edge_connected(g, core));
    for (auto i : core)
      for (auto j : core) CHECK(cm(i, j) == 100);
  }
}

TEST_CASE("doubling R keeps the first R runs") {
  const auto g = testing::karate();
  ModelRecipe recipe;
  const auto small = partitions_of(randomized_rank_runs(g, recipe, 10, 5));
  const auto big = partitions_of(randomized_rank_runs(g, recipe, 20, 5, 3));
  for (std::size_t r = 0; r < small.size(); ++r) CHECK(small[r].assignment == big[r].assignment);
  const auto cm_small = cooccurrence(small);
  const auto cm_big = cooccurrence(big);
  for (std::size_t i = 0; i < cm_small.counts.size(); ++i) CHECK(cm_big.counts[i] >= cm_small.counts[i]);
}

TEST_CASE("failed runs are reported, not thrown") {
  // NG is infeasible on karate
  ModelRecipe recipe;
  recipe.null = NullKind::NG;
  const auto runs = randomized_rank_runs(testing::karate(), recipe, 3, 0);
  for (const auto& r : runs) {
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.error.empty());
    CHECK(r.error_kind == RunError::Infeasible);
  }
  CHECK_THROWS_AS(randomized_rank_runs(testing::karate(), recipe, 0, 0), std::invalid_argument);
}

TEST_CASE("searched and soft recipes run end to end") {
  const auto g = testing::karate();
  ModelRecipe recipe;
  recipe.null = NullKind::ME2;
  recipe.stall_limit = 200;
  const auto a = run_pipeline(g, recipe, 3);
  CHECK(a.partition.size() == 34);

  recipe.null = NullKind::ME1;
  recipe.second = NullKind::ME3;
  const auto soft = run_pipeline(g, recipe, 3);
  CHECK(soft.partition.size() == 34);
  CHECK(soft.partition.assignment == run_pipeline(g, recipe, 3).partition.assignment);

  const auto built = build_maxent_model(g, rank_nodes(g), ModelTag::ME2, recipe, 1);
  REQUIRE(built.search);
  CHECK(built.search->proposals_used <= 5000 * 34);
  CHECK_FALSE(build_maxent_model(g, rank_nodes(g), ModelTag::ME1, recipe, 1).search.has_value());
}

namespace {

/// Components (size >= 2) of the graph restricted to within-community edges.
std::set<std::vector<std::size_t>> within_components(const Graph& g, const Partition& p) {
  std::vector<std::size_t> parent(g.node_count());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, v] : g.edges())
    if (p.assignment[u] == p.assignment[v]) parent[find(u)] = find(v);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < parent.size(); ++i) groups[find(i)].push_back(i);
  std::set<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups)
    if (members.size() >= 2) out.insert(members);
  return out;
}

std::set<std::vector<std::size_t>> as_set(std::vector<std::vector<std::size_t>> cores) {
  for (auto& c : cores) std::sort(c.begin(), c.end());
  return {cores.begin(), cores.end()};
}

}  // namespace

TEST_CASE("R = 1: the single run is the pipeline and cores are within-community components") {
  const auto g = testing::karate();
  ModelRecipe recipe;
  const auto runs = randomized_rank_runs(g, recipe, 1, 31);
  REQUIRE(runs.size() == 1);
  REQUIRE(runs[0].ok());
  CHECK(runs[0].partition->assignment == run_pipeline(g, recipe, run_seed(31, 0)).partition.assignment);
  const auto cm = cooccurrence(partitions_of(runs));
  CHECK(as_set(invariant_cores(cm, g)) == within_components(g, *runs[0].partition));
}

TEST_CASE("identical runs give counts of 0 or R") {
  // A simple graph always has a repeated degree, so identical runs are built directly.
  const auto g = testing::karate();
  const auto p = run_pipeline(g, ModelRecipe{}, 5).partition;
  const std::vector<Partition> ten(10, p);
  const auto cm = cooccurrence(ten);
  for (std::size_t i = 0; i < g.node_count(); ++i)
    for (std::size_t j = 0; j < g.node_count(); ++j) {
      if (i == j) continue;
      CHECK((cm(i, j) == 0 || cm(i, j) == 10));
      CHECK((cm(i, j) == 10) == (p.assignment[i] == p.assignment[j]));
    }
  CHECK(as_set(invariant_cores(cm, g)) == within_components(g, p));
}
