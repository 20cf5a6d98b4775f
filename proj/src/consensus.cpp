#include "richclub/consensus.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "richclub/errors.hpp"
#include "richclub/random.hpp"

namespace richclub {

std::string to_string(NullKind kind) {
  switch (kind) {
    case NullKind::ME1: return "ME1";
    case NullKind::ME2: return "ME2";
    case NullKind::ME3: return "ME3";
    case NullKind::NG: return "NG";
  }
  return "?";
}

NullKind null_kind_from_string(const std::string& s) {
  if (s == "ME1") return NullKind::ME1;
  if (s == "ME2") return NullKind::ME2;
  if (s == "ME3") return NullKind::ME3;
  if (s == "NG") return NullKind::NG;
  throw std::invalid_argument("unknown null model '" + s + "'");
}

BuiltModel build_maxent_model(const Graph& g, const Ranking& ranking, ModelTag tag,
                              const ModelRecipe& recipe, std::uint64_t seed) {
  auto k = ranked_degrees(g, ranking);
  if (tag == ModelTag::ME1) {
    return BuiltModel{LinkProbabilityModel(std::move(k), kplus_from_graph(g, ranking), tag), {}};
  }
  SearchConfig cfg;
  cfg.mode = kplus_mode_for(tag);
  cfg.direction = recipe.direction;
  cfg.seed = seed;
  cfg.stall_limit = recipe.stall_limit;
  cfg.max_proposals = recipe.max_proposals;
  if (cfg.stall_limit && !cfg.max_proposals) {
    cfg.max_proposals = std::max(*cfg.stall_limit, 5000 * k.size());
  }
  auto search = greedy_search(k, cfg);
  LinkProbabilityModel model(std::move(k), search.kplus, tag);
  return BuiltModel{std::move(model), std::move(search)};
}

PairEnsemble build_null(const Graph& g, const Ranking& ranking, NullKind kind,
                        const ModelRecipe& recipe, std::uint64_t seed) {
  switch (kind) {
    case NullKind::NG: return node_ensemble(NGModel(g));
    case NullKind::ME1: return node_ensemble(build_maxent_model(g, ranking, ModelTag::ME1, recipe, seed).model, ranking);
    case NullKind::ME2: return node_ensemble(build_maxent_model(g, ranking, ModelTag::ME2, recipe, seed).model, ranking);
    case NullKind::ME3: return node_ensemble(build_maxent_model(g, ranking, ModelTag::ME3, recipe, seed).model, ranking);
  }
  throw std::invalid_argument("unknown null kind");
}

PartitionResult run_pipeline(const Graph& g, const ModelRecipe& recipe, std::uint64_t seed) {
  const auto ranking = rank_nodes(g, RankPolicy::SeededRandom, seed);
  const auto first = build_null(g, ranking, recipe.null, recipe, derive_seed(seed, 1));
  if (recipe.second) {
    const auto second = build_null(g, ranking, *recipe.second, recipe, derive_seed(seed, 2));
    return recursive_partition(soft_modularity_matrix(first, second), recipe.partition);
  }
  return recursive_partition(standard_modularity_matrix(g, first), recipe.partition);
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t index) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(index));
}

std::vector<RunOutcome> randomized_rank_runs(const Graph& g, const ModelRecipe& recipe,
                                             std::size_t runs, std::uint64_t master_seed,
                                             std::size_t threads) {
  if (runs < 1) throw std::invalid_argument("run count must be >= 1");
  std::vector<RunOutcome> outcomes(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    outcomes[r].index = r;
    outcomes[r].seed = run_seed(master_seed, r);
  }

  auto work = [&](RunOutcome& out) {
    try {
      out.partition = run_pipeline(g, recipe, out.seed).partition;
    } catch (const InfeasibleNG& e) {
      out.error = e.what();
      out.error_kind = RunError::Infeasible;
    } catch (const InfeasibleConstraints& e) {
      out.error = e.what();
      out.error_kind = RunError::Infeasible;
    } catch (const SingularWeights& e) {
      out.error = e.what();
      out.error_kind = RunError::Infeasible;
    } catch (const NumericalFailure& e) {
      out.error = e.what();
      out.error_kind = RunError::Numerical;
    } catch (const std::exception& e) {
      out.error = e.what();
      out.error_kind = RunError::Other;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, runs);
  if (threads <= 1) {
    for (auto& out : outcomes) work(out);
    return outcomes;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t r = next++; r < runs; r = next++) work(outcomes[r]);
    });
  }
  for (auto& th : pool) th.join();
  return outcomes;
}

CooccurrenceMatrix cooccurrence(const std::vector<Partition>& partitions) {
  CooccurrenceMatrix cm;
  if (partitions.empty()) return cm;
  const std::size_t n = partitions.front().size();
  cm.node_count = n;
  cm.run_count = partitions.size();
  cm.counts.assign(n * n, 0);
  for (const auto& part : partitions) {
    if (part.size() != n) throw std::invalid_argument("partitions cover different node sets");
    for (const auto& members : part.communities()) {
      for (auto i : members) {
        for (auto j : members) ++cm.counts[i * n + j];
      }
    }
  }
  return cm;
}

std::vector<std::vector<std::size_t>> invariant_cores(const CooccurrenceMatrix& cm, const Graph& g,
                                                      std::optional<std::size_t> min_count) {
  if (cm.node_count != g.node_count()) throw std::invalid_argument("co-occurrence dimension mismatch");
  const std::size_t threshold = min_count.value_or(cm.run_count);
  const std::size_t n = cm.node_count;

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> touched(n, false);
  for (const auto& [a, b] : g.edges()) {
    if (cm(a, b) >= threshold && threshold > 0) {
      touched[a] = touched[b] = true;
      const auto ra = find(a);
      const auto rb = find(b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }

  std::vector<std::vector<std::size_t>> cores;
  std::vector<long> core_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!touched[i]) continue;
    const auto root = find(i);
    if (core_of[root] < 0) {
      core_of[root] = static_cast<long>(cores.size());
      cores.emplace_back();
    }
    cores[static_cast<std::size_t>(core_of[root])].push_back(i);
  }
  return cores;
}

}  // namespace richclub
