#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "richclub/communities.hpp"
#include "richclub/graph.hpp"
#include "richclub/kplus_search.hpp"

namespace richclub {

enum class NullKind { ME1, ME2, ME3, NG };

std::string to_string(NullKind kind);
NullKind null_kind_from_string(const std::string& s);

/// How a single run turns a ranking into a partition.
struct ModelRecipe {
  NullKind null = NullKind::ME1;
  /// When set, the run uses the soft modularity of (null, second).
  std::optional<NullKind> second;
  Direction direction = Direction::Maximize;
  std::optional<std::size_t> stall_limit;
  std::optional<std::size_t> max_proposals;
  PartitionOptions partition;
};

struct BuiltModel {
  LinkProbabilityModel model;
  std::optional<SearchResult> search;  ///< set for ME2 / ME3
};

/// ME1 uses the observed k+; ME2 / ME3 run greedy_search with `seed`.
BuiltModel build_maxent_model(const Graph& g, const Ranking& ranking, ModelTag tag,
                              const ModelRecipe& recipe, std::uint64_t seed);

/// Node-indexed ensemble for any null kind.
PairEnsemble build_null(const Graph& g, const Ranking& ranking, NullKind kind,
                        const ModelRecipe& recipe, std::uint64_t seed);

/// One pipeline: seeded ranking, k+ (observed or searched), ensemble,
/// modularity matrix, recursive partition.
PartitionResult run_pipeline(const Graph& g, const ModelRecipe& recipe, std::uint64_t seed);

enum class RunError { None, Infeasible, Numerical, Other };

struct RunOutcome {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::optional<Partition> partition;
  std::string error;  ///< non-empty when the run failed
  RunError error_kind = RunError::None;

  bool ok() const noexcept { return partition.has_value(); }
};

/// Seed used by run `index` of a batch started from `master_seed`.
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t index);

/// R independent runs; outcomes are ordered by run index whatever the thread
/// count. threads = 0 uses the hardware concurrency.
std::vector<RunOutcome> randomized_rank_runs(const Graph& g, const ModelRecipe& recipe,
                                             std::size_t runs, std::uint64_t master_seed,
                                             std::size_t threads = 1);

struct CooccurrenceMatrix {
  std::size_t node_count = 0;
  std::size_t run_count = 0;
  std::vector<std::uint32_t> counts;  ///< row-major node_count x node_count

  std::uint32_t operator()(std::size_t i, std::size_t j) const { return counts[i * node_count + j]; }
};

/// Throws std::invalid_argument if the partitions cover different node counts.
CooccurrenceMatrix cooccurrence(const std::vector<Partition>& partitions);

/// Connected components (size >= 2) of the graph whose edges are the links of
/// `g` with co-occurrence >= min_count (run_count when unset).
std::vector<std::vector<std::size_t>> invariant_cores(const CooccurrenceMatrix& cm, const Graph& g,
                                                      std::optional<std::size_t> min_count = {});

}  // namespace richclub
