#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "richclub/graph.hpp"

namespace richclub {

enum class Direction { Maximize, Minimize };

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

struct SearchConfig {
  KPlusMode mode = KPlusMode::ME2;
  Direction direction = Direction::Maximize;
  std::uint64_t seed = 0;
  /// Consecutive rejected proposals before stopping; 50 N when unset.
  std::optional<std::size_t> stall_limit;
  /// Hard cap on evaluated proposals; 5000 N when unset.
  std::optional<std::size_t> max_proposals;
};

struct SearchResult {
  KPlusSequence kplus;
  double entropy = 0.0;
  /// Entropy of the starting sequence followed by the entropy after each
  /// accepted move.
  std::vector<double> entropy_trace;
  std::size_t proposals_used = 0;
  std::size_t accepted_count = 0;
};

/// Upper bound on k+ per rank for `mode`. The top-ranked node is fixed at 0 and
/// the last-ranked node at its degree.
std::vector<int> kplus_upper_bounds(std::span<const int> k, KPlusMode mode);

/// Random k+ within the bounds summing to L whose weights are non-singular.
/// Throws InfeasibleConstraints if the bounds cannot reach L or no
/// non-singular sequence is found.
KPlusSequence random_feasible_kplus(std::span<const int> k, KPlusMode mode, std::uint64_t seed);

/// Greedy unit-exchange search over k+ optimising the ensemble entropy.
/// Starts from random_feasible_kplus(k, mode, seed) unless `start` is given.
SearchResult greedy_search(std::span<const int> k, const SearchConfig& config,
                           std::optional<KPlusSequence> start = std::nullopt);

}  // namespace richclub
