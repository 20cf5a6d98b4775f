#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "richclub/graph.hpp"

namespace richclub {

/// Newman-Girvan expected links e_ij = k_i k_j / (2L), node-indexed, e_ii = 0.
class NGModel {
 public:
  /// Throws InfeasibleNG unless k_max < sqrt(2L).
  explicit NGModel(const Graph& g);

  std::size_t size() const noexcept { return k_.size(); }
  double links() const noexcept { return links_; }
  std::span<const int> degrees() const noexcept { return k_; }
  double expected_links(std::size_t i, std::size_t j) const;

 private:
  std::vector<int> k_;
  double links_ = 0.0;
};

enum class RRVariant { RR1, RR2 };

std::string to_string(RRVariant v);

struct RRConfig {
  RRVariant variant = RRVariant::RR1;
  /// Double-edge swap proposals; 20 L when unset.
  std::optional<std::size_t> swap_attempts;
  std::uint64_t seed = 0;
};

struct RandomizedGraph {
  MultiGraph graph;
  std::size_t swaps_attempted = 0;
  std::size_t swaps_accepted = 0;
};

/// Degree-preserving double-edge swaps (a,b),(c,d) -> (a,d),(c,b). RR1 rejects
/// swaps creating self-loops or multi-edges; RR2 rejects self-loops only.
RandomizedGraph rr_randomize(const Graph& g, const RRConfig& config);

/// k^2 / (<k> N), the expected self-loop count of a degree-k node under
/// unrestricted stub matching.
double expected_self_loops(double k, double mean_degree, std::size_t n);

}  // namespace richclub
