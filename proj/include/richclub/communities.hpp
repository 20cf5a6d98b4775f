#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "richclub/graph.hpp"
#include "richclub/maxent.hpp"
#include "richclub/null_models.hpp"

namespace richclub {

/// Node-indexed view of an ensemble: pair probabilities p(i, j) plus L.
struct PairEnsemble {
  std::size_t node_count = 0;
  double links = 0.0;
  std::function<double(std::size_t, std::size_t)> probability;
  std::string tag;

  double expected_links(std::size_t i, std::size_t j) const { return links * probability(i, j); }
};

/// Maps a rank-space model onto node indices through `ranking`.
PairEnsemble node_ensemble(const LinkProbabilityModel& model, const Ranking& ranking);
/// p = k_i k_j / (2 L^2), so that L p is the Newman-Girvan expectation.
PairEnsemble node_ensemble(const NGModel& model);

enum class ModularityKind { Standard, Soft };

struct ModularityMatrix {
  Eigen::MatrixXd values;
  ModularityKind kind = ModularityKind::Standard;
  /// Soft matrices only: pairs whose p fell outside [0, 1] and was clamped
  /// inside the variance term.
  std::size_t clamped_pairs = 0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(values.rows()); }
};

/// M_ij = a_ij - e_ij (symmetrised), zero diagonal. Throws
/// std::invalid_argument on a node-count mismatch.
ModularityMatrix standard_modularity_matrix(const Graph& g, const PairEnsemble& null);

/// M_ij = (e1_ij - e2_ij) / sqrt(s1_ij + s2_ij) with s = L p (1 - p), p clamped
/// to [0, 1]; entries with zero combined variance are 0.
ModularityMatrix soft_modularity_matrix(const PairEnsemble& first, const PairEnsemble& second);

struct Partition {
  std::vector<std::size_t> assignment;
  std::size_t community_count = 0;

  std::size_t size() const noexcept { return assignment.size(); }
  std::vector<std::vector<std::size_t>> communities() const;
};

/// Relabels community ids by first appearance so they are contiguous from 0.
Partition make_partition(std::vector<std::size_t> assignment);

/// Sum of M_ij over ordered same-community pairs (diagonal contributes 0).
double modularity_value(const ModularityMatrix& m, const Partition& part);

struct SpectralOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 100000;
  /// Eigenvalues at or below eigen_epsilon * max(1, shift) count as zero.
  double eigen_epsilon = 1e-8;
  /// On non-convergence, retry with a dense symmetric eigensolver before
  /// giving up.
  bool dense_fallback = true;
};

struct Bipartition {
  bool divisible = false;
  std::vector<std::size_t> positive;  ///< members with positive eigenvector sign
  std::vector<std::size_t> negative;
  double eigenvalue = 0.0;
  double q_contribution = 0.0;  ///< change of Q (ordered pairs) caused by the split
  std::size_t iterations = 0;
  double residual = 0.0;
  bool used_dense_fallback = false;
};

/// Leading eigenvector of the generalised restricted matrix
/// B_ij = M_ij - delta_ij sum_{l in subset} M_il by shifted power iteration.
/// Throws NumericalFailure on non-convergence.
Bipartition spectral_bipartition(const ModularityMatrix& m, std::span<const std::size_t> subset,
                                 const SpectralOptions& options = {});

/// Q change of splitting `subset` by `signs` (+1/-1 per subset member).
double split_contribution(const ModularityMatrix& m, std::span<const std::size_t> subset,
                          std::span<const int> signs);

struct Dendrogram {
  struct Node {
    std::vector<std::size_t> members;
    int left = -1;   ///< positive side
    int right = -1;  ///< negative side
    double eigenvalue = 0.0;
    double q_contribution = 0.0;

    bool is_leaf() const noexcept { return left < 0; }
  };
  std::vector<Node> nodes;  ///< nodes[0] is the root
};

struct PartitionOptions {
  /// Accept only splits with positive Q contribution.
  bool strict = false;
  SpectralOptions spectral;
};

struct PartitionResult {
  Dendrogram dendrogram;
  Partition partition;
  double q_initial = 0.0;             ///< all nodes in one community
  std::vector<double> q_after_split;  ///< running Q after each accepted split
  double q_final = 0.0;
  double q_best = 0.0;                ///< max over q_initial and q_after_split
};

/// Splits every part until it is indivisible. Communities are numbered by a
/// pre-order walk of the dendrogram, positive side first.
PartitionResult recursive_partition(const ModularityMatrix& m, const PartitionOptions& options = {});

}  // namespace richclub
