#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "richclub/graph.hpp"

namespace richclub {

enum class ModelTag { ME1, ME2, ME3 };

std::string to_string(ModelTag tag);
ModelTag model_tag_from_string(const std::string& s);
KPlusMode kplus_mode_for(ModelTag tag);

/// Recursive weights w(m) and the running sums of F(n) = w(n)(k_n - k+_n).
///
/// Stored zero-based: w[r] for ranks r = 0..N-2 (w[0] = 1), f[r] = F at rank r
/// for the same ranks, and g[j] = sum_{n<j} f[n] for j = 0..N-1. The weight of
/// the last-ranked node never enters the link probabilities and is not stored.
struct WeightSequence {
  std::vector<double> w;
  std::vector<double> f;
  std::vector<double> g;
};

/// Throws SingularWeights(m) (one-based m) when a recursion denominator is
/// not positive, and std::invalid_argument when (k, kp) violates the k+
/// invariants or contains a zero degree.
WeightSequence compute_weights(std::span<const int> k, const KPlusSequence& kp);

/// Maximal-entropy ensemble for a fixed (k, k+), evaluated in rank space.
///
/// p(i, j) for i < j is F(i)/G(j) * k+_j / L. Nothing is materialised beyond
/// the O(N) weight arrays; rows are computed on demand.
class LinkProbabilityModel {
 public:
  LinkProbabilityModel(std::vector<int> k, KPlusSequence kp, ModelTag tag);

  static LinkProbabilityModel from_graph(const Graph& g, const Ranking& ranking);

  std::size_t size() const noexcept { return k_.size(); }
  double links() const noexcept { return links_; }
  ModelTag tag() const noexcept { return tag_; }
  std::span<const int> degrees() const noexcept { return k_; }
  const KPlusSequence& kplus() const noexcept { return kp_; }
  const WeightSequence& weights() const noexcept { return weights_; }

  /// Throws DomainError when i == j.
  double probability(std::size_t i, std::size_t j) const;
  double expected_links(std::size_t i, std::size_t j) const { return links_ * probability(i, j); }
  /// L p (1 - p), unclamped.
  double variance(std::size_t i, std::size_t j) const;

  /// Writes p(i, j) for every j into `out` (out[i] = 0). out.size() == size().
  void row(std::size_t i, std::span<double> out) const;

 private:
  std::vector<int> k_;
  KPlusSequence kp_;
  ModelTag tag_;
  double links_ = 0.0;
  WeightSequence weights_;
};

struct ConstraintResiduals {
  double degree = 0.0;  ///< max_r |sum_j L p(r,j) - k_r|
  double kplus = 0.0;   ///< max_r |sum_{j<r} L p(r,j) - k+_r|
  std::size_t multi_edge_pairs = 0;  ///< pairs with L p > 1

  double max() const noexcept { return degree > kplus ? degree : kplus; }
};

ConstraintResiduals verify_soft_constraints(const LinkProbabilityModel& model);

/// -2 sum_{i<j} p log p by direct double sum; 0 log 0 = 0.
double entropy_naive(const LinkProbabilityModel& model);

/// Same entropy via the F/G/A/B factorisation in O(N) after the weights.
double entropy_fast(std::span<const int> k, const KPlusSequence& kp);
double entropy_fast(std::span<const int> k, std::span<const int> kplus,
                    const WeightSequence& weights);

/// L independent pair draws from {p(i,j)}_{i<j}; rank-space edge multiset.
std::vector<Edge> sample_network(const LinkProbabilityModel& model, std::uint64_t seed);

}  // namespace richclub
