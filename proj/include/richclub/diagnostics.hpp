#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "richclub/graph.hpp"
#include "richclub/maxent.hpp"
#include "richclub/null_models.hpp"

namespace richclub {

/// Scalar series keyed by degree (or rank), x strictly increasing.
struct DiagnosticsCurve {
  std::vector<std::pair<double, double>> points;
  std::string label;   ///< quantity, e.g. "knn", "ipr", "cv"
  std::string source;  ///< "DATA", "ME1", "NG", ...

  std::size_t size() const noexcept { return points.size(); }
};

/// Average nearest-neighbour degree of the data, averaged over nodes of equal
/// degree. Isolated nodes are skipped with a warning.
DiagnosticsCurve knn_data(const Graph& g);
/// Same for an edge multiset; repeated edges count with multiplicity.
DiagnosticsCurve knn_data(const MultiGraph& g, std::string source);

/// <k_nn(k)> = (1/N_k) sum_i (1/k) sum_j L p_ij k_j [k_i = k].
DiagnosticsCurve knn_ensemble(const LinkProbabilityModel& model);
DiagnosticsCurve knn_ensemble(const NGModel& model);

/// <k^2>/<k> over all nodes. Throws DomainError if every node is isolated.
double uncorrelated_knn(const Graph& g);
double uncorrelated_knn(std::span<const int> degrees);

/// sqrt(1/<k_i> - sum p^2 / (L (sum p)^2)) for rank i. Throws DomainError on a
/// zero expected degree.
double coefficient_of_variation(const LinkProbabilityModel& model, std::size_t i);

/// (sum_j p_ij)^2 / sum_j p_ij^2, the effective number of contributing terms.
double inverse_participation(const LinkProbabilityModel& model, std::size_t i);

/// Per-degree means of the two quantities above.
DiagnosticsCurve cv_curve(const LinkProbabilityModel& model);
DiagnosticsCurve ipr_curve(const LinkProbabilityModel& model);

/// First degree whose value departs from the median of all lower-degree points
/// by more than rel_tol (relative), provided the next point departs as well.
std::optional<double> detect_cutoff_from_ipr(const DiagnosticsCurve& curve, double rel_tol = 0.10);

/// sum over curve points of |value - baseline|.
double aggregate_deviation(const DiagnosticsCurve& curve, double baseline);

}  // namespace richclub
