#include "richclub/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "richclub/errors.hpp"
#include "richclub/log.hpp"

namespace richclub {

namespace {

// Averages per-node values into a degree-keyed curve.
class DegreeAverager {
 public:
  void add(int degree, double value) {
    auto& [sum, count] = bins_[degree];
    sum += value;
    ++count;
  }

  DiagnosticsCurve finish(std::string label, std::string source) const {
    DiagnosticsCurve c{{}, std::move(label), std::move(source)};
    c.points.reserve(bins_.size());
    for (const auto& [k, acc] : bins_) c.points.emplace_back(k, acc.first / acc.second);
    return c;
  }

 private:
  std::map<int, std::pair<double, std::size_t>> bins_;
};

struct RowMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

RowMoments row_moments(const LinkProbabilityModel& model, std::size_t i) {
  std::vector<double> p(model.size());
  model.row(i, p);
  RowMoments m;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j == i) continue;
    m.sum += p[j];
    m.sum_sq += p[j] * p[j];
  }
  return m;
}

}  // namespace

DiagnosticsCurve knn_data(const Graph& g) {
  DegreeAverager avg;
  std::size_t isolated = 0;
  for (NodeIndex i = 0; i < g.node_count(); ++i) {
    const int k = g.degree(i);
    if (k == 0) {
      ++isolated;
      continue;
    }
    double s = 0.0;
    for (NodeIndex nb : g.neighbors(i)) s += g.degree(nb);
    avg.add(k, s / k);
  }
  if (isolated > 0) warn(std::to_string(isolated) + " isolated node(s) dropped from knn curve");
  return avg.finish("knn", "DATA");
}

DiagnosticsCurve knn_data(const MultiGraph& g, std::string source) {
  const auto k = g.degrees();
  std::vector<double> neighbor_sum(g.node_count, 0.0);
  for (const auto& [a, b] : g.edges) {
    neighbor_sum[a] += k[b];
    neighbor_sum[b] += k[a];
  }
  DegreeAverager avg;
  std::size_t isolated = 0;
  for (std::size_t i = 0; i < g.node_count; ++i) {
    if (k[i] == 0) {
      ++isolated;
      continue;
    }
    avg.add(k[i], neighbor_sum[i] / k[i]);
  }
  if (isolated > 0) warn(std::to_string(isolated) + " isolated node(s) dropped from knn curve");
  return avg.finish("knn", std::move(source));
}

DiagnosticsCurve knn_ensemble(const LinkProbabilityModel& model) {
  const std::size_t n = model.size();
  const auto k = model.degrees();
  const double links = model.links();
  std::vector<double> p(n);
  DegreeAverager avg;
  for (std::size_t i = 0; i < n; ++i) {
    model.row(i, p);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += p[j] * links * k[j];
    avg.add(k[i], s / k[i]);
  }
  return avg.finish("knn", to_string(model.tag()));
}

DiagnosticsCurve knn_ensemble(const NGModel& model) {
  const std::size_t n = model.size();
  const auto k = model.degrees();
  DegreeAverager avg;
  for (std::size_t i = 0; i < n; ++i) {
    if (k[i] == 0) continue;
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += model.expected_links(i, j) * k[j];
    avg.add(k[i], s / k[i]);
  }
  return avg.finish("knn", "NG");
}

double uncorrelated_knn(std::span<const int> degrees) {
  double s1 = 0.0;
  double s2 = 0.0;
  for (int k : degrees) {
    s1 += k;
    s2 += static_cast<double>(k) * k;
  }
  if (s1 == 0.0) throw DomainError("uncorrelated knn of a graph without edges");
  return s2 / s1;
}

double uncorrelated_knn(const Graph& g) { return uncorrelated_knn(g.degrees()); }

double coefficient_of_variation(const LinkProbabilityModel& model, std::size_t i) {
  const auto m = row_moments(model, i);
  const double links = model.links();
  const double expected_degree = links * m.sum;
  if (!(expected_degree > 0.0)) throw DomainError("zero expected degree");
  const double c2 = 1.0 / expected_degree - m.sum_sq / (links * m.sum * m.sum);
  return std::sqrt(std::max(0.0, c2));
}

double inverse_participation(const LinkProbabilityModel& model, std::size_t i) {
  const auto m = row_moments(model, i);
  if (!(m.sum_sq > 0.0)) throw DomainError("inverse participation of an empty row");
  return m.sum * m.sum / m.sum_sq;
}

DiagnosticsCurve cv_curve(const LinkProbabilityModel& model) {
  DegreeAverager avg;
  for (std::size_t i = 0; i < model.size(); ++i) {
    avg.add(model.degrees()[i], coefficient_of_variation(model, i));
  }
  return avg.finish("cv", to_string(model.tag()));
}

DiagnosticsCurve ipr_curve(const LinkProbabilityModel& model) {
  DegreeAverager avg;
  for (std::size_t i = 0; i < model.size(); ++i) {
    avg.add(model.degrees()[i], inverse_participation(model, i));
  }
  return avg.finish("ipr", to_string(model.tag()));
}

std::optional<double> detect_cutoff_from_ipr(const DiagnosticsCurve& curve, double rel_tol) {
  const auto& pts = curve.points;
  std::vector<double> plateau;
  for (std::size_t t = 1; t + 1 < pts.size(); ++t) {
    plateau.clear();
    for (std::size_t s = 0; s < t; ++s) plateau.push_back(pts[s].second);
    std::sort(plateau.begin(), plateau.end());
    const double median = t % 2 == 1 ? plateau[t / 2] : 0.5 * (plateau[t / 2 - 1] + plateau[t / 2]);
    const double limit = rel_tol * std::abs(median);
    if (std::abs(pts[t].second - median) > limit && std::abs(pts[t + 1].second - median) > limit) {
      return pts[t].first;
    }
  }
  return std::nullopt;
}

double aggregate_deviation(const DiagnosticsCurve& curve, double baseline) {
  double total = 0.0;
  for (const auto& [x, v] : curve.points) total += std::abs(v - baseline);
  return total;
}

}  // namespace richclub
