#include "richclub/communities.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "richclub/errors.hpp"
#include "richclub/log.hpp"
#include "richclub/random.hpp"

namespace richclub {

PairEnsemble node_ensemble(const LinkProbabilityModel& model, const Ranking& ranking) {
  if (model.size() != ranking.size()) {
    throw std::invalid_argument("ranking and model disagree on node count");
  }
  auto shared = std::make_shared<const LinkProbabilityModel>(model);
  auto rank_of = std::make_shared<const std::vector<std::size_t>>(ranking.rank_of);
  PairEnsemble e;
  e.node_count = model.size();
  e.links = model.links();
  e.tag = to_string(model.tag());
  e.probability = [shared, rank_of](std::size_t i, std::size_t j) {
    if (i == j) return 0.0;
    return shared->probability((*rank_of)[i], (*rank_of)[j]);
  };
  return e;
}

PairEnsemble node_ensemble(const NGModel& model) {
  auto shared = std::make_shared<const NGModel>(model);
  PairEnsemble e;
  e.node_count = model.size();
  e.links = model.links();
  e.tag = "NG";
  e.probability = [shared](std::size_t i, std::size_t j) {
    return shared->expected_links(i, j) / shared->links();
  };
  return e;
}

ModularityMatrix standard_modularity_matrix(const Graph& g, const PairEnsemble& null) {
  const std::size_t n = g.node_count();
  if (null.node_count != n) throw std::invalid_argument("null model dimension mismatch");
  ModularityMatrix m;
  m.kind = ModularityKind::Standard;
  m.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = g.has_edge(i, j) ? 1.0 : 0.0;
      const double e = 0.5 * (null.expected_links(i, j) + null.expected_links(j, i));
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      m.values(ii, jj) = m.values(jj, ii) = a - e;
    }
  }
  return m;
}

ModularityMatrix soft_modularity_matrix(const PairEnsemble& first, const PairEnsemble& second) {
  if (first.node_count != second.node_count) {
    throw std::invalid_argument("soft modularity: node count mismatch");
  }
  if (first.links != second.links) throw std::invalid_argument("soft modularity: L mismatch");
  const std::size_t n = first.node_count;
  const double links = first.links;
  ModularityMatrix m;
  m.kind = ModularityKind::Soft;
  m.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  auto variance = [&](double p) {
    if (p < 0.0 || p > 1.0) {
      ++m.clamped_pairs;
      p = std::clamp(p, 0.0, 1.0);
    }
    return links * p * (1.0 - p);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p1 = first.probability(i, j);
      const double p2 = second.probability(i, j);
      const double s = variance(p1) + variance(p2);
      const double value = s > 0.0 ? links * (p1 - p2) / std::sqrt(s) : 0.0;
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      m.values(ii, jj) = m.values(jj, ii) = value;
    }
  }
  if (m.clamped_pairs > 0) {
    warn("soft modularity: clamped " + std::to_string(m.clamped_pairs) +
         " probabilities into [0, 1] for the variance term");
  }
  return m;
}

std::vector<std::vector<std::size_t>> Partition::communities() const {
  std::vector<std::vector<std::size_t>> out(community_count);
  for (std::size_t i = 0; i < assignment.size(); ++i) out[assignment[i]].push_back(i);
  return out;
}

Partition make_partition(std::vector<std::size_t> assignment) {
  std::unordered_map<std::size_t, std::size_t> relabel;
  for (auto& c : assignment) {
    auto [it, inserted] = relabel.try_emplace(c, relabel.size());
    c = it->second;
  }
  return Partition{std::move(assignment), relabel.size()};
}

double modularity_value(const ModularityMatrix& m, const Partition& part) {
  const std::size_t n = m.size();
  if (part.size() != n) throw std::invalid_argument("partition dimension mismatch");
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && part.assignment[i] == part.assignment[j]) {
        q += m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return q;
}

double split_contribution(const ModularityMatrix& m, std::span<const std::size_t> subset,
                          std::span<const int> signs) {
  // Q loses every ordered cross pair.
  double cross = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = 0; b < subset.size(); ++b) {
      if (signs[a] != signs[b]) {
        cross += m.values(static_cast<Eigen::Index>(subset[a]), static_cast<Eigen::Index>(subset[b]));
      }
    }
  }
  return -cross;
}

Bipartition spectral_bipartition(const ModularityMatrix& m, std::span<const std::size_t> subset,
                                 const SpectralOptions& options) {
  Bipartition result;
  const auto n = static_cast<Eigen::Index>(subset.size());
  if (n < 2) return result;

  Eigen::MatrixXd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      b(i, j) = m.values(static_cast<Eigen::Index>(subset[static_cast<std::size_t>(i)]),
                         static_cast<Eigen::Index>(subset[static_cast<std::size_t>(j)]));
    }
  }
  const Eigen::VectorXd row_sums = b.rowwise().sum();
  b.diagonal() -= row_sums;

  const double shift = b.cwiseAbs().rowwise().sum().maxCoeff();
  if (shift == 0.0) return result;
  b.diagonal().array() += shift;

  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = static_cast<double>(splitmix64(static_cast<std::uint64_t>(i)) >> 11) * 0x1.0p-52 - 1.0;
  }
  v.normalize();

  const double scale = std::max(1.0, shift);
  double lambda = 0.0;
  double residual = 0.0;
  bool converged = false;
  Eigen::VectorXd w(n);
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    w.noalias() = b * v;
    lambda = v.dot(w);
    residual = (w - lambda * v).norm();
    result.iterations = it + 1;
    const double norm = w.norm();
    if (norm == 0.0) {
      converged = true;
      break;
    }
    if (residual <= options.tolerance * scale) {
      v = w / norm;
      converged = true;
      break;
    }
    v = w / norm;
  }
  if (!converged && options.dense_fallback) {
    // Near-degenerate leading eigenvalues make the shifted iteration crawl.
    b.diagonal().array() -= shift;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    if (solver.info() == Eigen::Success) {
      Eigen::Index top = 0;
      solver.eigenvalues().maxCoeff(&top);
      v = solver.eigenvectors().col(top).normalized();
      lambda = v.dot(b * v) + shift;
      residual = (b * v - (lambda - shift) * v).norm();
      converged = residual <= options.tolerance * scale;
      result.used_dense_fallback = true;
    }
  }
  result.residual = residual;
  if (!converged) throw NumericalFailure("power iteration did not converge", residual);

  result.eigenvalue = lambda - shift;
  if (result.eigenvalue <= options.eigen_epsilon * scale) return result;

  // sign convention: first non-negligible component positive
  const double tiny = 1e-12 * v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(v(i)) > tiny) {
      if (v(i) < 0.0) v = -v;
      break;
    }
  }
  std::vector<int> signs(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    signs[idx] = v(i) > 0.0 ? 1 : -1;
    (signs[idx] > 0 ? result.positive : result.negative).push_back(subset[idx]);
  }
  if (result.positive.empty() || result.negative.empty()) {
    result.positive.clear();
    result.negative.clear();
    return result;
  }
  result.q_contribution = split_contribution(m, subset, signs);
  result.divisible = true;
  return result;
}

PartitionResult recursive_partition(const ModularityMatrix& m, const PartitionOptions& options) {
  const std::size_t n = m.size();
  PartitionResult out;
  auto& nodes = out.dendrogram.nodes;
  Dendrogram::Node root;
  root.members.resize(n);
  for (std::size_t i = 0; i < n; ++i) root.members[i] = i;
  nodes.push_back(std::move(root));

  out.q_initial = m.values.sum() - m.values.trace();
  double q = out.q_initial;

  std::deque<int> pending{0};
  while (!pending.empty()) {
    const int id = pending.front();
    pending.pop_front();
    const auto split = spectral_bipartition(m, nodes[static_cast<std::size_t>(id)].members, options.spectral);
    auto& node = nodes[static_cast<std::size_t>(id)];
    node.eigenvalue = split.eigenvalue;
    if (!split.divisible) continue;
    if (options.strict && !(split.q_contribution > 0.0)) continue;

    node.q_contribution = split.q_contribution;
    Dendrogram::Node left;
    left.members = split.positive;
    Dendrogram::Node right;
    right.members = split.negative;
    const int left_id = static_cast<int>(nodes.size());
    nodes[static_cast<std::size_t>(id)].left = left_id;
    nodes[static_cast<std::size_t>(id)].right = left_id + 1;
    nodes.push_back(std::move(left));
    nodes.push_back(std::move(right));
    pending.push_back(left_id);
    pending.push_back(left_id + 1);

    q += split.q_contribution;
    out.q_after_split.push_back(q);
  }

  std::vector<std::size_t> assignment(n, 0);
  std::size_t next = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const auto& node = nodes[static_cast<std::size_t>(id)];
    if (node.is_leaf()) {
      for (auto member : node.members) assignment[member] = next;
      ++next;
    } else {
      stack.push_back(node.right);
      stack.push_back(node.left);
    }
  }
  out.partition = Partition{std::move(assignment), next};
  out.q_final = q;
  out.q_best = out.q_initial;
  for (double v : out.q_after_split) out.q_best = std::max(out.q_best, v);
  return out;
}

}  // namespace richclub
