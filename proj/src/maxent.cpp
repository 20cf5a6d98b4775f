#include "richclub/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "richclub/errors.hpp"
#include "richclub/random.hpp"

namespace richclub {

namespace {

// Denominators at or below this fraction of G(m) are treated as zero.
constexpr double kSingularRelTol = 1e-12;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

std::string to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::ME1: return "ME1";
    case ModelTag::ME2: return "ME2";
    case ModelTag::ME3: return "ME3";
  }
  return "?";
}

ModelTag model_tag_from_string(const std::string& s) {
  if (s == "ME1") return ModelTag::ME1;
  if (s == "ME2") return ModelTag::ME2;
  if (s == "ME3") return ModelTag::ME3;
  throw std::invalid_argument("unknown maximal-entropy model '" + s + "'");
}

KPlusMode kplus_mode_for(ModelTag tag) {
  switch (tag) {
    case ModelTag::ME1: return KPlusMode::Observed;
    case ModelTag::ME2: return KPlusMode::ME2;
    case ModelTag::ME3: return KPlusMode::ME3;
  }
  return KPlusMode::Observed;
}

WeightSequence compute_weights(std::span<const int> k, const KPlusSequence& kp) {
  validate_kplus(k, kp);
  const std::size_t n = k.size();
  if (n < 2) throw std::invalid_argument("ensemble needs at least two nodes");
  if (k[n - 1] < 1) throw std::invalid_argument("ensemble requires every degree >= 1");

  WeightSequence ws;
  ws.w.assign(n - 1, 0.0);
  ws.f.assign(n - 1, 0.0);
  ws.g.assign(n, 0.0);
  ws.w[0] = 1.0;
  ws.f[0] = static_cast<double>(k[0] - kp[0]);
  ws.g[1] = ws.f[0];
  for (std::size_t m = 1; m + 1 < n; ++m) {
    const double denom = ws.g[m] - kp[m] * ws.w[m - 1];
    if (!(denom > kSingularRelTol * ws.g[m])) throw SingularWeights(m + 1);
    ws.w[m] = ws.w[m - 1] * ws.g[m] / denom;
    if (!std::isfinite(ws.w[m])) throw SingularWeights(m + 1);
    ws.f[m] = ws.w[m] * (k[m] - kp[m]);
    ws.g[m + 1] = ws.g[m] + ws.f[m];
  }
  return ws;
}

LinkProbabilityModel::LinkProbabilityModel(std::vector<int> k, KPlusSequence kp, ModelTag tag)
    : k_(std::move(k)), kp_(std::move(kp)), tag_(tag) {
  weights_ = compute_weights(k_, kp_);
  long long sum = 0;
  for (int v : kp_.values) sum += v;
  links_ = static_cast<double>(sum);
}

LinkProbabilityModel LinkProbabilityModel::from_graph(const Graph& g, const Ranking& ranking) {
  return LinkProbabilityModel(ranked_degrees(g, ranking), kplus_from_graph(g, ranking),
                              ModelTag::ME1);
}

double LinkProbabilityModel::probability(std::size_t i, std::size_t j) const {
  if (i == j) throw DomainError("link probability of a node with itself");
  if (i > j) std::swap(i, j);
  return weights_.f[i] / weights_.g[j] * (kp_[j] / links_);
}

double LinkProbabilityModel::variance(std::size_t i, std::size_t j) const {
  const double p = probability(i, j);
  return links_ * p * (1.0 - p);
}

void LinkProbabilityModel::row(std::size_t i, std::span<double> out) const {
  const std::size_t n = size();
  if (out.size() != n) throw std::invalid_argument("row buffer has wrong length");
  // j < i: p = F(j)/G(i) * k+_i / L
  const double down = kp_[i] / (weights_.g[i] * links_);
  for (std::size_t j = 0; j < i; ++j) out[j] = weights_.f[j] * down;
  out[i] = 0.0;
  if (i + 1 < n) {
    const double fi = weights_.f[i] / links_;
    for (std::size_t j = i + 1; j < n; ++j) out[j] = fi * kp_[j] / weights_.g[j];
  }
}

ConstraintResiduals verify_soft_constraints(const LinkProbabilityModel& model) {
  const std::size_t n = model.size();
  const double links = model.links();
  std::vector<double> p(n);
  ConstraintResiduals res;
  for (std::size_t r = 0; r < n; ++r) {
    model.row(r, p);
    double below = 0.0;
    for (std::size_t j = 0; j < r; ++j) below += links * p[j];
    double total = below;
    for (std::size_t j = r + 1; j < n; ++j) {
      total += links * p[j];
      if (links * p[j] > 1.0) ++res.multi_edge_pairs;
    }
    for (std::size_t j = 0; j < r; ++j) {
      if (links * p[j] > 1.0) ++res.multi_edge_pairs;
    }
    res.degree = std::max(res.degree, std::abs(total - model.degrees()[r]));
    res.kplus = std::max(res.kplus, std::abs(below - model.kplus()[r]));
  }
  // every pair was visited from both ends
  res.multi_edge_pairs /= 2;
  return res;
}

double entropy_naive(const LinkProbabilityModel& model) {
  const std::size_t n = model.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s += xlogx(model.probability(i, j));
  }
  return -2.0 * s;
}

double entropy_fast(std::span<const int> k, std::span<const int> kplus,
                    const WeightSequence& weights) {
  const std::size_t n = k.size();
  double links = 0.0;
  for (int v : kplus) links += v;

  // Suffix pass: after processing j, a = A(j-1), b = B(j-1).
  double a = 0.0;
  double b = 0.0;
  double s = 0.0;
  for (std::size_t j = n - 1; j >= 1; --j) {
    const double q = kplus[j] / weights.g[j];
    a += q;
    b += xlogx(q);
    const std::size_t i = j - 1;
    const double fl = weights.f[i] / links;
    if (fl > 0.0) s += fl * std::log(fl) * a + fl * b;
  }
  return -2.0 * s;
}

double entropy_fast(std::span<const int> k, const KPlusSequence& kp) {
  const auto weights = compute_weights(k, kp);
  return entropy_fast(k, kp.values, weights);
}

std::vector<Edge> sample_network(const LinkProbabilityModel& model, std::uint64_t seed) {
  const std::size_t n = model.size();
  const auto& g = model.weights().g;
  const auto& kp = model.kplus().values;
  const auto links = static_cast<long long>(model.links());

  // P(j is the lower-ranked endpoint) = k+_j / L; then P(i | j) = F(i) / G(j).
  std::vector<long long> upper_cum(n, 0);
  long long acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    acc += kp[j];
    upper_cum[j] = acc;
  }

  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(links));
  for (long long draw = 0; draw < links; ++draw) {
    const auto u = static_cast<long long>(uniform_index(rng, static_cast<std::size_t>(links)));
    const auto j = static_cast<std::size_t>(
        std::upper_bound(upper_cum.begin(), upper_cum.end(), u) - upper_cum.begin());
    const double target = unit_uniform(rng) * g[j];
    // first i < j with G(i+1) > target
    auto it = std::upper_bound(g.begin() + 1, g.begin() + static_cast<std::ptrdiff_t>(j) + 1, target);
    auto i = static_cast<std::size_t>(it - g.begin()) - 1;
    if (i >= j) {
      // target rounded up to G(j): take the last contributing node
      i = j - 1;
      while (i > 0 && model.weights().f[i] <= 0.0) --i;
    }
    edges.emplace_back(i, j);
  }
  return edges;
}

}  // namespace richclub
