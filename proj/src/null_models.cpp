#include "richclub/null_models.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "richclub/errors.hpp"
#include "richclub/random.hpp"

namespace richclub {

namespace {

std::uint64_t pair_key(NodeIndex a, NodeIndex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

}  // namespace

NGModel::NGModel(const Graph& g) : k_(g.degrees().begin(), g.degrees().end()) {
  if (g.edge_count() == 0) throw DomainError("Newman-Girvan model of a graph without edges");
  links_ = static_cast<double>(g.edge_count());
  const long long kmax = g.max_degree();
  // k_max < sqrt(2L) compared exactly in integers
  if (kmax * kmax >= 2LL * static_cast<long long>(g.edge_count())) {
    throw InfeasibleNG("k_max = " + std::to_string(kmax) + " >= sqrt(2L) = " +
                       std::to_string(std::sqrt(2.0 * links_)));
  }
}

double NGModel::expected_links(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  return static_cast<double>(k_.at(i)) * static_cast<double>(k_.at(j)) / (2.0 * links_);
}

std::string to_string(RRVariant v) { return v == RRVariant::RR1 ? "RR1" : "RR2"; }

RandomizedGraph rr_randomize(const Graph& g, const RRConfig& config) {
  RandomizedGraph out;
  out.graph = to_multigraph(g);
  auto& edges = out.graph.edges;
  const std::size_t m = edges.size();
  if (m < 2) return out;

  const std::size_t attempts = config.swap_attempts.value_or(20 * m);
  if (attempts < 1) throw std::invalid_argument("swap_attempts must be >= 1");
  const bool simple = config.variant == RRVariant::RR1;

  std::unordered_map<std::uint64_t, int> multiplicity;
  if (simple) {
    multiplicity.reserve(2 * m);
    for (const auto& [a, b] : edges) ++multiplicity[pair_key(a, b)];
  }

  Rng rng(config.seed);
  for (std::size_t t = 0; t < attempts; ++t) {
    ++out.swaps_attempted;
    const std::size_t e1 = uniform_index(rng, m);
    std::size_t e2 = uniform_index(rng, m - 1);
    if (e2 >= e1) ++e2;
    const auto [a, b] = edges[e1];
    auto [c, d] = edges[e2];
    if (rng() & 1ULL) std::swap(c, d);

    if (a == d || c == b) continue;
    if (simple) {
      const auto k1 = pair_key(a, d);
      const auto k2 = pair_key(c, b);
      if (k1 == k2) continue;
      auto it1 = multiplicity.find(k1);
      auto it2 = multiplicity.find(k2);
      if ((it1 != multiplicity.end() && it1->second > 0) ||
          (it2 != multiplicity.end() && it2->second > 0)) {
        continue;
      }
      --multiplicity[pair_key(a, b)];
      --multiplicity[pair_key(c, d)];
      ++multiplicity[k1];
      ++multiplicity[k2];
    }
    edges[e1] = {a, d};
    edges[e2] = {c, b};
    ++out.swaps_accepted;
  }
  return out;
}

double expected_self_loops(double k, double mean_degree, std::size_t n) {
  if (n < 1) throw DomainError("expected self-loops need N >= 1");
  if (!(mean_degree > 0.0)) throw DomainError("expected self-loops need a positive mean degree");
  return k * k / (mean_degree * static_cast<double>(n));
}

}  // namespace richclub
