#pragma once

// Fixtures and brute-force oracles shared by the test binaries. Nothing in
// here calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "richclub/graph.hpp"

#ifndef RICHCLUB_DATA_DIR
#error "RICHCLUB_DATA_DIR must point at the bundled data directory"
#endif

namespace testing {

using richclub::Edge;
using richclub::Graph;

inline std::string karate_path() { return std::string(RICHCLUB_DATA_DIR) + "/karate.edgelist"; }
inline Graph karate() { return richclub::load_edge_list_file(karate_path()); }

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges);
}

inline Graph triangle() { return complete_graph(3); }

/// Hub 0 with `leaves` leaves.
inline Graph star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, edges);
}

/// 0 - 1 - 2, centre 1.
inline Graph path3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}); }

inline Graph two_triangles() {
  return Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

/// Erdos-Renyi G(n, p) with isolated nodes removed.
inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  std::vector<int> used(n, 0);
  for (auto [a, b] : edges) used[a] = used[b] = 1;
  std::vector<std::size_t> index(n, 0);
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (used[i]) index[i] = m++;
  for (auto& [a, b] : edges) {
    a = index[a];
    b = index[b];
  }
  return Graph::from_edges(m, edges);
}

/// Link probabilities straight from the closed form, with every sum
/// recomputed from scratch in long double. Returns an N x N matrix, or nullopt
/// when a recursion denominator is not positive.
inline std::optional<std::vector<std::vector<long double>>> oracle_probabilities(
    const std::vector<int>& k, const std::vector<int>& kp) {
  const std::size_t n = k.size();
  long double links = 0;
  for (int v : kp) links += v;
  std::vector<long double> w(n, 0);
  w[0] = 1;
  auto g_sum = [&](std::size_t upto) {  // sum_{i < upto} w(i)(k_i - k+_i)
    long double s = 0;
    for (std::size_t i = 0; i < upto; ++i) s += w[i] * (k[i] - kp[i]);
    return s;
  };
  for (std::size_t m = 1; m + 1 < n; ++m) {
    const long double g = g_sum(m);
    const long double denom = g - kp[m] * w[m - 1];
    if (!(denom > 1e-12L * g)) return std::nullopt;
    w[m] = w[m - 1] * g / denom;
  }
  std::vector<std::vector<long double>> p(n, std::vector<long double>(n, 0));
  for (std::size_t j = 1; j < n; ++j) {
    const long double g = g_sum(j);
    for (std::size_t i = 0; i < j; ++i) {
      p[i][j] = p[j][i] = w[i] * (k[i] - kp[i]) / g * kp[j] / links;
    }
  }
  return p;
}

inline long double oracle_entropy(const std::vector<std::vector<long double>>& p) {
  long double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i][j] > 0) s += p[i][j] * std::log(p[i][j]);
  return -2 * s;
}

/// Every k+ sequence with k+_1 = 0, k+_N = k_N, 0 <= k+_r <= bound_r, sum L.
/// `single_link` adds k+_r <= r - 1 (one-based).
inline std::vector<std::vector<int>> enumerate_kplus(const std::vector<int>& k, bool single_link) {
  const std::size_t n = k.size();
  const int links = std::accumulate(k.begin(), k.end(), 0) / 2;
  std::vector<int> bound(n, 0);
  for (std::size_t r = 1; r < n; ++r)
    bound[r] = single_link ? std::min(k[r], static_cast<int>(r)) : k[r];
  std::vector<std::vector<int>> out;
  if (bound[n - 1] < k[n - 1]) return out;
  std::vector<int> cur(n, 0);
  cur[n - 1] = k[n - 1];
  std::function<void(std::size_t, int)> rec = [&](std::size_t r, int remaining) {
    if (r + 1 == n) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    for (int v = 0; v <= std::min(bound[r], remaining); ++v) {
      cur[r] = v;
      rec(r + 1, remaining - v);
    }
    cur[r] = 0;
  };
  rec(1, links - k[n - 1]);
  return out;
}

/// All simple graphs on n nodes (n <= 6) whose degree sequence equals `deg`,
/// each as a sorted edge list.
inline std::set<std::vector<Edge>> enumerate_simple_graphs(const std::vector<int>& deg) {
  const std::size_t n = deg.size();
  std::vector<Edge> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::set<std::vector<Edge>> out;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<int> d(n, 0);
    std::vector<Edge> edges;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if (mask & (1u << b)) {
        ++d[pairs[b].first];
        ++d[pairs[b].second];
        edges.push_back(pairs[b]);
      }
    }
    if (d == deg) out.insert(edges);
  }
  return out;
}

/// Largest Q change over all two-way splits of {0..n-1}, by enumeration.
/// `value(i, j)` is the matrix entry; Q counts ordered pairs.
inline double brute_force_best_split(std::size_t n, const std::function<double(std::size_t, std::size_t)>& value,
                                     std::vector<int>* best_signs = nullptr) {
  double best = -1e300;
  for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> s(n, 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (mask & (1u << i)) s[i] = -1;
    double cross = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (s[i] != s[j]) cross += value(i, j);
    if (-cross > best) {
      best = -cross;
      if (best_signs) *best_signs = s;
    }
  }
  return best;
}

}  // namespace testing
