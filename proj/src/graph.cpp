#include "richclub/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
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

struct RawEdge {
  std::string u;
  std::string v;
  std::size_t line;
};

std::optional<std::uint64_t> parse_unsigned(const std::string& token) {
  std::uint64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

Graph Graph::from_edges(std::size_t node_count, std::vector<Edge> edges,
                        std::vector<std::string> labels) {
  Graph g;
  g.adjacency_.assign(node_count, {});
  std::set<std::uint64_t> seen;
  for (auto& [a, b] : edges) {
    if (a >= node_count || b >= node_count) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (a == b) throw std::invalid_argument("self-loop on node " + std::to_string(a));
    if (!seen.insert(pair_key(a, b)).second) {
      throw std::invalid_argument("duplicate edge " + std::to_string(a) + "-" +
                                  std::to_string(b));
    }
    if (a > b) std::swap(a, b);
    g.adjacency_[a].push_back(b);
    g.adjacency_[b].push_back(a);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  g.edges_ = std::move(edges);
  g.degrees_.resize(node_count);
  for (std::size_t i = 0; i < node_count; ++i) {
    g.degrees_[i] = static_cast<int>(g.adjacency_[i].size());
  }
  if (labels.empty()) {
    labels.resize(node_count);
    for (std::size_t i = 0; i < node_count; ++i) labels[i] = std::to_string(i);
  } else if (labels.size() != node_count) {
    throw std::invalid_argument("label count does not match node count");
  }
  g.labels_ = std::move(labels);
  return g;
}

int Graph::max_degree() const noexcept {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

bool Graph::has_edge(NodeIndex i, NodeIndex j) const {
  const auto& nbrs = adjacency_.at(i);
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

Graph load_edge_list(std::istream& in, IdKind ids) {
  std::vector<RawEdge> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    std::string u, v, extra;
    if (!(fields >> u >> v)) throw ParseError(line_no, "expected two node ids");
    if (fields >> extra) throw ParseError(line_no, "unexpected token '" + extra + "'");
    raw.push_back({std::move(u), std::move(v), line_no});
  }

  std::vector<std::string> labels;
  std::vector<Edge> edges;
  edges.reserve(raw.size());

  if (ids == IdKind::Integer) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> parsed;
    parsed.reserve(raw.size());
    std::vector<std::uint64_t> unique_ids;
    for (const auto& e : raw) {
      auto a = parse_unsigned(e.u);
      auto b = parse_unsigned(e.v);
      if (!a) throw ParseError(e.line, "node id '" + e.u + "' is not a non-negative integer");
      if (!b) throw ParseError(e.line, "node id '" + e.v + "' is not a non-negative integer");
      if (*a == *b) throw ParseError(e.line, "self-loop on node " + std::to_string(*a));
      parsed.emplace_back(*a, *b);
      unique_ids.push_back(*a);
      unique_ids.push_back(*b);
    }
    std::sort(unique_ids.begin(), unique_ids.end());
    unique_ids.erase(std::unique(unique_ids.begin(), unique_ids.end()), unique_ids.end());
    auto index_of = [&](std::uint64_t id) {
      return static_cast<NodeIndex>(
          std::lower_bound(unique_ids.begin(), unique_ids.end(), id) - unique_ids.begin());
    };
    for (const auto& [a, b] : parsed) edges.emplace_back(index_of(a), index_of(b));
    labels.reserve(unique_ids.size());
    for (auto id : unique_ids) labels.push_back(std::to_string(id));
  } else {
    std::vector<std::string> unique_ids;
    for (const auto& e : raw) {
      if (e.u == e.v) throw ParseError(e.line, "self-loop on node " + e.u);
      unique_ids.push_back(e.u);
      unique_ids.push_back(e.v);
    }
    std::sort(unique_ids.begin(), unique_ids.end());
    unique_ids.erase(std::unique(unique_ids.begin(), unique_ids.end()), unique_ids.end());
    auto index_of = [&](const std::string& id) {
      return static_cast<NodeIndex>(
          std::lower_bound(unique_ids.begin(), unique_ids.end(), id) - unique_ids.begin());
    };
    for (const auto& e : raw) edges.emplace_back(index_of(e.u), index_of(e.v));
    labels = std::move(unique_ids);
  }

  std::set<std::uint64_t> seen;
  for (std::size_t n = 0; n < edges.size(); ++n) {
    if (!seen.insert(pair_key(edges[n].first, edges[n].second)).second) {
      throw ParseError(raw[n].line, "duplicate edge " + raw[n].u + " " + raw[n].v);
    }
  }
  const std::size_t node_count = labels.size();
  return Graph::from_edges(node_count, std::move(edges), std::move(labels));
}

Graph load_edge_list_file(const std::string& path, IdKind ids) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return load_edge_list(in, ids);
}

std::vector<int> MultiGraph::degrees() const {
  std::vector<int> k(node_count, 0);
  for (const auto& [a, b] : edges) {
    ++k[a];
    ++k[b];
  }
  return k;
}

bool MultiGraph::has_self_loops() const {
  return std::any_of(edges.begin(), edges.end(), [](const Edge& e) { return e.first == e.second; });
}

bool MultiGraph::has_multi_edges() const {
  std::set<std::uint64_t> seen;
  for (const auto& [a, b] : edges) {
    if (!seen.insert(pair_key(a, b)).second) return true;
  }
  return false;
}

MultiGraph to_multigraph(const Graph& g) {
  return MultiGraph{g.node_count(), std::vector<Edge>(g.edges().begin(), g.edges().end())};
}

Ranking rank_nodes(const Graph& g, RankPolicy policy, std::optional<std::uint64_t> seed) {
  const std::size_t n = g.node_count();
  Ranking ranking;
  ranking.policy = policy;
  ranking.order.resize(n);
  std::iota(ranking.order.begin(), ranking.order.end(), NodeIndex{0});
  const auto k = g.degrees();
  std::stable_sort(ranking.order.begin(), ranking.order.end(),
                   [&](NodeIndex a, NodeIndex b) { return k[a] > k[b]; });

  if (policy == RankPolicy::SeededRandom) {
    Rng rng(seed.value_or(0));
    std::size_t begin = 0;
    while (begin < n) {
      std::size_t end = begin + 1;
      while (end < n && k[ranking.order[end]] == k[ranking.order[begin]]) ++end;
      shuffle(std::span<NodeIndex>(ranking.order).subspan(begin, end - begin), rng);
      begin = end;
    }
  }

  ranking.rank_of.resize(n);
  for (std::size_t r = 0; r < n; ++r) ranking.rank_of[ranking.order[r]] = r;
  return ranking;
}

std::vector<int> ranked_degrees(const Graph& g, const Ranking& ranking) {
  std::vector<int> k(ranking.size());
  for (std::size_t r = 0; r < ranking.size(); ++r) k[r] = g.degree(ranking.order[r]);
  return k;
}

void validate_kplus(std::span<const int> k, const KPlusSequence& kp) {
  const std::size_t n = k.size();
  if (kp.size() != n) throw std::invalid_argument("k+ length does not match degree sequence");
  if (n == 0) throw std::invalid_argument("empty degree sequence");
  long long degree_sum = 0;
  long long kplus_sum = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r > 0 && k[r] > k[r - 1]) throw std::invalid_argument("degrees not in rank order");
    if (kp[r] < 0 || kp[r] > k[r]) {
      throw std::invalid_argument("k+ out of [0, k] at rank " + std::to_string(r + 1));
    }
    if (kp.mode == KPlusMode::ME2 && static_cast<std::size_t>(kp[r]) > r) {
      throw std::invalid_argument("k+ exceeds r-1 at rank " + std::to_string(r + 1));
    }
    degree_sum += k[r];
    kplus_sum += kp[r];
  }
  if (degree_sum % 2 != 0) throw std::invalid_argument("odd degree sum");
  if (kp[0] != 0) throw std::invalid_argument("k+ of the top-ranked node must be 0");
  if (kp[n - 1] != k[n - 1]) {
    throw std::invalid_argument("k+ of the last-ranked node must equal its degree");
  }
  if (2 * kplus_sum != degree_sum) throw std::invalid_argument("k+ does not sum to L");
}

KPlusSequence kplus_from_graph(const Graph& g, const Ranking& ranking) {
  KPlusSequence kp;
  kp.mode = KPlusMode::Observed;
  kp.values.assign(ranking.size(), 0);
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    for (NodeIndex nb : g.neighbors(ranking.order[r])) {
      if (ranking.rank_of[nb] < r) ++kp.values[r];
    }
  }
  return kp;
}

double rich_club_coefficient(const KPlusSequence& kp, std::size_t r) {
  if (r < 2) throw DomainError("rich-club coefficient needs r >= 2");
  if (r > kp.size()) throw DomainError("rich-club rank exceeds node count");
  long long links = 0;
  for (std::size_t i = 0; i < r; ++i) links += kp[i];
  return 2.0 * static_cast<double>(links) / (static_cast<double>(r) * static_cast<double>(r - 1));
}

double cutoff_degree(const Graph& g) {
  if (g.edge_count() == 0) throw DomainError("cut-off degree of a graph without edges");
  return std::sqrt(2.0 * static_cast<double>(g.edge_count()));
}

std::string to_string(KPlusMode mode) {
  switch (mode) {
    case KPlusMode::Observed: return "OBSERVED";
    case KPlusMode::ME2: return "ME2";
    case KPlusMode::ME3: return "ME3";
  }
  return "?";
}

KPlusMode kplus_mode_from_string(const std::string& s) {
  if (s == "OBSERVED" || s == "ME1") return KPlusMode::Observed;
  if (s == "ME2") return KPlusMode::ME2;
  if (s == "ME3") return KPlusMode::ME3;
  throw std::invalid_argument("unknown k+ mode '" + s + "'");
}

}  // namespace richclub
