#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace richclub {

using NodeIndex = std::size_t;
using Edge = std::pair<NodeIndex, NodeIndex>;

enum class IdKind { Integer, String };

/// Undirected simple graph with contiguous node indices.
///
/// Indices are assigned in ascending order of the original ids (numeric order
/// for integer ids, lexicographic for string ids), so comparing indices is the
/// same as comparing original ids.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from index pairs. Throws std::invalid_argument on a
  /// self-loop, a duplicate edge, or an index >= node_count. When `labels` is
  /// empty the labels are the decimal indices.
  static Graph from_edges(std::size_t node_count, std::vector<Edge> edges,
                          std::vector<std::string> labels = {});

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  /// Edges with first < second, in insertion order.
  std::span<const Edge> edges() const noexcept { return edges_; }
  /// Sorted neighbor indices.
  std::span<const NodeIndex> neighbors(NodeIndex i) const { return adjacency_.at(i); }
  int degree(NodeIndex i) const { return static_cast<int>(adjacency_.at(i).size()); }
  std::span<const int> degrees() const noexcept { return degrees_; }
  int max_degree() const noexcept;
  bool has_edge(NodeIndex i, NodeIndex j) const;

  const std::string& label(NodeIndex i) const { return labels_.at(i); }
  std::span<const std::string> labels() const noexcept { return labels_; }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeIndex>> adjacency_;
  std::vector<int> degrees_;
  std::vector<std::string> labels_;
};

/// Parses "u v" lines; '#' lines and blank lines are skipped. Throws ParseError
/// on malformed tokens, self-loops and duplicate edges.
Graph load_edge_list(std::istream& in, IdKind ids = IdKind::Integer);
Graph load_edge_list_file(const std::string& path, IdKind ids = IdKind::Integer);

/// Edge multiset; may hold repeated pairs and, in principle, self-loops.
struct MultiGraph {
  std::size_t node_count = 0;
  std::vector<Edge> edges;

  std::vector<int> degrees() const;
  bool has_self_loops() const;
  bool has_multi_edges() const;
};

MultiGraph to_multigraph(const Graph& g);

enum class RankPolicy { DeterministicById, SeededRandom };

/// rank -> node permutation with nonincreasing degrees. Rank 0 is the
/// highest-degree node (rank 1 in one-based notation).
struct Ranking {
  std::vector<NodeIndex> order;
  std::vector<std::size_t> rank_of;
  RankPolicy policy = RankPolicy::DeterministicById;

  std::size_t size() const noexcept { return order.size(); }
};

Ranking rank_nodes(const Graph& g, RankPolicy policy = RankPolicy::DeterministicById,
                   std::optional<std::uint64_t> seed = std::nullopt);

/// Degrees listed in rank order.
std::vector<int> ranked_degrees(const Graph& g, const Ranking& ranking);

enum class KPlusMode { Observed, ME2, ME3 };

/// Per-rank count of links to strictly higher-ranked nodes.
struct KPlusSequence {
  std::vector<int> values;
  KPlusMode mode = KPlusMode::Observed;

  std::size_t size() const noexcept { return values.size(); }
  int operator[](std::size_t r) const { return values[r]; }
};

/// Checks the sequence against ranked degrees `k`: nonincreasing k, first entry
/// 0, last entry equal to the last degree, 0 <= k+_r <= k_r, sum equal to L,
/// and the single-link bound for ME2. Throws std::invalid_argument.
void validate_kplus(std::span<const int> k, const KPlusSequence& kp);

KPlusSequence kplus_from_graph(const Graph& g, const Ranking& ranking);

/// Rank-based rich-club coefficient of the top `r` nodes (r is a count, so
/// r = 2 means the two highest-ranked nodes). Throws DomainError for r < 2 or
/// r > N.
double rich_club_coefficient(const KPlusSequence& kp, std::size_t r);

/// sqrt(2L). Throws DomainError on a graph without edges.
double cutoff_degree(const Graph& g);

std::string to_string(KPlusMode mode);
KPlusMode kplus_mode_from_string(const std::string& s);

}  // namespace richclub
