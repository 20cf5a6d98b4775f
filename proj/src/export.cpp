#include "richclub/export.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace richclub {

using nlohmann::json;

std::string Provenance::comment_line() const {
  return std::string("# ") + kToolName + " " + tool_version + " seed=" + std::to_string(seed) +
         " config=" + config_hash;
}

json Provenance::to_json() const {
  return json{{"tool", kToolName}, {"version", tool_version}, {"seed", seed}, {"config_hash", config_hash}};
}

std::string config_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void write_edge_list(std::ostream& os, const MultiGraph& g, std::span<const std::string> labels,
                     const Provenance& prov) {
  os << prov.comment_line() << '\n';
  if (g.has_multi_edges()) os << "# multi-edges: repeated lines are parallel links\n";
  for (const auto& [a, b] : g.edges) os << labels[a] << ' ' << labels[b] << '\n';
}

void write_ranking_csv(std::ostream& os, const Graph& g, const Ranking& ranking,
                       const KPlusSequence& kp, const Provenance& prov) {
  os << prov.comment_line() << "\nrank,node_id,degree,kplus\n";
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    const auto node = ranking.order[r];
    os << r + 1 << ',' << g.label(node) << ',' << g.degree(node) << ',' << kp[r] << '\n';
  }
}

void write_kplus_csv(std::ostream& os, std::span<const int> k, const KPlusSequence& kp,
                     const Provenance& prov) {
  os << prov.comment_line() << "\nrank,k,kplus\n";
  for (std::size_t r = 0; r < k.size(); ++r) os << r + 1 << ',' << k[r] << ',' << kp[r] << '\n';
}

void write_trace_csv(std::ostream& os, std::span<const double> trace, const Provenance& prov) {
  os << prov.comment_line() << "\nstep,entropy\n";
  for (std::size_t s = 0; s < trace.size(); ++s) os << s << ',' << format_double(trace[s]) << '\n';
}

void write_probabilities_csv(std::ostream& os, const LinkProbabilityModel& model,
                             bool positive_only, const Provenance& prov) {
  os << prov.comment_line() << "\ni,j,p,e,s\n";
  const std::size_t n = model.size();
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    model.row(i, row);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = row[j];
      if (positive_only && !(p > 0.0)) continue;
      const double e = model.links() * p;
      os << i + 1 << ',' << j + 1 << ',' << format_double(p) << ',' << format_double(e) << ','
         << format_double(e * (1.0 - p)) << '\n';
    }
  }
}

void write_curves_csv(std::ostream& os, const std::vector<DiagnosticsCurve>& curves,
                      const Provenance& prov) {
  os << prov.comment_line() << "\nx,value,source,label\n";
  for (const auto& c : curves) {
    for (const auto& [x, v] : c.points) {
      os << format_double(x) << ',' << format_double(v) << ',' << c.source << ',' << c.label << '\n';
    }
  }
}

void write_partition_csv(std::ostream& os, const Partition& part,
                         std::span<const std::string> labels, const Provenance& prov) {
  os << prov.comment_line() << "\nnode_id,community\n";
  for (std::size_t i = 0; i < part.size(); ++i) os << labels[i] << ',' << part.assignment[i] << '\n';
}

void write_splits_csv(std::ostream& os, const PartitionResult& result, const Provenance& prov) {
  os << prov.comment_line() << "\nsplit,dendrogram_node,size,eigenvalue,q_contribution,q_total\n";
  std::size_t split = 0;
  for (std::size_t id = 0; id < result.dendrogram.nodes.size(); ++id) {
    const auto& node = result.dendrogram.nodes[id];
    if (node.is_leaf()) continue;
    os << split + 1 << ',' << id << ',' << node.members.size() << ','
       << format_double(node.eigenvalue) << ',' << format_double(node.q_contribution) << ','
       << format_double(result.q_after_split.at(split)) << '\n';
    ++split;
  }
}

void write_cooccurrence_csv(std::ostream& os, const CooccurrenceMatrix& cm,
                            std::span<const std::string> labels, const Provenance& prov) {
  os << prov.comment_line() << " runs=" << cm.run_count << "\ni,j,count\n";
  for (std::size_t i = 0; i < cm.node_count; ++i) {
    for (std::size_t j = i + 1; j < cm.node_count; ++j) {
      os << labels[i] << ',' << labels[j] << ',' << cm(i, j) << '\n';
    }
  }
}

void write_runs_csv(std::ostream& os, const std::vector<RunOutcome>& runs,
                    std::span<const std::string> labels, const Provenance& prov) {
  os << prov.comment_line() << "\nrun,seed,node_id,community\n";
  for (const auto& run : runs) {
    if (!run.ok()) continue;
    for (std::size_t i = 0; i < run.partition->size(); ++i) {
      os << run.index << ',' << run.seed << ',' << labels[i] << ',' << run.partition->assignment[i]
         << '\n';
    }
  }
}

json model_summary_json(const LinkProbabilityModel& model, const ConstraintResiduals& residuals,
                        double entropy, const Provenance& prov) {
  return json{{"N", model.size()},
              {"L", static_cast<long long>(model.links())},
              {"model_tag", to_string(model.tag())},
              {"entropy", entropy},
              {"max_constraint_residual", residuals.max()},
              {"degree_residual", residuals.degree},
              {"kplus_residual", residuals.kplus},
              {"expected_multi_edge_pairs", residuals.multi_edge_pairs},
              {"meta", prov.to_json()}};
}

json search_json(const SearchResult& result, KPlusMode mode, Direction direction,
                 const Provenance& prov) {
  return json{{"mode", to_string(mode)},
              {"direction", to_string(direction)},
              {"entropy", result.entropy},
              {"proposals_used", result.proposals_used},
              {"accepted_count", result.accepted_count},
              {"meta", prov.to_json()}};
}

json curve_json(const DiagnosticsCurve& curve) {
  json points = json::array();
  for (const auto& [x, v] : curve.points) points.push_back({x, v});
  return json{{"label", curve.label}, {"source", curve.source}, {"points", points}};
}

namespace {

json dendrogram_node_json(const Dendrogram& d, int id, std::span<const std::string> labels) {
  const auto& node = d.nodes[static_cast<std::size_t>(id)];
  json members = json::array();
  for (auto m : node.members) members.push_back(labels[m]);
  json out{{"size", node.members.size()}, {"members", members}, {"eigenvalue", node.eigenvalue}};
  if (!node.is_leaf()) {
    out["q_contribution"] = node.q_contribution;
    out["children"] = json::array({dendrogram_node_json(d, node.left, labels),
                                   dendrogram_node_json(d, node.right, labels)});
  }
  return out;
}

}  // namespace

json dendrogram_json(const Dendrogram& dendrogram, std::span<const std::string> labels) {
  if (dendrogram.nodes.empty()) return json::object();
  return dendrogram_node_json(dendrogram, 0, labels);
}

json cores_json(const std::vector<std::vector<std::size_t>>& cores,
                std::span<const std::string> labels) {
  json out = json::array();
  for (const auto& core : cores) {
    json ids = json::array();
    for (auto i : core) ids.push_back(labels[i]);
    out.push_back(ids);
  }
  return out;
}

}  // namespace richclub
