#pragma once

// CSV / JSON writers for every file format the command line produces. CSV
// files start with one '#' provenance line followed by the column header.

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "richclub/communities.hpp"
#include "richclub/consensus.hpp"
#include "richclub/diagnostics.hpp"
#include "richclub/graph.hpp"
#include "richclub/kplus_search.hpp"
#include "richclub/maxent.hpp"

namespace richclub {

inline constexpr const char* kToolName = "richclub";
inline constexpr const char* kToolVersion = "0.1.0";

struct Provenance {
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
  std::string config_hash;

  std::string comment_line() const;
  nlohmann::json to_json() const;
};

/// 64-bit FNV-1a of `text` as 16 lowercase hex digits.
std::string config_hash(const std::string& text);

/// Shortest round-trip decimal form.
std::string format_double(double value);

void write_edge_list(std::ostream& os, const MultiGraph& g, std::span<const std::string> labels,
                     const Provenance& prov);
void write_ranking_csv(std::ostream& os, const Graph& g, const Ranking& ranking,
                       const KPlusSequence& kp, const Provenance& prov);
void write_kplus_csv(std::ostream& os, std::span<const int> k, const KPlusSequence& kp,
                     const Provenance& prov);
void write_trace_csv(std::ostream& os, std::span<const double> trace, const Provenance& prov);
/// Upper triangle in one-based ranks; `positive_only` drops p = 0 pairs.
void write_probabilities_csv(std::ostream& os, const LinkProbabilityModel& model,
                             bool positive_only, const Provenance& prov);
void write_curves_csv(std::ostream& os, const std::vector<DiagnosticsCurve>& curves,
                      const Provenance& prov);
void write_partition_csv(std::ostream& os, const Partition& part,
                         std::span<const std::string> labels, const Provenance& prov);
void write_splits_csv(std::ostream& os, const PartitionResult& result, const Provenance& prov);
void write_cooccurrence_csv(std::ostream& os, const CooccurrenceMatrix& cm,
                            std::span<const std::string> labels, const Provenance& prov);
void write_runs_csv(std::ostream& os, const std::vector<RunOutcome>& runs,
                    std::span<const std::string> labels, const Provenance& prov);

nlohmann::json model_summary_json(const LinkProbabilityModel& model,
                                  const ConstraintResiduals& residuals, double entropy,
                                  const Provenance& prov);
nlohmann::json search_json(const SearchResult& result, KPlusMode mode, Direction direction,
                           const Provenance& prov);
nlohmann::json curve_json(const DiagnosticsCurve& curve);
nlohmann::json dendrogram_json(const Dendrogram& dendrogram, std::span<const std::string> labels);
nlohmann::json cores_json(const std::vector<std::vector<std::size_t>>& cores,
                          std::span<const std::string> labels);

}  // namespace richclub
