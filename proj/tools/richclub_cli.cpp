// richclub command line front end: ensemble, diagnose, communities, consensus.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "richclub/communities.hpp"
#include "richclub/consensus.hpp"
#include "richclub/diagnostics.hpp"
#include "richclub/errors.hpp"
#include "richclub/export.hpp"
#include "richclub/graph.hpp"
#include "richclub/kplus_search.hpp"
#include "richclub/maxent.hpp"
#include "richclub/null_models.hpp"
#include "richclub/random.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace richclub;

namespace {

enum ExitCode { kOk = 0, kOther = 1, kInfeasible = 2, kParse = 3, kNumerical = 4 };

struct Options {
  std::string command;
  std::string input;
  std::string model = "ME1";
  std::string model2;
  std::uint64_t seed = 0;
  std::size_t runs = 100;
  std::string direction = "MAXIMIZE";
  std::optional<std::size_t> stall_limit;
  std::optional<std::size_t> max_proposals;
  std::optional<std::size_t> swaps;
  std::string out = ".";
  std::string format = "both";
  bool string_ids = false;
  bool dump_probabilities = false;
  bool strict = false;
  std::optional<std::size_t> threshold;
  std::size_t threads = 1;
  std::string ipr_curve;

  bool csv() const { return format != "json"; }
  bool json_out() const { return format != "csv"; }
};

class Session {
 public:
  explicit Session(const Options& opt) : opt_(opt) {
    fs::create_directories(opt.out);
    std::string input_bytes;
    const std::string source = opt.input.empty() ? opt.ipr_curve : opt.input;
    if (!source.empty()) {
      std::ifstream in(source, std::ios::binary);
      if (!in) throw ParseError(0, "cannot open " + source);
      std::ostringstream ss;
      ss << in.rdbuf();
      input_bytes = ss.str();
    }
    // Everything that changes the output bytes, except the seed.
    std::ostringstream cfg;
    cfg << opt.command << '|' << config_hash(input_bytes) << '|' << opt.model << '|' << opt.model2 << '|'
        << opt.direction << '|' << (opt.stall_limit ? std::to_string(*opt.stall_limit) : "-") << '|'
        << (opt.max_proposals ? std::to_string(*opt.max_proposals) : "-") << '|'
        << (opt.swaps ? std::to_string(*opt.swaps) : "-") << '|' << opt.runs << '|' << opt.strict << '|'
        << (opt.threshold ? std::to_string(*opt.threshold) : "-") << '|' << opt.string_ids << '|'
        << opt.dump_probabilities;
    prov_ = Provenance{kToolVersion, opt.seed, config_hash(cfg.str())};
  }

  const Provenance& prov() const { return prov_; }

  std::ofstream open(const std::string& name) {
    const auto path = fs::path(opt_.out) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    written_.push_back(path.string());
    return os;
  }

  void write_json(const std::string& name, json body) {
    if (!body.contains("meta")) body["meta"] = prov_.to_json();
    open(name) << body.dump(2) << '\n';
  }

  void report() const {
    for (const auto& p : written_) std::cout << p << '\n';
  }

 private:
  const Options& opt_;
  Provenance prov_;
  std::vector<std::string> written_;
};

Graph load_input(const Options& opt) {
  if (opt.input.empty()) throw std::invalid_argument("--input is required");
  return load_edge_list_file(opt.input, opt.string_ids ? IdKind::String : IdKind::Integer);
}

bool is_maxent(const std::string& m) { return m == "ME1" || m == "ME2" || m == "ME3"; }
bool is_rr(const std::string& m) { return m == "RR1" || m == "RR2"; }

ModelRecipe recipe_from(const Options& opt) {
  ModelRecipe r;
  r.null = null_kind_from_string(opt.model);
  if (!opt.model2.empty()) r.second = null_kind_from_string(opt.model2);
  r.direction = direction_from_string(opt.direction);
  r.stall_limit = opt.stall_limit;
  r.max_proposals = opt.max_proposals;
  r.partition.strict = opt.strict;
  return r;
}

/// ME model on the deterministic ranking; searched models use `seed`.
BuiltModel maxent_model(const Graph& g, const Ranking& ranking, const std::string& name, const Options& opt,
                        std::uint64_t seed) {
  return build_maxent_model(g, ranking, model_tag_from_string(name), recipe_from(opt), seed);
}

RandomizedGraph randomize(const Graph& g, const std::string& name, const Options& opt, std::uint64_t seed) {
  RRConfig cfg;
  cfg.variant = name == "RR1" ? RRVariant::RR1 : RRVariant::RR2;
  cfg.swap_attempts = opt.swaps;
  cfg.seed = seed;
  return rr_randomize(g, cfg);
}

/// Rank-keyed phi and k+ curves for the data and every searched model.
void add_rank_curves(const Graph& g, const KPlusSequence& observed,
                     const std::vector<std::pair<std::string, const KPlusSequence*>>& models,
                     std::vector<DiagnosticsCurve>& curves) {
  auto phi_curve = [&](const KPlusSequence& kp, const std::string& source) {
    DiagnosticsCurve c{{}, "phi_rank", source};
    for (std::size_t r = 2; r <= kp.size(); ++r) c.points.emplace_back(r, rich_club_coefficient(kp, r));
    return c;
  };
  auto kplus_curve = [&](const KPlusSequence& kp, const std::string& source) {
    DiagnosticsCurve c{{}, "kplus_rank", source};
    for (std::size_t r = 0; r < kp.size(); ++r) c.points.emplace_back(r + 1, kp[r]);
    return c;
  };
  if (g.node_count() >= 2) curves.push_back(phi_curve(observed, "DATA"));
  curves.push_back(kplus_curve(observed, "DATA"));
  for (const auto& [name, kp] : models) {
    if (g.node_count() >= 2) curves.push_back(phi_curve(*kp, name));
    curves.push_back(kplus_curve(*kp, name));
  }
}

int cmd_ensemble(const Options& opt) {
  Session s(opt);
  const auto g = load_input(opt);
  const auto ranking = rank_nodes(g);
  const auto k = ranked_degrees(g, ranking);

  if (is_maxent(opt.model)) {
    const auto built = maxent_model(g, ranking, opt.model, opt, opt.seed);
    const auto& m = built.model;
    const auto residuals = verify_soft_constraints(m);
    const double entropy = entropy_fast(k, m.kplus());
    const double max_residual = std::max(residuals.degree, residuals.kplus);
    if (opt.csv()) {
      auto os = s.open("ranking.csv");
      write_ranking_csv(os, g, ranking, m.kplus(), s.prov());
      auto ks = s.open("kplus.csv");
      write_kplus_csv(ks, k, m.kplus(), s.prov());
      if (built.search) {
        auto ts = s.open("trace.csv");
        write_trace_csv(ts, built.search->entropy_trace, s.prov());
      }
      if (opt.dump_probabilities) {
        auto ps = s.open("probabilities.csv");
        write_probabilities_csv(ps, m, false, s.prov());
      }
    }
    if (opt.json_out()) {
      auto summary = model_summary_json(m, residuals, entropy, s.prov());
      summary["cutoff_degree"] = cutoff_degree(g);
      summary["kplus"] = m.kplus().values;
      summary["degrees"] = k;
      s.write_json("model.json", summary);
      if (built.search) {
        s.write_json("search.json",
                     search_json(*built.search, kplus_mode_for(m.tag()), direction_from_string(opt.direction), s.prov()));
      }
    }
    std::cerr << opt.model << ": N=" << m.size() << " L=" << m.links() << " entropy=" << format_double(entropy)
              << " max residual=" << format_double(max_residual) << '\n';
  } else if (opt.model == "NG") {
    const NGModel ng(g);
    if (opt.csv() && opt.dump_probabilities) {
      auto os = s.open("probabilities.csv");
      os << s.prov().comment_line() << "\ni,j,e\n";
      for (std::size_t i = 0; i < g.node_count(); ++i)
        for (std::size_t j = i + 1; j < g.node_count(); ++j)
          os << g.label(i) << ',' << g.label(j) << ',' << format_double(ng.expected_links(i, j)) << '\n';
    }
    if (opt.json_out()) {
      s.write_json("model.json", json{{"N", g.node_count()},
                                      {"L", g.edge_count()},
                                      {"model_tag", "NG"},
                                      {"k_max", g.max_degree()},
                                      {"cutoff_degree", cutoff_degree(g)}});
    }
  } else if (is_rr(opt.model)) {
    const auto rr = randomize(g, opt.model, opt, opt.seed);
    {
      auto os = s.open("randomized.edgelist");
      write_edge_list(os, rr.graph, g.labels(), s.prov());
    }
    if (opt.json_out()) {
      s.write_json("model.json", json{{"N", g.node_count()},
                                      {"L", g.edge_count()},
                                      {"model_tag", opt.model},
                                      {"swaps_attempted", rr.swaps_attempted},
                                      {"swaps_accepted", rr.swaps_accepted},
                                      {"multi_edges", rr.graph.has_multi_edges()}});
    }
  } else {
    throw std::invalid_argument("unknown model '" + opt.model + "'");
  }
  s.report();
  return kOk;
}

DiagnosticsCurve read_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  DiagnosticsCurve c{{}, "ipr", "INPUT"};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (line.empty() || line[0] == '#' || line.rfind("x,", 0) == 0) continue;
    std::istringstream fields(line);
    double x = 0;
    double v = 0;
    char comma = 0;
    if (!(fields >> x >> comma >> v) || comma != ',') throw ParseError(no, "expected 'x,value'");
    c.points.emplace_back(x, v);
  }
  return c;
}

int cmd_diagnose(const Options& opt) {
  Session s(opt);
  if (!opt.ipr_curve.empty() && opt.input.empty()) {
    const auto curve = read_curve(opt.ipr_curve);
    const auto cut = detect_cutoff_from_ipr(curve);
    if (opt.json_out()) s.write_json("diagnostics.json", json{{"cutoff", cut ? json(*cut) : json("none")}});
    std::cout << "cutoff: " << (cut ? format_double(*cut) : "none") << '\n';
    s.report();
    return kOk;
  }

  const auto g = load_input(opt);
  const auto ranking = rank_nodes(g);
  const auto observed = kplus_from_graph(g, ranking);
  const double baseline = uncorrelated_knn(g);

  std::vector<DiagnosticsCurve> curves{knn_data(g)};
  {
    DiagnosticsCurve flat{{}, "knn_uncorrelated", "DATA"};
    for (const auto& [x, v] : curves[0].points) flat.points.emplace_back(x, baseline);
    curves.push_back(std::move(flat));
  }
  json models = json::object();
  std::vector<BuiltModel> built;
  std::vector<std::string> names{opt.model};
  if (!opt.model2.empty()) names.push_back(opt.model2);

  for (std::size_t slot = 0; slot < names.size(); ++slot) {
    const auto& name = names[slot];
    const auto seed = derive_seed(opt.seed, slot + 1);
    json entry;
    if (is_maxent(name)) {
      built.push_back(maxent_model(g, ranking, name, opt, seed));
      const auto& m = built.back().model;
      auto knn = knn_ensemble(m);
      auto ipr = ipr_curve(m);
      const auto cut = detect_cutoff_from_ipr(ipr);
      entry["knn_aggregate_deviation"] = aggregate_deviation(knn, baseline);
      entry["ipr_aggregate_deviation"] = aggregate_deviation(ipr, ipr.points.empty() ? 0.0 : ipr.points.front().second);
      entry["cutoff"] = cut ? json(*cut) : json("none");
      entry["curves"] = json::array({curve_json(knn), curve_json(ipr)});
      auto cv = cv_curve(m);
      entry["curves"].push_back(curve_json(cv));
      curves.push_back(std::move(knn));
      curves.push_back(std::move(ipr));
      curves.push_back(std::move(cv));
    } else if (name == "NG") {
      auto knn = knn_ensemble(NGModel(g));
      entry["knn_aggregate_deviation"] = aggregate_deviation(knn, baseline);
      entry["curves"] = json::array({curve_json(knn)});
      curves.push_back(std::move(knn));
    } else if (is_rr(name)) {
      const auto rr = randomize(g, name, opt, seed);
      auto knn = knn_data(rr.graph, name);
      entry["knn_aggregate_deviation"] = aggregate_deviation(knn, baseline);
      entry["curves"] = json::array({curve_json(knn)});
      curves.push_back(std::move(knn));
    } else {
      throw std::invalid_argument("unknown model '" + name + "'");
    }
    models[name] = entry;
  }

  std::vector<std::pair<std::string, const KPlusSequence*>> kp_models;
  for (const auto& b : built) kp_models.emplace_back(to_string(b.model.tag()), &b.model.kplus());
  add_rank_curves(g, observed, kp_models, curves);

  if (opt.csv()) {
    auto os = s.open("curves.csv");
    write_curves_csv(os, curves, s.prov());
  }
  if (opt.json_out()) {
    s.write_json("diagnostics.json", json{{"uncorrelated_knn", baseline},
                                          {"cutoff_degree", cutoff_degree(g)},
                                          {"data", curve_json(curves[0])},
                                          {"models", models}});
  }
  s.report();
  return kOk;
}

int cmd_communities(const Options& opt) {
  Session s(opt);
  const auto g = load_input(opt);
  const auto recipe = recipe_from(opt);
  const auto ranking = rank_nodes(g);
  const auto first = build_null(g, ranking, recipe.null, recipe, derive_seed(opt.seed, 1));
  ModularityMatrix m;
  if (recipe.second) {
    const auto second = build_null(g, ranking, *recipe.second, recipe, derive_seed(opt.seed, 2));
    m = soft_modularity_matrix(first, second);
  } else {
    m = standard_modularity_matrix(g, first);
  }
  const auto res = recursive_partition(m, recipe.partition);
  if (opt.csv()) {
    auto ps = s.open("partition.csv");
    write_partition_csv(ps, res.partition, g.labels(), s.prov());
    auto ss = s.open("splits.csv");
    write_splits_csv(ss, res, s.prov());
  }
  if (opt.json_out()) {
    s.write_json("dendrogram.json", json{{"mode", recipe.second ? "soft" : "standard"},
                                         {"models", recipe.second ? json::array({opt.model, opt.model2})
                                                                  : json::array({opt.model})},
                                         {"communities", res.partition.community_count},
                                         {"q_initial", res.q_initial},
                                         {"q_final", res.q_final},
                                         {"q_best", res.q_best},
                                         {"clamped_pairs", m.clamped_pairs},
                                         {"tree", dendrogram_json(res.dendrogram, g.labels())}});
  }
  std::cerr << res.partition.community_count << " communities, Q = " << format_double(res.q_final) << '\n';
  s.report();
  return kOk;
}

int cmd_consensus(const Options& opt) {
  Session s(opt);
  const auto g = load_input(opt);
  const auto recipe = recipe_from(opt);
  if (opt.runs < 1) throw std::invalid_argument("--runs must be >= 1");
  // fail fast on a null that cannot exist for any ranking
  if (recipe.null == NullKind::NG || (recipe.second && *recipe.second == NullKind::NG)) NGModel check(g);

  const auto runs = randomized_rank_runs(g, recipe, opt.runs, opt.seed, opt.threads);
  std::vector<Partition> parts;
  json failures = json::array();
  RunError first_error = RunError::None;
  for (const auto& r : runs) {
    if (r.ok()) {
      parts.push_back(*r.partition);
    } else {
      failures.push_back(json{{"run", r.index}, {"seed", r.seed}, {"error", r.error}});
      if (first_error == RunError::None) first_error = r.error_kind;
    }
  }
  if (opt.json_out() || parts.empty()) {
    s.write_json("run_report.json", json{{"runs", opt.runs}, {"succeeded", parts.size()}, {"failures", failures}});
  }
  if (parts.empty()) {
    std::cerr << "error: all " << opt.runs << " runs failed; first: " << runs.front().error << '\n';
    s.report();
    return first_error == RunError::Infeasible ? kInfeasible : first_error == RunError::Numerical ? kNumerical : kOther;
  }

  const auto cm = cooccurrence(parts);
  const auto cores = invariant_cores(cm, g, opt.threshold);
  if (opt.csv()) {
    auto cs = s.open("cooccurrence.csv");
    write_cooccurrence_csv(cs, cm, g.labels(), s.prov());
    auto rs = s.open("runs.csv");
    write_runs_csv(rs, runs, g.labels(), s.prov());
  }
  if (opt.json_out()) {
    s.write_json("cores.json", json{{"runs", cm.run_count},
                                    {"threshold", opt.threshold.value_or(cm.run_count)},
                                    {"cores", cores_json(cores, g.labels())}});
  }
  std::cerr << parts.size() << "/" << opt.runs << " runs, " << cores.size() << " invariant cores\n";
  s.report();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal-entropy rich-club null models, diagnostics and soft communities"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::string> all_models{"ME1", "ME2", "ME3", "NG", "RR1", "RR2"};
  const std::vector<std::string> null_models{"ME1", "ME2", "ME3", "NG"};

  auto common = [&](CLI::App* sub, const std::vector<std::string>& models, bool need_input) {
    auto* in = sub->add_option("-i,--input", opt.input, "edge list file (one 'u v' pair per line)");
    if (need_input) in->required()->check(CLI::ExistingFile);
    sub->add_option("-m,--model", opt.model, "model")->check(CLI::IsMember(models))->capture_default_str();
    sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    sub->add_option("--direction", opt.direction, "k+ search direction")
        ->check(CLI::IsMember({"MAXIMIZE", "MINIMIZE", "max", "min"}))
        ->capture_default_str();
    sub->add_option("--stall-limit", opt.stall_limit, "rejected proposals before the k+ search stops (default 50 N)");
    sub->add_option("--max-proposals", opt.max_proposals, "hard cap on k+ search proposals (default 5000 N)");
    sub->add_option("-o,--out", opt.out, "output directory (created if absent)")->capture_default_str();
    sub->add_option("--format", opt.format, "output formats")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    sub->add_flag("--string-ids", opt.string_ids, "accept non-integer node ids");
  };

  auto* ensemble = app.add_subcommand("ensemble", "build one model and write its sequences and summary");
  common(ensemble, all_models, true);
  ensemble->add_flag("--dump-probabilities", opt.dump_probabilities, "write every pair probability");
  ensemble->add_option("--swaps", opt.swaps, "double-edge swap attempts for RR1/RR2 (default 20 L)");

  auto* diagnose = app.add_subcommand("diagnose", "knn, coefficient of variation and IPR curves");
  common(diagnose, all_models, false);
  diagnose->add_option("--model2", opt.model2, "second model to compare")->check(CLI::IsMember(all_models));
  diagnose->add_option("--swaps", opt.swaps, "double-edge swap attempts for RR1/RR2 (default 20 L)");
  diagnose->add_option("--ipr-curve", opt.ipr_curve, "run cut-off detection on an 'x,value' CSV instead")
      ->check(CLI::ExistingFile);

  auto* communities = app.add_subcommand("communities", "recursive spectral partition");
  common(communities, null_models, true);
  communities->add_option("--model2", opt.model2, "second model: soft mode")->check(CLI::IsMember(null_models));
  communities->add_flag("--strict", opt.strict, "accept only splits that increase Q");

  auto* consensus = app.add_subcommand("consensus", "co-occurrence over randomised-rank runs");
  common(consensus, null_models, true);
  consensus->add_option("--model2", opt.model2, "second model: soft mode")->check(CLI::IsMember(null_models));
  consensus->add_option("--runs", opt.runs, "number of runs R")->capture_default_str();
  consensus->add_option("--threshold", opt.threshold, "minimum co-occurrence for core links (default R)");
  consensus->add_option("--threads", opt.threads, "worker threads, 0 = hardware")->capture_default_str();
  consensus->add_flag("--strict", opt.strict, "accept only splits that increase Q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*ensemble) {
      opt.command = "ensemble";
      return cmd_ensemble(opt);
    }
    if (*diagnose) {
      opt.command = "diagnose";
      if (opt.input.empty() && opt.ipr_curve.empty()) throw std::invalid_argument("--input or --ipr-curve is required");
      return cmd_diagnose(opt);
    }
    if (*communities) {
      opt.command = "communities";
      return cmd_communities(opt);
    }
    opt.command = "consensus";
    return cmd_consensus(opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const InfeasibleNG& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const InfeasibleConstraints& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const SingularWeights& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
}
