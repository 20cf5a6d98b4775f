#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <Eigen/Dense>

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

namespace py = pybind11;
using namespace richclub;

namespace {

template <typename T>
std::vector<T> to_vector(std::span<const T> s) {
  return {s.begin(), s.end()};
}

py::list curve_points(const DiagnosticsCurve& c) {
  py::list out;
  for (const auto& [x, v] : c.points) out.append(py::make_tuple(x, v));
  return out;
}

py::dict curve_dict(const DiagnosticsCurve& c) {
  py::dict d;
  d["label"] = c.label;
  d["source"] = c.source;
  d["points"] = curve_points(c);
  return d;
}

ModelRecipe make_recipe(const std::string& model, const std::optional<std::string>& model2,
                        const std::string& direction, bool strict) {
  ModelRecipe r;
  r.null = null_kind_from_string(model);
  if (model2) r.second = null_kind_from_string(*model2);
  r.direction = direction_from_string(direction);
  r.partition.strict = strict;
  return r;
}

Eigen::MatrixXd probability_matrix(const LinkProbabilityModel& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(n, n);
  std::vector<double> row(m.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    m.row(static_cast<std::size_t>(i), row);
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = row[static_cast<std::size_t>(j)];
  }
  return out;
}

py::dict partition_dict(const PartitionResult& res) {
  py::dict d;
  d["assignment"] = res.partition.assignment;
  d["community_count"] = res.partition.community_count;
  d["q_initial"] = res.q_initial;
  d["q_final"] = res.q_final;
  d["q_best"] = res.q_best;
  d["q_after_split"] = res.q_after_split;
  return d;
}

}  // namespace

PYBIND11_MODULE(_richclub, m) {
  m.doc() = "Maximal-entropy rich-club null models, diagnostics and soft communities";
  m.attr("__version__") = kToolVersion;

  auto base = py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InfeasibleNG>(m, "InfeasibleNG", PyExc_RuntimeError);
  py::register_exception<InfeasibleConstraints>(m, "InfeasibleConstraints", PyExc_RuntimeError);
  py::register_exception<SingularWeights>(m, "SingularWeights", PyExc_RuntimeError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  (void)base;

  py::class_<Graph>(m, "Graph")
      .def_static("from_edges", &Graph::from_edges, py::arg("node_count"), py::arg("edges"),
                  py::arg("labels") = std::vector<std::string>{})
      .def_static(
          "load", [](const std::string& path, bool string_ids) {
            return load_edge_list_file(path, string_ids ? IdKind::String : IdKind::Integer);
          },
          py::arg("path"), py::arg("string_ids") = false)
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("edges", [](const Graph& g) { return to_vector(g.edges()); })
      .def_property_readonly("degrees", [](const Graph& g) { return to_vector(g.degrees()); })
      .def_property_readonly("labels", [](const Graph& g) { return to_vector(g.labels()); })
      .def("has_edge", &Graph::has_edge)
      .def("__repr__", [](const Graph& g) {
        return "Graph(N=" + std::to_string(g.node_count()) + ", L=" + std::to_string(g.edge_count()) + ")";
      });

  py::class_<Ranking>(m, "Ranking")
      .def_readonly("order", &Ranking::order)
      .def_readonly("rank_of", &Ranking::rank_of);

  m.def(
      "rank_nodes",
      [](const Graph& g, std::optional<std::uint64_t> seed) {
        return seed ? rank_nodes(g, RankPolicy::SeededRandom, seed) : rank_nodes(g);
      },
      py::arg("graph"), py::arg("seed") = py::none(),
      "Nonincreasing-degree ranking; ties by id, or shuffled when a seed is given.");
  m.def("ranked_degrees", &ranked_degrees);
  m.def("kplus", [](const Graph& g, const Ranking& r) { return kplus_from_graph(g, r).values; });
  m.def(
      "rich_club_coefficient",
      [](const std::vector<int>& kp, std::size_t r) { return rich_club_coefficient({kp, KPlusMode::Observed}, r); },
      py::arg("kplus"), py::arg("r"));
  m.def("cutoff_degree", &cutoff_degree);

  py::class_<LinkProbabilityModel>(m, "LinkProbabilityModel")
      .def(py::init([](std::vector<int> k, std::vector<int> kp, const std::string& tag) {
             const auto t = model_tag_from_string(tag);
             return LinkProbabilityModel(std::move(k), {std::move(kp), kplus_mode_for(t)}, t);
           }),
           py::arg("degrees"), py::arg("kplus"), py::arg("tag") = "ME3")
      .def_property_readonly("size", &LinkProbabilityModel::size)
      .def_property_readonly("links", &LinkProbabilityModel::links)
      .def_property_readonly("tag", [](const LinkProbabilityModel& mdl) { return to_string(mdl.tag()); })
      .def_property_readonly("degrees", [](const LinkProbabilityModel& mdl) { return to_vector(mdl.degrees()); })
      .def_property_readonly("kplus", [](const LinkProbabilityModel& mdl) { return mdl.kplus().values; })
      .def_property_readonly("weights", [](const LinkProbabilityModel& mdl) { return mdl.weights().w; })
      .def("probability", &LinkProbabilityModel::probability, py::arg("i"), py::arg("j"))
      .def("expected_links", &LinkProbabilityModel::expected_links, py::arg("i"), py::arg("j"))
      .def("variance", &LinkProbabilityModel::variance, py::arg("i"), py::arg("j"))
      .def("probability_matrix", &probability_matrix, "Dense rank-indexed p(i, j); zero diagonal.")
      .def("entropy", [](const LinkProbabilityModel& mdl) { return entropy_fast(mdl.degrees(), mdl.kplus()); })
      .def("residuals",
           [](const LinkProbabilityModel& mdl) {
             const auto r = verify_soft_constraints(mdl);
             return py::dict(py::arg("degree") = r.degree, py::arg("kplus") = r.kplus,
                             py::arg("multi_edge_pairs") = r.multi_edge_pairs);
           })
      .def("sample", &sample_network, py::arg("seed"), "L independent pair draws in rank space.");

  m.def(
      "compute_weights",
      [](const std::vector<int>& k, const std::vector<int>& kp) {
        return compute_weights(k, {kp, KPlusMode::Observed}).w;
      },
      py::arg("degrees"), py::arg("kplus"));

  m.def(
      "maxent_model",
      [](const Graph& g, const std::string& model, std::uint64_t seed, const std::string& direction,
         std::optional<std::size_t> stall_limit, std::optional<std::size_t> max_proposals) {
        ModelRecipe recipe;
        recipe.direction = direction_from_string(direction);
        recipe.stall_limit = stall_limit;
        recipe.max_proposals = max_proposals;
        return build_maxent_model(g, rank_nodes(g), model_tag_from_string(model), recipe, seed).model;
      },
      py::arg("graph"), py::arg("model") = "ME1", py::arg("seed") = 0, py::arg("direction") = "MAXIMIZE",
      py::arg("stall_limit") = py::none(), py::arg("max_proposals") = py::none(),
      "ME1 uses the observed k+; ME2 and ME3 run the greedy entropy search.");

  m.def(
      "greedy_search",
      [](const std::vector<int>& k, const std::string& mode, std::uint64_t seed, const std::string& direction,
         std::optional<std::size_t> stall_limit, std::optional<std::size_t> max_proposals) {
        SearchConfig cfg;
        cfg.mode = kplus_mode_from_string(mode);
        cfg.direction = direction_from_string(direction);
        cfg.seed = seed;
        cfg.stall_limit = stall_limit;
        cfg.max_proposals = max_proposals;
        const auto r = greedy_search(k, cfg);
        return py::dict(py::arg("kplus") = r.kplus.values, py::arg("entropy") = r.entropy,
                        py::arg("trace") = r.entropy_trace, py::arg("proposals") = r.proposals_used,
                        py::arg("accepted") = r.accepted_count);
      },
      py::arg("degrees"), py::arg("mode") = "ME2", py::arg("seed") = 0, py::arg("direction") = "MAXIMIZE",
      py::arg("stall_limit") = py::none(), py::arg("max_proposals") = py::none());

  m.def(
      "ng_expected_links",
      [](const Graph& g) {
        const NGModel ng(g);
        const auto n = static_cast<Eigen::Index>(g.node_count());
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
          for (Eigen::Index j = 0; j < n; ++j)
            if (i != j) out(i, j) = ng.expected_links(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        return out;
      },
      py::arg("graph"));

  m.def(
      "rr_randomize",
      [](const Graph& g, const std::string& variant, std::uint64_t seed, std::optional<std::size_t> swaps) {
        RRConfig cfg;
        if (variant == "RR1") {
          cfg.variant = RRVariant::RR1;
        } else if (variant == "RR2") {
          cfg.variant = RRVariant::RR2;
        } else {
          throw std::invalid_argument("variant must be RR1 or RR2");
        }
        cfg.seed = seed;
        cfg.swap_attempts = swaps;
        const auto r = rr_randomize(g, cfg);
        return py::dict(py::arg("edges") = r.graph.edges, py::arg("swaps_attempted") = r.swaps_attempted,
                        py::arg("swaps_accepted") = r.swaps_accepted);
      },
      py::arg("graph"), py::arg("variant") = "RR1", py::arg("seed") = 0, py::arg("swaps") = py::none());

  m.def("uncorrelated_knn", py::overload_cast<const Graph&>(&uncorrelated_knn));
  m.def("knn_data", [](const Graph& g) { return curve_dict(knn_data(g)); });
  m.def("knn_ensemble", [](const LinkProbabilityModel& mdl) { return curve_dict(knn_ensemble(mdl)); });
  m.def("knn_ng", [](const Graph& g) { return curve_dict(knn_ensemble(NGModel(g))); });
  m.def("cv_curve", [](const LinkProbabilityModel& mdl) { return curve_dict(cv_curve(mdl)); });
  m.def("ipr_curve", [](const LinkProbabilityModel& mdl) { return curve_dict(ipr_curve(mdl)); });
  m.def("coefficient_of_variation", &coefficient_of_variation, py::arg("model"), py::arg("rank"));
  m.def("inverse_participation", &inverse_participation, py::arg("model"), py::arg("rank"));
  m.def(
      "detect_cutoff",
      [](std::vector<std::pair<double, double>> points, double rel_tol) {
        return detect_cutoff_from_ipr({std::move(points), "ipr", "INPUT"}, rel_tol);
      },
      py::arg("points"), py::arg("rel_tol") = 0.10, "Degree where an IPR curve departs from its plateau, or None.");
  m.def(
      "aggregate_deviation",
      [](std::vector<std::pair<double, double>> points, double baseline) {
        return aggregate_deviation({std::move(points), "", ""}, baseline);
      },
      py::arg("points"), py::arg("baseline"));

  m.def(
      "communities",
      [](const Graph& g, const std::string& model, std::optional<std::string> model2, std::uint64_t seed,
         bool strict, const std::string& direction) {
        const auto recipe = make_recipe(model, model2, direction, strict);
        const auto ranking = rank_nodes(g);
        const auto first = build_null(g, ranking, recipe.null, recipe, derive_seed(seed, 1));
        const auto mat = recipe.second
                             ? soft_modularity_matrix(first, build_null(g, ranking, *recipe.second, recipe,
                                                                        derive_seed(seed, 2)))
                             : standard_modularity_matrix(g, first);
        return partition_dict(recursive_partition(mat, recipe.partition));
      },
      py::arg("graph"), py::arg("model") = "ME1", py::arg("model2") = py::none(), py::arg("seed") = 0,
      py::arg("strict") = false, py::arg("direction") = "MAXIMIZE",
      "Recursive spectral partition; a second model switches to soft modularity.");

  m.def(
      "consensus",
      [](const Graph& g, const std::string& model, std::optional<std::string> model2, std::size_t runs,
         std::uint64_t seed, std::size_t threads, std::optional<std::size_t> threshold, bool strict) {
        const auto recipe = make_recipe(model, model2, "MAXIMIZE", strict);
        std::vector<RunOutcome> outcomes;
        {
          py::gil_scoped_release release;
          outcomes = randomized_rank_runs(g, recipe, runs, seed, threads);
        }
        std::vector<Partition> parts;
        py::list failures;
        for (const auto& r : outcomes) {
          if (r.ok()) {
            parts.push_back(*r.partition);
          } else {
            failures.append(py::make_tuple(r.index, r.error));
          }
        }
        py::dict out;
        out["failures"] = failures;
        out["runs"] = runs;
        if (parts.empty()) {
          out["cooccurrence"] = py::none();
          out["cores"] = py::list();
          return out;
        }
        const auto cm = cooccurrence(parts);
        const auto n = static_cast<Eigen::Index>(cm.node_count);
        Eigen::MatrixXi counts(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
          for (Eigen::Index j = 0; j < n; ++j)
            counts(i, j) = static_cast<int>(cm(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
        out["cooccurrence"] = counts;
        out["cores"] = invariant_cores(cm, g, threshold);
        std::vector<std::vector<std::size_t>> assignments;
        for (const auto& p : parts) assignments.push_back(p.assignment);
        out["partitions"] = assignments;
        return out;
      },
      py::arg("graph"), py::arg("model") = "ME1", py::arg("model2") = py::none(), py::arg("runs") = 100,
      py::arg("seed") = 0, py::arg("threads") = 1, py::arg("threshold") = py::none(), py::arg("strict") = false);
}
