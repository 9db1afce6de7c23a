#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "netstrength/datasets.hpp"
#include "netstrength/dismantle.hpp"
#include "netstrength/error.hpp"
#include "netstrength/eval.hpp"
#include "netstrength/graph.hpp"
#include "netstrength/ilp.hpp"
#include "netstrength/metrics.hpp"
#include "netstrength/weight_fit.hpp"

namespace py = pybind11;
using namespace netstrength;

namespace {

WeightVector to_weights(const std::optional<std::vector<double>>& values, bool clamp) {
  const auto policy = clamp ? ExtensionPolicy::kClampToLast : ExtensionPolicy::kError;
  if (!values) return default_weights(policy);
  return WeightVector(*values, policy);
}

py::dict strength_dict(const StrengthValue& v) {
  py::dict d;
  d["metric"] = std::string(to_string(v.metric));
  d["raw"] = v.raw;
  d["normalized"] = v.normalized;
  return d;
}

Objective make_objective(const std::string& metric, const std::optional<std::vector<double>>& weights,
                         bool clamp) {
  const MetricId id = parse_metric_id(metric);
  if (id == MetricId::kProposed) return Objective::proposed(to_weights(weights, clamp));
  return Objective::baseline(id);
}

// The ILP as dense arrays, in the form scipy.optimize.milp expects.
py::dict ilp_arrays(const IlpModel& m) {
  const auto nv = static_cast<Eigen::Index>(m.variables.size());
  const auto nc = static_cast<Eigen::Index>(m.constraints.size());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(nv);
  for (const auto& t : m.objective) c(static_cast<Eigen::Index>(t.var)) += t.coeff;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nc, nv);
  Eigen::VectorXd lo(nc), hi(nc);
  std::vector<std::string> row_names, families;
  const double inf = std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < nc; ++r) {
    const auto& row = m.constraints[static_cast<std::size_t>(r)];
    for (const auto& t : row.terms) a(r, static_cast<Eigen::Index>(t.var)) += t.coeff;
    lo(r) = row.sense == Sense::kLessEqual ? -inf : row.rhs;
    hi(r) = row.sense == Sense::kGreaterEqual ? inf : row.rhs;
    row_names.push_back(row.name);
    families.push_back(row.family);
  }
  std::vector<std::string> names;
  Eigen::VectorXd lower(nv), upper(nv), integrality(nv);
  for (Eigen::Index v = 0; v < nv; ++v) {
    const auto& var = m.variables[static_cast<std::size_t>(v)];
    names.push_back(var.name);
    lower(v) = var.lower;
    upper(v) = var.upper;
    integrality(v) = 1.0;  // every variable is binary or integer
  }
  py::dict d;
  d["names"] = names;
  d["c"] = c;
  d["A"] = a;
  d["row_lower"] = lo;
  d["row_upper"] = hi;
  d["row_names"] = row_names;
  d["families"] = families;
  d["lower"] = lower;
  d["upper"] = upper;
  d["integrality"] = integrality;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Perception-weighted network strength: metrics, weight fitting and dismantling";

  auto base = py::register_exception<Error>(m, "NetstrengthError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<EmptyGraphError>(m, "EmptyGraphError", base.ptr());
  py::register_exception<WeightRangeError>(m, "WeightRangeError", base.ptr());
  py::register_exception<InstanceTooLarge>(m, "InstanceTooLarge", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  // ConstraintViolation carries the violated family as an attribute.
  static PyObject* violation =
      PyErr_NewException("netstrength._core.ConstraintViolation", base.ptr(), nullptr);
  m.add_object("ConstraintViolation", py::handle(violation));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConstraintViolation& e) {
      py::object err = py::reinterpret_borrow<py::object>(violation)(e.what());
      err.attr("family") = e.family();
      PyErr_SetObject(violation, err.ptr());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Edge>& edges, std::vector<std::string> labels) {
             return Graph(n, edges, std::move(labels));
           }),
           py::arg("n"), py::arg("edges") = std::vector<Edge>{}, py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("edges", &Graph::edges)
      .def_property_readonly("labels", &Graph::labels)
      .def_property_readonly("dropped_self_loops", &Graph::dropped_self_loops)
      .def_property_readonly("dropped_duplicates", &Graph::dropped_duplicates)
      .def("neighbors", [](const Graph& g, NodeId v) {
        const auto s = g.neighbors(v);
        return std::vector<NodeId>(s.begin(), s.end());
      })
      .def("has_edge", &Graph::has_edge)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.node_count()) + " m=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("ccsd", [](const Graph& g) { return ccsd(g).counts; }, py::arg("graph"),
        "Component counts by size: entry i-1 is the number of components with i nodes.");
  m.def("component_sizes", [](const Graph& g) { return components(g).sizes; }, py::arg("graph"));
  m.def("remove_nodes", [](const Graph& g, const std::vector<NodeId>& removed) { return remove_nodes(g, removed); },
        py::arg("graph"), py::arg("removed"));

  m.def("default_weights", []() { return default_weights().values(); });
  m.def("sigma",
        [](const Graph& g, std::optional<std::vector<double>> weights, bool clamp) {
          return strength_dict(sigma(g, to_weights(weights, clamp)));
        },
        py::arg("graph"), py::arg("weights") = py::none(), py::arg("clamp") = false);
  m.def("cole1", [](const Graph& g) { return strength_dict(cole1(g)); }, py::arg("graph"));
  m.def("cole2", [](const Graph& g) { return strength_dict(cole2(g)); }, py::arg("graph"));
  m.def("gfp_score", [](const Graph& g) { return strength_dict(gfp_score(g)); }, py::arg("graph"));

  m.def("generate",
        [](const std::string& model, std::size_t n, double p, std::size_t edges, std::uint64_t seed,
           std::size_t count) {
          GeneratorSpec spec;
          if (model == "gnp") {
            spec.model = RandomModel::kGnp;
          } else if (model == "gnm") {
            spec.model = RandomModel::kGnm;
          } else {
            throw InvalidArgument("model must be 'gnp' or 'gnm'");
          }
          spec.nodes = n;
          spec.probability = p;
          spec.edges = edges;
          spec.seed = seed;
          spec.count = count;
          return generate(spec);
        },
        py::arg("model"), py::arg("n"), py::arg("p") = 0.0, py::arg("m") = 0, py::arg("seed") = 0,
        py::arg("count") = 1);
  m.def("load_edge_list", &load_edge_list, py::arg("path"));
  m.def("save_edge_list", &save_edge_list, py::arg("path"), py::arg("graph"));
  m.def("parse_edge_list", [](const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
  });

  m.def("design_matrix",
        [](const std::vector<std::pair<Graph, std::vector<double>>>& records) {
          SurveyDataset ds;
          for (std::size_t i = 0; i < records.size(); ++i) {
            ds.records.push_back({std::to_string(i), records[i].first, records[i].second});
          }
          const auto dm = build_system(ds);
          return std::make_pair(dm.a, dm.target);
        },
        py::arg("records"), "Design matrix and mean estimates for (graph, estimates) pairs.");
  m.def("fit_weights",
        [](const Eigen::MatrixXd& a, const Eigen::VectorXd& target, double lambda) {
          DesignMatrix dm;
          dm.a = a;
          dm.target = target;
          const auto fit = fit_weights(dm, lambda);
          py::dict d;
          d["weights"] = fit.weights.values();
          d["residual_norm"] = fit.residual_norm;
          d["rank"] = fit.rank;
          d["lambda"] = fit.lambda;
          return d;
        },
        py::arg("a"), py::arg("target"), py::arg("lam") = 0.0);

  m.def("best_removal",
        [](const Graph& g, std::size_t k, const std::string& objective,
           std::optional<std::vector<double>> weights, bool clamp, bool allow_fewer, unsigned threads,
           std::size_t max_subsets) {
          SearchBudget budget;
          budget.threads = threads;
          budget.max_subsets = max_subsets;
          DismantleResult r;
          {
            py::gil_scoped_release release;
            r = best_removal({g, k, make_objective(objective, weights, clamp), allow_fewer}, budget);
          }
          std::vector<std::string> labels;
          for (NodeId v : r.removed) labels.push_back(g.label(v));
          py::dict d;
          d["removed"] = r.removed;
          d["removed_labels"] = labels;
          d["residual_value"] = r.residual_value;
          d["ties"] = r.ties;
          d["objective"] = std::string(to_string(r.objective));
          return d;
        },
        py::arg("graph"), py::arg("k"), py::arg("objective") = "proposed", py::arg("weights") = py::none(),
        py::arg("clamp") = false, py::arg("allow_fewer") = true, py::arg("threads") = 1,
        py::arg("max_subsets") = SearchBudget{}.max_subsets);

  m.def("emit_ilp",
        [](const Graph& g, std::size_t k, std::optional<std::vector<double>> weights, bool clamp) {
          return emit_ilp(g, k, to_weights(weights, clamp));
        },
        py::arg("graph"), py::arg("k"), py::arg("weights") = py::none(), py::arg("clamp") = false);
  m.def("ilp_arrays",
        [](const Graph& g, std::size_t k, std::optional<std::vector<double>> weights, bool clamp) {
          return ilp_arrays(build_ilp_model(g, k, to_weights(weights, clamp)));
        },
        py::arg("graph"), py::arg("k"), py::arg("weights") = py::none(), py::arg("clamp") = false,
        "Integer program as dense arrays: c, A, row_lower, row_upper, lower, upper, integrality, names.");
  m.def("verify_ilp_solution",
        [](const Graph& g, std::size_t k, const std::map<std::string, double>& assignment,
           std::optional<std::vector<double>> weights, bool clamp) {
          const auto check = verify_ilp_solution(g, k, to_weights(weights, clamp), assignment);
          py::dict d;
          d["objective"] = check.objective;
          d["removed"] = check.removed;
          d["optimum"] = check.optimum ? py::cast(check.optimum->residual_value) : py::none();
          d["matches_optimum"] = check.matches_optimum;
          return d;
        },
        py::arg("graph"), py::arg("k"), py::arg("assignment"), py::arg("weights") = py::none(),
        py::arg("clamp") = false);
  m.def("assignment_for_removal",
        [](const Graph& g, const std::vector<NodeId>& removed) { return assignment_for_removal(g, removed); },
        py::arg("graph"), py::arg("removed"));

  m.def("match_stats",
        [](const std::map<std::string, std::vector<std::string>>& predictions,
           const std::map<std::string, std::vector<std::vector<std::string>>>& ranked) {
          std::map<std::string, LabelSet> preds;
          for (const auto& [id, members] : predictions) preds[id] = LabelSet(members.begin(), members.end());
          std::map<std::string, RankedGroundTruth> truth;
          for (const auto& [id, candidates] : ranked) {
            auto& t = truth[id];
            for (const auto& c : candidates) t.candidates.push_back({LabelSet(c.begin(), c.end()), std::nullopt});
          }
          const auto report = match_stats(preds, truth);
          py::dict d;
          d["exact_match"] = report.exact_match;
          d["rank_match"] = report.rank_match;
          d["percentage_match"] = report.percentage_match;
          return d;
        },
        py::arg("predictions"), py::arg("ranked_truth"),
        "predictions: graph -> node labels; ranked_truth: graph -> candidate label lists, best first.");
  m.def("rmse", [](const std::vector<double>& p, const std::vector<double>& t) { return rmse(p, t); });
}
