// netstrength: command-line front end for the strength metrics, weight
// fitting, dismantling search and evaluation harness.
//
// Machine-readable output goes to stdout (or --out files); diagnostics go to
// stderr. Exit status is 0 on success and 1 on any error.

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netstrength/datasets.hpp"
#include "netstrength/dismantle.hpp"
#include "netstrength/error.hpp"
#include "netstrength/eval.hpp"
#include "netstrength/ilp.hpp"
#include "netstrength/metrics.hpp"
#include "netstrength/weight_fit.hpp"

namespace fs = std::filesystem;
using namespace netstrength;

namespace {

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

WeightVector resolve_weights(const std::string& source, bool clamp) {
  const auto policy = clamp ? ExtensionPolicy::kClampToLast : ExtensionPolicy::kError;
  if (source == "default") return default_weights(policy);
  return load_weights_csv(source, policy);
}

Graph load_graph(const fs::path& path) {
  Graph g = load_edge_list(path);
  if (g.dropped_self_loops() > 0 || g.dropped_duplicates() > 0) {
    std::cerr << "warning: " << path.string() << ": dropped " << g.dropped_self_loops()
              << " self-loop(s) and " << g.dropped_duplicates() << " duplicate edge(s)\n";
  }
  return g;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

std::vector<SuiteGraph> load_graph_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".edges") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<SuiteGraph> suite;
  for (const auto& f : files) suite.push_back({f.stem().string(), load_graph(f)});
  return suite;
}

// ---- gen -------------------------------------------------------------------

struct GenOptions {
  std::string model = "gnp";
  std::size_t n = 0;
  std::optional<double> p;
  std::optional<std::size_t> m;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::string out = ".";
  std::string stem;
};

void run_gen(const GenOptions& o) {
  GeneratorSpec spec;
  spec.nodes = o.n;
  spec.seed = o.seed;
  spec.count = o.count;
  if (o.model == "gnp") {
    if (!o.p) throw InvalidArgument("gnp needs --p");
    spec.model = RandomModel::kGnp;
    spec.probability = *o.p;
  } else {
    if (!o.m) throw InvalidArgument("gnm needs --m");
    spec.model = RandomModel::kGnm;
    spec.edges = *o.m;
  }
  spec.validate();
  const auto written = write_suite(o.out, o.stem.empty() ? o.model : o.stem, spec, generate(spec));
  for (const auto& path : written) std::cout << path.string() << '\n';
}

// ---- strength --------------------------------------------------------------

struct StrengthOptions {
  std::vector<std::string> graphs;
  std::string weights = "default";
  bool clamp = false;
  bool all_metrics = false;
};

void run_strength(const StrengthOptions& o) {
  std::optional<WeightVector> w;
  // Buffered so a failure part way through leaves stdout empty.
  std::ostringstream out;
  out << "graph,n,metric,raw,normalized\n";
  for (const auto& path : o.graphs) {
    const Graph g = load_graph(path);
    if (g.node_count() == 0) throw EmptyGraphError();
    const Ccsd d = ccsd(g);
    std::vector<StrengthValue> values;
    if (!w) w = resolve_weights(o.weights, o.clamp);
    values.push_back(sigma(d, *w));
    if (o.all_metrics) {
      values.push_back(cole1(d));
      values.push_back(cole2(d));
      values.push_back(gfp_score(d));
    }
    const std::string name = fs::path(path).stem().string();
    for (const auto& v : values) {
      out << name << ',' << g.node_count() << ',' << to_string(v.metric) << ',' << fmt(v.raw) << ','
          << fmt(v.normalized) << '\n';
    }
  }
  std::cout << out.str();
}

// ---- fit-weights -----------------------------------------------------------

struct FitOptions {
  std::string survey;
  std::string graph_dir;
  double lambda = 0.0;
  std::string out;
  std::string report;
};

void run_fit(const FitOptions& o) {
  const auto ds = load_survey(o.survey, o.graph_dir);
  const auto dm = build_system(ds);
  const auto fit = fit_weights(dm, o.lambda);
  if (fit.rank < dm.cols()) {
    std::cerr << "note: design matrix rank " << fit.rank << " < " << dm.cols()
              << " columns; unidentified weights take the minimum-norm value\n";
  }
  if (o.out.empty()) {
    write_weights_csv(std::cout, fit.weights);
  } else {
    save_weights_csv(o.out, fit.weights);
  }
  const std::string report_path = !o.report.empty() ? o.report
                                  : !o.out.empty()  ? o.out + ".report.jsonl"
                                                    : std::string();
  if (report_path.empty()) {
    write_fit_report(std::cerr, fit, dm);
  } else {
    auto out = open_output(report_path);
    write_fit_report(out, fit, dm);
  }
}

// ---- dismantle -------------------------------------------------------------

struct DismantleOptions {
  std::string graph;
  std::size_t k = 1;
  std::string objective = "proposed";
  std::string weights = "default";
  bool clamp = false;
  bool exact_size = false;
  unsigned threads = 1;
  std::size_t max_subsets = SearchBudget{}.max_subsets;
  std::string emit_lp;
  std::string verify;
};

void run_dismantle(const DismantleOptions& o) {
  const Graph g = load_graph(o.graph);
  const MetricId metric = parse_metric_id(o.objective);
  const std::optional<WeightVector> w =
      metric == MetricId::kProposed || !o.emit_lp.empty() || !o.verify.empty()
          ? std::optional<WeightVector>(resolve_weights(o.weights, o.clamp))
          : std::nullopt;
  if (o.k < 1 || o.k >= g.node_count()) {
    throw InvalidArgument("--k must satisfy 1 <= k < n = " + std::to_string(g.node_count()));
  }

  SearchBudget budget;
  budget.threads = std::max(1u, o.threads);
  budget.max_subsets = o.max_subsets;

  if (!o.emit_lp.empty()) {
    auto out = open_output(o.emit_lp);
    write_lp(out, build_ilp_model(g, o.k, *w));
  }
  if (!o.verify.empty()) {
    std::ifstream in(o.verify);
    if (!in) throw Error("cannot open " + o.verify);
    const auto check = verify_ilp_solution(g, o.k, *w, read_assignment(in), budget);
    std::cerr << "ILP assignment feasible; objective " << check.objective;
    if (check.optimum) {
      std::cerr << (check.matches_optimum ? " matches" : " differs from")
                << " the enumerated optimum " << check.optimum->residual_value;
    }
    std::cerr << '\n';
  }

  const Objective objective =
      metric == MetricId::kProposed ? Objective::proposed(*w) : Objective::baseline(metric);
  const auto result = best_removal({g, o.k, objective, !o.exact_size}, budget);
  std::cout << result_to_json(result, g, o.k) << '\n';
}

// ---- eval ------------------------------------------------------------------

struct EvalOptions {
  std::string mode = "match";
  std::string predictions;
  std::string ground_truth;
  std::string format = "csv";
};

void run_eval(const EvalOptions& o) {
  if (o.mode == "match") {
    const auto gt = load_ranked_ground_truth(o.ground_truth);
    const auto preds = load_predictions(o.predictions);
    std::map<std::string, MatchReport> reports;
    for (const auto& [method, p] : preds) reports.emplace(method, match_stats(p, gt));
    if (o.format == "table") {
      write_match_table(std::cout, reports);
    } else {
      bool header = true;
      for (const auto& [method, report] : reports) {
        write_match_csv(std::cout, method, report, header);
        header = false;
      }
    }
    return;
  }
  const auto cmp = compare_strengths(load_strength_predictions(o.predictions),
                                     load_ground_truth_strength(o.ground_truth));
  std::cout << "graph_id,pred_norm,gt_norm\n";
  for (std::size_t i = 0; i < cmp.graph_ids.size(); ++i) {
    std::cout << cmp.graph_ids[i] << ',' << fmt(cmp.predicted_norm[i]) << ','
              << fmt(cmp.truth_norm[i]) << '\n';
  }
  std::cout << "rmse,," << fmt(cmp.rmse) << '\n';
}

// ---- compare ---------------------------------------------------------------

struct CompareOptions {
  std::string graph_dir;
  std::string ground_truth;
  std::string weights = "default";
  bool clamp = false;
  bool skip_proposed = false;
};

void run_compare(const CompareOptions& o) {
  const auto suite = load_graph_dir(o.graph_dir);
  const auto gt = load_ground_truth_strength(o.ground_truth);
  std::optional<WeightVector> w;
  if (!o.skip_proposed) w = resolve_weights(o.weights, o.clamp);
  write_compare_csv(std::cout, compare_suite(suite, gt, w));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perception-weighted network strength: metrics, weight fitting, dismantling"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate seeded G(n,p) or G(n,m) graphs");
  gen_cmd->add_option("--model", gen.model, "gnp or gnm")->check(CLI::IsMember({"gnp", "gnm"}));
  gen_cmd->add_option("--n", gen.n, "Node count")->required();
  gen_cmd->add_option("--p", gen.p, "Edge probability (gnp)");
  gen_cmd->add_option("--m", gen.m, "Edge count (gnm)");
  gen_cmd->add_option("--count", gen.count, "Number of graphs");
  gen_cmd->add_option("--seed", gen.seed, "Suite seed");
  gen_cmd->add_option("--out", gen.out, "Output directory");
  gen_cmd->add_option("--stem", gen.stem, "File name stem (defaults to the model)");

  StrengthOptions strength;
  auto* strength_cmd = app.add_subcommand("strength", "Strength of one or more edge-list graphs");
  strength_cmd->add_option("graphs", strength.graphs, "Edge-list files")->required();
  strength_cmd->add_option("--weights", strength.weights, "Weight CSV or 'default'");
  strength_cmd->add_flag("--clamp-weights", strength.clamp, "Reuse the last weight for larger components");
  strength_cmd->add_flag("--all-metrics", strength.all_metrics, "Also report cole1, cole2 and gfp");

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit-weights", "Fit component-size weights from survey estimates");
  fit_cmd->add_option("--survey", fit.survey, "CSV graph_id,participant_id,estimate")->required();
  fit_cmd->add_option("--graphs", fit.graph_dir, "Directory of <graph_id>.edges files")->required();
  fit_cmd->add_option("--lambda", fit.lambda, "Ridge parameter (0 = minimum-norm least squares)")
      ->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--out", fit.out, "Weight CSV output (stdout when omitted)");
  fit_cmd->add_option("--report", fit.report, "JSON-lines fit report");

  DismantleOptions dis;
  auto* dis_cmd = app.add_subcommand("dismantle", "Exact search for the k most authoritative nodes");
  dis_cmd->add_option("graph", dis.graph, "Edge-list file")->required();
  dis_cmd->add_option("--k", dis.k, "Removal budget")->required();
  dis_cmd->add_option("--objective", dis.objective, "proposed, cole1, cole2 or gfp")
      ->check(CLI::IsMember({"proposed", "cole1", "cole2", "gfp"}));
  dis_cmd->add_option("--weights", dis.weights, "Weight CSV or 'default'");
  dis_cmd->add_flag("--clamp-weights", dis.clamp, "Reuse the last weight for larger components");
  dis_cmd->add_flag("--exact-size", dis.exact_size, "Only consider removal sets of exactly k nodes");
  dis_cmd->add_option("--threads", dis.threads, "Worker threads for the enumeration");
  dis_cmd->add_option("--max-subsets", dis.max_subsets, "Refuse searches larger than this");
  dis_cmd->add_option("--emit-lp", dis.emit_lp, "Write the integer program in LP format");
  dis_cmd->add_option("--verify-solution", dis.verify, "Check a 'name value' ILP assignment file");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score predictions against survey ground truth");
  eval_cmd->add_option("--mode", eval.mode, "match or strength")->check(CLI::IsMember({"match", "strength"}));
  eval_cmd->add_option("--predictions", eval.predictions, "Predictions CSV")->required();
  eval_cmd->add_option("--ground-truth", eval.ground_truth, "Ground-truth CSV")->required();
  eval_cmd->add_option("--format", eval.format, "csv or table")->check(CLI::IsMember({"csv", "table"}));

  CompareOptions cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Normalized strengths and RMSE for a graph suite");
  cmp_cmd->add_option("--graphs", cmp.graph_dir, "Directory of .edges files")->required();
  cmp_cmd->add_option("--ground-truth", cmp.ground_truth, "CSV graph_id,mean_estimate")->required();
  cmp_cmd->add_option("--weights", cmp.weights, "Weight CSV or 'default'");
  cmp_cmd->add_flag("--clamp-weights", cmp.clamp, "Reuse the last weight for larger components");
  cmp_cmd->add_flag("--no-proposed", cmp.skip_proposed, "Skip the proposed metric");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) run_gen(gen);
    if (strength_cmd->parsed()) run_strength(strength);
    if (fit_cmd->parsed()) run_fit(fit);
    if (dis_cmd->parsed()) run_dismantle(dis);
    if (eval_cmd->parsed()) run_eval(eval);
    if (cmp_cmd->parsed()) run_compare(cmp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
