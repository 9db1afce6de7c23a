#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "netstrength/graph.hpp"
#include "netstrength/metrics.hpp"

namespace netstrength {

/// Node set compared without regard to order: [2, 11] == [11, 2].
using LabelSet = std::set<std::string>;

/// Root mean squared error. Throws InvalidArgument on empty or mismatched input.
double rmse(std::span<const double> predicted, std::span<const double> truth);

struct RankedCandidate {
  LabelSet members;
  std::optional<double> vote_share;  // percent
};

/// Survey answers for one graph, best-ranked first.
struct RankedGroundTruth {
  std::vector<RankedCandidate> candidates;

  /// 1-based rank of `prediction`, or nullopt when nobody voted for it.
  std::optional<std::size_t> rank_of(const LabelSet& prediction) const;
  /// Throws InvalidArgument on duplicate candidates or shares summing past 100.
  void validate() const;
};

struct MatchRow {
  std::string graph_id;
  LabelSet prediction;
  std::optional<std::size_t> rank;
  std::optional<double> vote_share;
};

struct MatchReport {
  double exact_match = 0.0;
  std::optional<double> rank_match;        // undefined when any prediction is unranked
  std::optional<double> percentage_match;  // defined only when every graph has vote shares
  std::vector<MatchRow> rows;
};

/// Compares predicted node sets against ranked survey answers. Graphs are
/// visited in key order. Throws InvalidArgument when a predicted graph has no
/// ground truth or `predictions` is empty.
MatchReport match_stats(const std::map<std::string, LabelSet>& predictions,
                        const std::map<std::string, RankedGroundTruth>& truth);

/// Renders "-" for undefined values, like the survey tables.
std::string format_optional(const std::optional<double>& value);

void write_match_csv(std::ostream& out, const std::string& method, const MatchReport& report,
                     bool header = true);
void write_match_table(std::ostream& out, const std::map<std::string, MatchReport>& by_method);

// ---- file formats ----------------------------------------------------------

/// `graph_id,mean_estimate`
std::map<std::string, double> load_ground_truth_strength(const std::filesystem::path& path);

/// `graph_id,rank,members,vote_share` where members are ';'-separated labels
/// and vote_share may be empty or the column omitted.
std::map<std::string, RankedGroundTruth> load_ranked_ground_truth(
    const std::filesystem::path& path);

/// `method,graph_id,members`; result is keyed by method, then graph.
std::map<std::string, std::map<std::string, LabelSet>> load_predictions(
    const std::filesystem::path& path);

LabelSet parse_members(std::string_view text);

/// Externally computed strength for one graph, on the raw [1, n] scale.
struct StrengthPrediction {
  std::size_t nodes = 0;
  double strength = 0.0;
};

/// `graph_id,n,strength`
std::map<std::string, StrengthPrediction> load_strength_predictions(
    const std::filesystem::path& path);

struct StrengthComparison {
  std::vector<std::string> graph_ids;
  std::vector<double> predicted_norm;
  std::vector<double> truth_norm;
  double rmse = 0.0;
};

/// Normalizes both sides by n and scores them. Throws InvalidArgument when a
/// predicted graph has no ground truth.
StrengthComparison compare_strengths(const std::map<std::string, StrengthPrediction>& predictions,
                                     const std::map<std::string, double>& gt_mean_estimates);

// ---- strength comparison ---------------------------------------------------

struct SuiteGraph {
  std::string graph_id;
  Graph graph;
};

struct CompareRow {
  std::string graph_id;
  std::size_t nodes = 0;
  double gt_norm = 0.0;
  std::optional<double> proposed_norm;
  double cole1_norm = 0.0;
  double cole2_norm = 0.0;
  double gfp_norm = 0.0;
};

struct CompareTable {
  std::vector<CompareRow> rows;
  std::map<MetricId, double> rmse;
};

/// Normalized strengths of every graph under each metric, plus one RMSE per
/// metric against the normalized ground truth. The proposed metric is skipped
/// when `weights` is empty. Throws InvalidArgument when a graph lacks ground
/// truth or its mean estimate is outside [1, n].
CompareTable compare_suite(std::span<const SuiteGraph> graphs,
                           const std::map<std::string, double>& gt_mean_estimates,
                           const std::optional<WeightVector>& weights);

/// Rows `graph_id,n,gt_norm,proposed_norm,cole1_norm,cole2_norm,gfp_norm`,
/// then `rmse,<metric>,<value>` rows.
void write_compare_csv(std::ostream& out, const CompareTable& table);

}  // namespace netstrength
