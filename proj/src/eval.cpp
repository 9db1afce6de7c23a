#include "netstrength/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "netstrength/error.hpp"
#include "text.hpp"

namespace netstrength {

double rmse(std::span<const double> predicted, std::span<const double> truth) {
  if (predicted.size() != truth.size()) {
    throw InvalidArgument("rmse inputs differ in length: " + std::to_string(predicted.size()) +
                          " vs " + std::to_string(truth.size()));
  }
  if (predicted.empty()) throw InvalidArgument("rmse needs at least one pair");
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const double d = predicted[i] - truth[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(predicted.size()));
}

std::optional<std::size_t> RankedGroundTruth::rank_of(const LabelSet& prediction) const {
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].members == prediction) return i + 1;
  }
  return std::nullopt;
}

void RankedGroundTruth::validate() const {
  double shares = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].members.empty()) throw InvalidArgument("ground-truth candidate is empty");
    for (std::size_t j = 0; j < i; ++j) {
      if (candidates[j].members == candidates[i].members) {
        throw InvalidArgument("duplicate ground-truth candidate at ranks " +
                              std::to_string(j + 1) + " and " + std::to_string(i + 1));
      }
    }
    if (candidates[i].vote_share) {
      if (*candidates[i].vote_share < 0.0) throw InvalidArgument("negative vote share");
      shares += *candidates[i].vote_share;
    }
  }
  if (shares > 100.0 + 1e-9) throw InvalidArgument("vote shares sum past 100%");
}

MatchReport match_stats(const std::map<std::string, LabelSet>& predictions,
                        const std::map<std::string, RankedGroundTruth>& truth) {
  if (predictions.empty()) throw InvalidArgument("no predictions to score");

  MatchReport report;
  std::size_t exact = 0;
  std::size_t rank_total = 0;
  bool all_ranked = true;
  bool shares_known = true;
  double share_total = 0.0;

  for (const auto& [graph_id, prediction] : predictions) {
    const auto it = truth.find(graph_id);
    if (it == truth.end()) {
      throw InvalidArgument("no ground truth for predicted graph '" + graph_id + "'");
    }
    const auto& gt = it->second;
    MatchRow row{graph_id, prediction, gt.rank_of(prediction), std::nullopt};
    if (row.rank == 1) ++exact;
    if (row.rank) {
      rank_total += *row.rank;
    } else {
      all_ranked = false;
    }

    const bool graph_has_shares =
        !gt.candidates.empty() &&
        std::all_of(gt.candidates.begin(), gt.candidates.end(),
                    [](const RankedCandidate& c) { return c.vote_share.has_value(); });
    if (graph_has_shares) {
      row.vote_share = row.rank ? *gt.candidates[*row.rank - 1].vote_share : 0.0;
      share_total += *row.vote_share;
    } else {
      shares_known = false;
    }
    report.rows.push_back(std::move(row));
  }

  const auto graphs = static_cast<double>(predictions.size());
  report.exact_match = static_cast<double>(exact) / graphs;
  if (all_ranked) report.rank_match = static_cast<double>(rank_total) / graphs;
  if (shares_known) report.percentage_match = share_total / graphs;
  return report;
}

std::string format_optional(const std::optional<double>& value) {
  return value ? detail::format_double(*value) : "-";
}

namespace {

std::string join_members(const LabelSet& members) {
  std::string out;
  for (const auto& m : members) {
    if (!out.empty()) out += ';';
    out += m;
  }
  return out;
}

struct CsvFile {
  std::ifstream in;
  std::string source;
  std::size_t line_no = 0;
  std::vector<std::string> header;

  explicit CsvFile(const std::filesystem::path& path) : in(path), source(path.string()) {
    if (!in) throw Error("cannot open " + source);
  }

  // Next non-blank, non-comment row, split on commas.
  std::optional<std::vector<std::string>> next() {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      const auto text = detail::trim(line);
      if (text.empty() || text.front() == '#') continue;
      std::vector<std::string> fields;
      for (auto f : detail::split(text, ',')) fields.emplace_back(f);
      return fields;
    }
    return std::nullopt;
  }

  void expect_header(std::initializer_list<std::string_view> required,
                     std::initializer_list<std::string_view> optional_tail = {}) {
    auto row = next();
    if (!row) throw ParseError(source, line_no, "file is empty");
    std::vector<std::string_view> want(required);
    bool ok = row->size() >= want.size() && row->size() <= want.size() + optional_tail.size();
    for (std::size_t i = 0; ok && i < row->size(); ++i) {
      const auto expected = i < want.size() ? want[i] : *(optional_tail.begin() + (i - want.size()));
      ok = (*row)[i] == expected;
    }
    if (!ok) {
      std::string joined;
      for (auto w : want) joined += (joined.empty() ? "" : ",") + std::string(w);
      throw ParseError(source, line_no, "expected header '" + joined + "'");
    }
    header = *row;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source, line_no, what); }
};

}  // namespace

LabelSet parse_members(std::string_view text) {
  LabelSet members;
  for (auto token : detail::split(text, ';')) {
    if (token.empty()) throw InvalidArgument("empty label in member list '" + std::string(text) + "'");
    members.emplace(token);
  }
  return members;
}

void write_match_csv(std::ostream& out, const std::string& method, const MatchReport& report,
                     bool header) {
  if (header) out << "method,graph_id,prediction,rank,vote_share\n";
  for (const auto& row : report.rows) {
    out << method << ',' << row.graph_id << ',' << join_members(row.prediction) << ','
        << (row.rank ? std::to_string(*row.rank) : "-") << ',' << format_optional(row.vote_share)
        << '\n';
  }
  out << method << ",exact_match,," << detail::format_double(report.exact_match) << ",\n";
  out << method << ",rank_match,," << format_optional(report.rank_match) << ",\n";
  out << method << ",percentage_match,," << format_optional(report.percentage_match) << ",\n";
}

void write_match_table(std::ostream& out, const std::map<std::string, MatchReport>& by_method) {
  out << std::left << std::setw(18) << "method" << std::setw(14) << "exact_match"
      << std::setw(14) << "rank_match"
      << "percentage_match\n";
  for (const auto& [method, report] : by_method) {
    out << std::setw(18) << method << std::setw(14) << detail::format_double(report.exact_match)
        << std::setw(14) << format_optional(report.rank_match)
        << format_optional(report.percentage_match) << '\n';
  }
}

std::map<std::string, double> load_ground_truth_strength(const std::filesystem::path& path) {
  CsvFile csv(path);
  csv.expect_header({"graph_id", "mean_estimate"});
  std::map<std::string, double> out;
  while (auto row = csv.next()) {
    if (row->size() != 2) csv.fail("expected two fields");
    const auto value = detail::parse_double((*row)[1]);
    if (!value) csv.fail("unparsable mean_estimate");
    if (!out.emplace((*row)[0], *value).second) csv.fail("duplicate graph_id '" + (*row)[0] + "'");
  }
  return out;
}

std::map<std::string, RankedGroundTruth> load_ranked_ground_truth(
    const std::filesystem::path& path) {
  CsvFile csv(path);
  csv.expect_header({"graph_id", "rank", "members"}, {"vote_share"});
  std::map<std::string, std::vector<std::pair<std::size_t, RankedCandidate>>> staged;
  while (auto row = csv.next()) {
    if (row->size() < 3 || row->size() > csv.header.size()) csv.fail("wrong field count");
    const auto rank = detail::parse_int<std::size_t>((*row)[1]);
    if (!rank || *rank == 0) csv.fail("rank must be a positive integer");
    RankedCandidate candidate;
    try {
      candidate.members = parse_members((*row)[2]);
    } catch (const InvalidArgument& e) {
      csv.fail(e.what());
    }
    if (row->size() == 4 && !(*row)[3].empty()) {
      const auto share = detail::parse_double((*row)[3]);
      if (!share) csv.fail("unparsable vote_share");
      candidate.vote_share = *share;
    }
    staged[(*row)[0]].emplace_back(*rank, std::move(candidate));
  }

  std::map<std::string, RankedGroundTruth> out;
  for (auto& [graph_id, entries] : staged) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    RankedGroundTruth gt;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].first != i + 1) {
        throw ParseError(csv.source, 0,
                         "ranks for graph '" + graph_id + "' must run 1..N without gaps");
      }
      gt.candidates.push_back(std::move(entries[i].second));
    }
    gt.validate();
    out.emplace(graph_id, std::move(gt));
  }
  return out;
}

std::map<std::string, std::map<std::string, LabelSet>> load_predictions(
    const std::filesystem::path& path) {
  CsvFile csv(path);
  csv.expect_header({"method", "graph_id", "members"});
  std::map<std::string, std::map<std::string, LabelSet>> out;
  while (auto row = csv.next()) {
    if (row->size() != 3) csv.fail("expected three fields");
    LabelSet members;
    try {
      members = parse_members((*row)[2]);
    } catch (const InvalidArgument& e) {
      csv.fail(e.what());
    }
    if (!out[(*row)[0]].emplace((*row)[1], std::move(members)).second) {
      csv.fail("duplicate prediction for graph '" + (*row)[1] + "'");
    }
  }
  return out;
}

std::map<std::string, StrengthPrediction> load_strength_predictions(
    const std::filesystem::path& path) {
  CsvFile csv(path);
  csv.expect_header({"graph_id", "n", "strength"});
  std::map<std::string, StrengthPrediction> out;
  while (auto row = csv.next()) {
    if (row->size() != 3) csv.fail("expected three fields");
    const auto n = detail::parse_int<std::size_t>((*row)[1]);
    const auto strength = detail::parse_double((*row)[2]);
    if (!n || *n == 0) csv.fail("n must be a positive integer");
    if (!strength) csv.fail("unparsable strength");
    if (!out.emplace((*row)[0], StrengthPrediction{*n, *strength}).second) {
      csv.fail("duplicate graph_id '" + (*row)[0] + "'");
    }
  }
  return out;
}

StrengthComparison compare_strengths(const std::map<std::string, StrengthPrediction>& predictions,
                                     const std::map<std::string, double>& gt_mean_estimates) {
  StrengthComparison out;
  for (const auto& [graph_id, p] : predictions) {
    const auto it = gt_mean_estimates.find(graph_id);
    if (it == gt_mean_estimates.end()) {
      throw InvalidArgument("no ground-truth strength for graph '" + graph_id + "'");
    }
    const auto n = static_cast<double>(p.nodes);
    out.graph_ids.push_back(graph_id);
    out.predicted_norm.push_back(p.strength / n);
    out.truth_norm.push_back(it->second / n);
  }
  out.rmse = rmse(out.predicted_norm, out.truth_norm);
  return out;
}

CompareTable compare_suite(std::span<const SuiteGraph> graphs,
                           const std::map<std::string, double>& gt_mean_estimates,
                           const std::optional<WeightVector>& weights) {
  if (graphs.empty()) throw InvalidArgument("comparison suite is empty");
  CompareTable table;
  std::vector<double> gt, proposed, c1, c2, gfp;
  for (const auto& entry : graphs) {
    const std::size_t n = entry.graph.node_count();
    if (n == 0) throw EmptyGraphError();
    const auto it = gt_mean_estimates.find(entry.graph_id);
    if (it == gt_mean_estimates.end()) {
      throw InvalidArgument("no ground-truth strength for graph '" + entry.graph_id + "'");
    }
    if (it->second < 1.0 || it->second > static_cast<double>(n)) {
      throw InvalidArgument("mean estimate for graph '" + entry.graph_id + "' lies outside [1, n]");
    }
    const Ccsd d = ccsd(entry.graph);
    CompareRow row;
    row.graph_id = entry.graph_id;
    row.nodes = n;
    row.gt_norm = it->second / static_cast<double>(n);
    if (weights) row.proposed_norm = sigma(d, *weights).normalized;
    row.cole1_norm = cole1(d).normalized;
    row.cole2_norm = cole2(d).normalized;
    row.gfp_norm = gfp_score(d).normalized;

    gt.push_back(row.gt_norm);
    if (row.proposed_norm) proposed.push_back(*row.proposed_norm);
    c1.push_back(row.cole1_norm);
    c2.push_back(row.cole2_norm);
    gfp.push_back(row.gfp_norm);
    table.rows.push_back(std::move(row));
  }
  if (weights) table.rmse[MetricId::kProposed] = rmse(proposed, gt);
  table.rmse[MetricId::kCole1] = rmse(c1, gt);
  table.rmse[MetricId::kCole2] = rmse(c2, gt);
  table.rmse[MetricId::kGfp] = rmse(gfp, gt);
  return table;
}

void write_compare_csv(std::ostream& out, const CompareTable& table) {
  using detail::format_double;
  out << "graph_id,n,gt_norm,proposed_norm,cole1_norm,cole2_norm,gfp_norm\n";
  for (const auto& r : table.rows) {
    out << r.graph_id << ',' << r.nodes << ',' << format_double(r.gt_norm) << ','
        << (r.proposed_norm ? format_double(*r.proposed_norm) : "") << ','
        << format_double(r.cole1_norm) << ',' << format_double(r.cole2_norm) << ','
        << format_double(r.gfp_norm) << '\n';
  }
  // One summary row per metric; the value sits in that metric's column.
  const MetricId order[] = {MetricId::kProposed, MetricId::kCole1, MetricId::kCole2,
                            MetricId::kGfp};
  for (std::size_t col = 0; col < 4; ++col) {
    const auto it = table.rmse.find(order[col]);
    if (it == table.rmse.end()) continue;
    out << "rmse_" << to_string(order[col]) << ",,";
    for (std::size_t c = 0; c < 4; ++c) out << ',' << (c == col ? format_double(it->second) : "");
    out << '\n';
  }
}

}  // namespace netstrength
