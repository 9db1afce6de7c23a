#include "netstrength/weight_fit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

#include "netstrength/datasets.hpp"
#include "netstrength/error.hpp"
#include "text.hpp"

namespace netstrength {

double SurveyRecord::mean_estimate() const {
  if (estimates.empty()) throw InvalidArgument("graph '" + graph_id + "' has no estimates");
  return std::accumulate(estimates.begin(), estimates.end(), 0.0) /
         static_cast<double>(estimates.size());
}

void SurveyDataset::validate() const {
  for (const auto& r : records) {
    const auto n = static_cast<double>(r.graph.node_count());
    if (r.graph.node_count() == 0) throw InvalidArgument("graph '" + r.graph_id + "' is empty");
    if (r.estimates.empty()) throw InvalidArgument("graph '" + r.graph_id + "' has no estimates");
    for (double e : r.estimates) {
      if (!std::isfinite(e) || e < 1.0 || e > n) {
        throw InvalidArgument("estimate " + detail::format_double(e) + " for graph '" +
                              r.graph_id + "' lies outside [1, " + detail::format_double(n) +
                              "]");
      }
    }
  }
}

DesignMatrix build_system(const SurveyDataset& ds) {
  if (ds.records.empty()) throw InvalidArgument("survey dataset is empty");
  ds.validate();

  std::vector<Ccsd> distributions;
  distributions.reserve(ds.records.size());
  std::size_t columns = 0;
  for (const auto& r : ds.records) {
    distributions.push_back(ccsd(r.graph));
    const auto& counts = distributions.back().counts;
    for (std::size_t size = counts.size(); size >= 1; --size) {
      if (counts[size - 1] != 0) {
        columns = std::max(columns, size);
        break;
      }
    }
  }

  DesignMatrix dm;
  const auto rows = static_cast<Eigen::Index>(ds.records.size());
  dm.a = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(columns));
  dm.target.resize(rows);
  for (Eigen::Index j = 0; j < rows; ++j) {
    const auto& d = distributions[static_cast<std::size_t>(j)];
    for (std::size_t size = 1; size <= columns; ++size) {
      dm.a(j, static_cast<Eigen::Index>(size - 1)) =
          static_cast<double>(size * d.of_size(size));
    }
    dm.target(j) = ds.records[static_cast<std::size_t>(j)].mean_estimate();
    dm.graph_ids.push_back(ds.records[static_cast<std::size_t>(j)].graph_id);
  }
  return dm;
}

FitResult fit_weights(const DesignMatrix& dm, double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw InvalidArgument("ridge parameter must be finite and non-negative");
  }
  if (dm.a.rows() == 0 || dm.a.cols() == 0) throw InvalidArgument("design matrix is empty");
  if (dm.a.rows() != dm.target.size()) {
    throw InvalidArgument("design matrix and target have different row counts");
  }
  if (!dm.a.allFinite() || !dm.target.allFinite()) {
    throw InvalidArgument("design matrix or target contains non-finite entries");
  }

  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(dm.a);
  Eigen::VectorXd w;
  if (lambda == 0.0) {
    w = cod.solve(dm.target);
  } else {
    // Ridge as an ordinary least-squares problem on [A; sqrt(lambda) I].
    const Eigen::Index m = dm.a.rows();
    const Eigen::Index p = dm.a.cols();
    Eigen::MatrixXd stacked(m + p, p);
    stacked << dm.a, std::sqrt(lambda) * Eigen::MatrixXd::Identity(p, p);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + p);
    rhs.head(m) = dm.target;
    w = stacked.colPivHouseholderQr().solve(rhs);
  }

  FitResult fit;
  fit.residual_norm = (dm.a * w - dm.target).norm();
  fit.rank = static_cast<std::size_t>(cod.rank());
  fit.lambda = lambda;
  fit.weights = WeightVector(std::vector<double>(w.data(), w.data() + w.size()));
  return fit;
}

SurveyDataset load_survey(const std::filesystem::path& survey_csv,
                          const std::filesystem::path& graph_dir) {
  std::ifstream in(survey_csv);
  if (!in) throw Error("cannot open survey file " + survey_csv.string());
  const std::string src = survey_csv.string();

  SurveyDataset ds;
  std::unordered_map<std::string, std::size_t> index;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = detail::split(text, ',');
    if (!header_seen) {
      header_seen = true;
      if (fields.size() == 3 && fields[0] == "graph_id" && fields[1] == "participant_id" &&
          fields[2] == "estimate") {
        continue;
      }
      throw ParseError(src, line_no, "expected header 'graph_id,participant_id,estimate'");
    }
    if (fields.size() != 3) throw ParseError(src, line_no, "expected three fields");
    const auto estimate = detail::parse_double(fields[2]);
    if (!estimate) throw ParseError(src, line_no, "unparsable estimate");
    const std::string id(fields[0]);
    if (id.empty()) throw ParseError(src, line_no, "empty graph_id");

    auto [it, inserted] = index.try_emplace(id, ds.records.size());
    if (inserted) {
      ds.records.push_back(SurveyRecord{id, load_edge_list(graph_dir / (id + ".edges")), {}});
    }
    auto& record = ds.records[it->second];
    const auto n = static_cast<double>(record.graph.node_count());
    if (*estimate < 1.0 || *estimate > n) {
      throw ParseError(src, line_no,
                       "estimate outside [1, " + detail::format_double(n) + "] for graph '" +
                           id + "'");
    }
    record.estimates.push_back(*estimate);
  }
  if (ds.records.empty()) throw InvalidArgument("survey file " + src + " contains no estimates");
  return ds;
}

void write_fit_report(std::ostream& out, const FitResult& fit, const DesignMatrix& dm) {
  nlohmann::json report = {
      {"residual_norm", fit.residual_norm},
      {"rank", fit.rank},
      {"lambda", fit.lambda},
      {"rows", dm.rows()},
      {"cols", dm.cols()},
  };
  out << report.dump() << '\n';
}

}  // namespace netstrength
