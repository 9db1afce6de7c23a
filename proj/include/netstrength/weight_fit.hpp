#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netstrength/graph.hpp"
#include "netstrength/metrics.hpp"

namespace netstrength {

/// One surveyed graph and the strength estimates participants gave it.
struct SurveyRecord {
  std::string graph_id;
  Graph graph;
  std::vector<double> estimates;  // each in [1, n]

  double mean_estimate() const;
};

struct SurveyDataset {
  std::vector<SurveyRecord> records;

  /// Throws InvalidArgument on a record with no estimates, an empty graph, or
  /// an estimate outside [1, n].
  void validate() const;
};

/// Linear system A w = E relating mean estimates to component-size weights.
/// Row j holds i * nc_i(G_j) in column i - 1.
struct DesignMatrix {
  Eigen::MatrixXd a;
  Eigen::VectorXd target;
  std::vector<std::string> graph_ids;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(a.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(a.cols()); }
};

struct FitResult {
  WeightVector weights;
  double residual_norm = 0.0;  // ||A w - E||_2 on the returned weights
  std::size_t rank = 0;        // numerical rank of A
  double lambda = 0.0;
};

/// Column count is the largest component size in the dataset.
DesignMatrix build_system(const SurveyDataset& ds);

/// Minimizes ||A w - E||^2 + lambda ||w||^2. With lambda = 0 a rank-deficient
/// system yields the minimum-norm least-squares solution.
FitResult fit_weights(const DesignMatrix& dm, double lambda = 0.0);

/// Reads `graph_id,participant_id,estimate` rows and resolves each graph id
/// to `<graph_dir>/<graph_id>.edges`. Records keep first-appearance order.
SurveyDataset load_survey(const std::filesystem::path& survey_csv,
                          const std::filesystem::path& graph_dir);

/// One JSON object on a single line: residual_norm, rank, lambda, rows, cols.
void write_fit_report(std::ostream& out, const FitResult& fit, const DesignMatrix& dm);

}  // namespace netstrength
