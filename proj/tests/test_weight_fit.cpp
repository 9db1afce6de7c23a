#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "netstrength/datasets.hpp"
#include "netstrength/error.hpp"
#include "netstrength/weight_fit.hpp"
#include "support/oracles.hpp"

using namespace netstrength;

namespace {

Graph path_plus_isolated(std::size_t path_nodes) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < path_nodes; ++v) edges.emplace_back(v - 1, v);
  return Graph(path_nodes + 1, edges);
}

// Rows are triangular in the size columns, so A has full column rank.
SurveyDataset round_trip_dataset(const WeightVector& truth, std::size_t max_size, std::uint64_t seed) {
  SurveyDataset ds;
  ds.records.push_back({"iso3", Graph(3, std::span<const Edge>{}), {}});
  for (std::size_t s = 2; s <= max_size; ++s) {
    ds.records.push_back({"path" + std::to_string(s), path_plus_isolated(s), {}});
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 20; ++i) {
    Graph g = generate_one({RandomModel::kGnp, 4 + rng() % (max_size - 4), 0.15, 0, rng(), 1}, 0);
    ds.records.push_back({"gnp" + std::to_string(i), std::move(g), {}});
  }
  for (auto& r : ds.records) r.estimates = {sigma(r.graph, truth).raw};
  return ds;
}

double objective(const DesignMatrix& dm, const Eigen::VectorXd& w, double lambda) {
  return (dm.a * w - dm.target).squaredNorm() + lambda * w.squaredNorm();
}

Eigen::VectorXd as_vector(const WeightVector& w) {
  return Eigen::Map<const Eigen::VectorXd>(w.values().data(), static_cast<Eigen::Index>(w.size()));
}

}  // namespace

TEST_CASE("build_system rows hold size times count") {
  SUBCASE("single connected graph") {
    SurveyDataset ds{{{"g", Graph(3, {{0, 1}, {1, 2}}), {2.0, 3.0, 2.8}}}};
    const auto dm = build_system(ds);
    REQUIRE(dm.rows() == 1);
    REQUIRE(dm.cols() == 3);
    CHECK(dm.a(0, 0) == 0);
    CHECK(dm.a(0, 1) == 0);
    CHECK(dm.a(0, 2) == 3);
    CHECK(dm.target(0) == doctest::Approx(2.6));
  }
  SUBCASE("components {2,1}") {
    SurveyDataset ds{{{"g", Graph(3, {{0, 1}}), {1.8}}}};
    const auto dm = build_system(ds);
    REQUIRE(dm.cols() == 2);  // largest component observed
    CHECK(dm.a(0, 0) == 1);
    CHECK(dm.a(0, 1) == 2);
  }
  SUBCASE("identical graphs keep separate rows") {
    const Graph g(4, {{0, 1}, {2, 3}});
    SurveyDataset ds{{{"a", g, {2.0}}, {"b", g, {3.0}}}};
    const auto dm = build_system(ds);
    CHECK(dm.a.row(0) == dm.a.row(1));
    CHECK(dm.target(0) == 2.0);
    CHECK(dm.target(1) == 3.0);
    CHECK(dm.graph_ids == std::vector<std::string>{"a", "b"});
  }
  SUBCASE("row sums equal n") {
    for (const auto& g : oracle::mixed_suite(30, 30, 4)) {
      SurveyDataset ds{{{"g", g, {1.0}}}};
      CHECK(build_system(ds).a.sum() == static_cast<double>(g.node_count()));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(build_system(SurveyDataset{}), InvalidArgument);
    SurveyDataset out_of_range{{{"g", Graph(3, {{0, 1}}), {3.5}}}};
    CHECK_THROWS_AS(build_system(out_of_range), InvalidArgument);
    SurveyDataset no_estimates{{{"g", Graph(3, {{0, 1}}), {}}}};
    CHECK_THROWS_AS(build_system(no_estimates), InvalidArgument);
  }
}

TEST_CASE("fit_weights solves the one-equation system with minimum norm") {
  DesignMatrix dm;
  dm.a = Eigen::MatrixXd{{0, 0, 3}};
  dm.target = Eigen::VectorXd{{2.6}};
  const auto fit = fit_weights(dm, 0.0);
  CHECK(fit.weights.at(1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(fit.weights.at(2) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(fit.weights.at(3) == doctest::Approx(2.6 / 3.0).epsilon(1e-12));
  CHECK(fit.weights.at(3) == doctest::Approx(0.8667).epsilon(1e-4));
  CHECK(fit.rank == 1);
  CHECK(fit.residual_norm == doctest::Approx(0.0));
}

TEST_CASE("fit_weights recovers generating weights") {
  std::mt19937_64 rng(5);
  std::vector<double> truth(12);
  for (auto& w : truth) w = 0.4 + 0.6 * static_cast<double>(rng() % 10000) / 10000.0;
  const WeightVector w_star(truth);
  const auto dm = build_system(round_trip_dataset(w_star, 12, 99));
  REQUIRE(dm.cols() == 12);
  const auto fit = fit_weights(dm, 0.0);
  CHECK(fit.rank == 12);
  for (std::size_t i = 1; i <= 12; ++i) CHECK(std::abs(fit.weights.at(i) - w_star.at(i)) < 1e-6);
  CHECK(fit.residual_norm < 1e-9);
}

TEST_CASE("rank-deficient fit matches the pseudo-inverse") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    DesignMatrix dm;
    dm.a = Eigen::MatrixXd::Zero(6, 9);
    for (Eigen::Index r = 0; r < 6; ++r)
      for (Eigen::Index c = 0; c < 9; c += 2) dm.a(r, c) = static_cast<double>(rng() % 5);
    dm.a.col(4) = dm.a.col(0) + dm.a.col(2);
    dm.target = Eigen::VectorXd::Random(6).cwiseAbs() * 5;
    const auto fit = fit_weights(dm, 0.0);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(dm.a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd pinv_solution = svd.solve(dm.target);
    CHECK((as_vector(fit.weights) - pinv_solution).norm() < 1e-9);
    // Odd columns never appear, so their weights are unidentifiable and zero.
    for (std::size_t i = 2; i <= 9; i += 2) CHECK(std::abs(fit.weights.at(i)) < 1e-12);
  }
}

TEST_CASE("fit_weights optimality under random perturbations") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (double lambda : {0.0, 0.1, 5.0}) {
    DesignMatrix dm;
    dm.a = Eigen::MatrixXd::Zero(8, 5);
    for (Eigen::Index r = 0; r < 8; ++r)
      for (Eigen::Index c = 0; c < 5; ++c) dm.a(r, c) = static_cast<double>(rng() % 7);
    dm.target = Eigen::VectorXd::NullaryExpr(8, [&] { return 1 + std::abs(noise(rng)) * 4; });
    const auto fit = fit_weights(dm, lambda);
    const Eigen::VectorXd w = as_vector(fit.weights);
    const double best = objective(dm, w, lambda);
    for (int i = 0; i < 200; ++i) {
      const double scale = std::pow(10.0, -static_cast<double>(i % 6));
      const Eigen::VectorXd delta = Eigen::VectorXd::NullaryExpr(5, [&] { return scale * noise(rng); });
      CHECK(objective(dm, w + delta, lambda) >= best * (1 - 1e-8) - 1e-12);
    }
    CHECK(fit.residual_norm == doctest::Approx((dm.a * w - dm.target).norm()));
    CHECK(fit.lambda == lambda);
  }
}

TEST_CASE("ridge limit drives weights to zero") {
  DesignMatrix dm;
  dm.a = Eigen::MatrixXd{{1, 2, 0}, {0, 0, 3}, {4, 0, 0}};
  dm.target = Eigen::VectorXd{{2, 3, 1}};
  const auto fit = fit_weights(dm, 1e12);
  for (double w : fit.weights.values()) CHECK(std::abs(w) < 1e-10);
  CHECK_THROWS_AS(fit_weights(dm, -1.0), InvalidArgument);
  dm.a(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(fit_weights(dm, 0.0), InvalidArgument);
}

TEST_CASE("survey files") {
  const auto dir = std::filesystem::temp_directory_path() / "netstrength_survey_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  save_edge_list(dir / "g1.edges", Graph(3, {{0, 1}, {1, 2}}));
  save_edge_list(dir / "g2.edges", Graph(4, {{0, 1}}));
  {
    std::ofstream out(dir / "survey.csv");
    out << "graph_id,participant_id,estimate\n"
        << "g1,p1,2\ng1,p2,3\ng2,p1,1.5\n";
  }
  const auto ds = load_survey(dir / "survey.csv", dir);
  REQUIRE(ds.records.size() == 2);
  CHECK(ds.records[0].graph_id == "g1");
  CHECK(ds.records[0].mean_estimate() == 2.5);
  CHECK(ds.records[1].graph.node_count() == 4);

  const auto fit = fit_weights(build_system(ds));
  std::ostringstream report;
  write_fit_report(report, fit, build_system(ds));
  CHECK(report.str().find("\"rank\":") != std::string::npos);
  CHECK(report.str().back() == '\n');

  {
    std::ofstream out(dir / "empty.csv");
    out << "graph_id,participant_id,estimate\n";
  }
  CHECK_THROWS_AS(load_survey(dir / "empty.csv", dir), InvalidArgument);
  {
    std::ofstream out(dir / "bad.csv");
    out << "graph_id,participant_id,estimate\ng1,p1,9\n";
  }
  CHECK_THROWS_AS(load_survey(dir / "bad.csv", dir), ParseError);
  {
    std::ofstream out(dir / "missing.csv");
    out << "graph_id,participant_id,estimate\nnope,p1,2\n";
  }
  CHECK_THROWS_AS(load_survey(dir / "missing.csv", dir), Error);
  std::filesystem::remove_all(dir);
}
