#include <doctest.h>

#include <regex>
#include <sstream>

#include "netstrength/error.hpp"
#include "netstrength/ilp.hpp"
#include "support/oracles.hpp"

using namespace netstrength;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++count;
  return count;
}

std::string section(const std::string& lp, const std::string& title, const std::string& next) {
  const auto start = lp.find(title + "\n");
  const auto end = lp.find(next + "\n", start);
  return lp.substr(start + title.size() + 1, end - start - title.size() - 1);
}

std::size_t count_tokens_matching(const std::string& text, const std::regex& re) {
  std::istringstream in(text);
  std::string token;
  std::size_t count = 0;
  while (in >> token)
    if (std::regex_match(token, re)) ++count;
  return count;
}

const Graph kPath3(3, {{0, 1}, {1, 2}});

}  // namespace

TEST_CASE("model variable and row counts") {
  for (std::size_t n = 2; n <= 6; ++n) {
    std::mt19937_64 rng(n);
    const Graph g = oracle::random_connected(n, 0.3, rng);
    const auto model = build_ilp_model(g, 1, default_weights());
    CHECK(model.count_prefix("x_") == n * n);
    CHECK(model.count_prefix("y_") == n);
    CHECK(model.count_prefix("m_") == n * (n + 1));
    CHECK(model.count_prefix("C_") == n);
    CHECK(model.count_prefix("S_") == n + 1);
    std::size_t edge_rows = 0, budget_rows = 0;
    for (const auto& row : model.constraints) {
      if (row.family == "edge_le" || row.family == "edge_ge") ++edge_rows;
      if (row.family == "budget") ++budget_rows;
    }
    CHECK(edge_rows == 2 * n * g.edge_count());
    CHECK(budget_rows == 1);
  }
}

TEST_CASE("LP text for a three-node path") {
  const std::string lp = emit_ilp(kPath3, 1, default_weights());
  CHECK(lp.find("Minimize\n obj:") != std::string::npos);
  CHECK(lp.rfind("End\n") == lp.size() - 4);

  const auto binaries = section(lp, "Binaries", "End");
  CHECK(count_tokens_matching(binaries, std::regex("x_\\d+_\\d+")) == 9);
  CHECK(count_tokens_matching(binaries, std::regex("y_\\d+")) == 3);
  CHECK(count_tokens_matching(binaries, std::regex("m_\\d+_\\d+")) == 12);
  const auto generals = section(lp, "Generals", "Binaries");
  CHECK(count_tokens_matching(generals, std::regex("C_\\d+")) == 3);
  CHECK(count_tokens_matching(generals, std::regex("S_\\d+")) == 4);

  CHECK(count_occurrences(lp, " budget: y_0 + y_1 + y_2 <= 1\n") == 1);
  CHECK(count_occurrences(lp, "edge_le_") == 2 * 3);
  CHECK(count_occurrences(lp, "edge_ge_") == 2 * 3);
  CHECK(lp.find(" edge_le_0_1_2: x_0_2 - x_1_2 - y_0 - y_1 <= 0\n") != std::string::npos);
  CHECK(lp.find(" edge_ge_0_1_2: x_0_2 - x_1_2 + y_0 + y_1 >= 0\n") != std::string::npos);
  // Objective: size-weighted slot counts minus W_1 per removed node.
  CHECK(lp.find(" obj: 0 S_0 + 0.2221 S_1 + 1.3214 S_2 + 2.6241000000000003 S_3 - 0.2221 y_0") != std::string::npos);
  CHECK(emit_ilp(kPath3, 1, default_weights()) == lp);
}

TEST_CASE("model preconditions") {
  CHECK_THROWS_AS(build_ilp_model(kPath3, 3, default_weights()), InvalidArgument);
  CHECK_THROWS_AS(build_ilp_model(kPath3, 0, default_weights()), InvalidArgument);
  CHECK_THROWS_AS(build_ilp_model(kPath3, 1, WeightVector({0.5, 0.7})), WeightRangeError);
  CHECK_NOTHROW(build_ilp_model(kPath3, 1, WeightVector({0.5, 0.7}, ExtensionPolicy::kClampToLast)));
}

TEST_CASE("hand-built assignment for the three-node path") {
  // Remove the middle node: slots 1 = {0}, 2 = {2}, 3 = {1}.
  IlpAssignment a;
  const int slot_of[3] = {1, 3, 2};
  for (int i = 0; i < 3; ++i) {
    for (int j = 1; j <= 3; ++j) a["x_" + std::to_string(i) + "_" + std::to_string(j)] = slot_of[i] == j;
    a["y_" + std::to_string(i)] = i == 1;
  }
  for (int j = 1; j <= 3; ++j) {
    a["C_" + std::to_string(j)] = 1;
    for (int t = 0; t <= 3; ++t) a["m_" + std::to_string(j) + "_" + std::to_string(t)] = t == 1;
  }
  a["S_0"] = 0;
  a["S_1"] = 3;
  a["S_2"] = 0;
  a["S_3"] = 0;

  const auto w = default_weights();
  const auto check = verify_ilp_solution(kPath3, 1, w, a);
  const std::vector<NodeId> middle{1};
  CHECK(check.objective == doctest::Approx(sigma(remove_nodes(kPath3, middle), w).raw).epsilon(1e-12));
  CHECK(check.objective == doctest::Approx(2 * 0.2221));
  CHECK(check.removed == middle);
  REQUIRE(check.optimum.has_value());
  CHECK(check.optimum->removed == middle);
  CHECK(check.matches_optimum);

  SUBCASE("a node in two slots breaks the assignment rows") {
    auto bad = a;
    bad["x_0_2"] = 1;
    try {
      verify_ilp_solution(kPath3, 1, w, bad);
      FAIL("expected a violation");
    } catch (const ConstraintViolation& e) {
      CHECK(e.family() == "assign");
    }
  }
  SUBCASE("removing two nodes breaks the budget") {
    auto bad = a;
    bad["y_0"] = 1;
    try {
      verify_ilp_solution(kPath3, 1, w, bad);
      FAIL("expected a violation");
    } catch (const ConstraintViolation& e) {
      CHECK(e.family() == "budget");
    }
  }
  SUBCASE("splitting an edge without removal breaks the edge rows") {
    auto bad = a;
    bad["y_1"] = 0;
    try {
      verify_ilp_solution(kPath3, 1, w, bad);
      FAIL("expected a violation");
    } catch (const ConstraintViolation& e) {
      CHECK(e.family() == "edge_le");
    }
  }
  SUBCASE("fractional and missing values") {
    auto frac = a;
    frac["m_1_1"] = 0.5;
    CHECK_THROWS_AS(verify_ilp_solution(kPath3, 1, w, frac), ConstraintViolation);
    auto missing = a;
    missing.erase("S_2");
    try {
      verify_ilp_solution(kPath3, 1, w, missing);
      FAIL("expected a violation");
    } catch (const ConstraintViolation& e) {
      CHECK(e.family() == "coverage");
    }
  }
}

TEST_CASE("canonical assignments reproduce sigma on the residual") {
  const auto w = default_weights();
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + rng() % 8;
    const Graph g = generate_one({RandomModel::kGnp, n, 0.3, 0, rng(), 1}, 0);
    std::vector<NodeId> removed;
    for (NodeId v = 0; v < n; ++v)
      if (rng() % 4 == 0 && removed.size() < 2) removed.push_back(v);
    const std::size_t k = std::max<std::size_t>(removed.size(), 1);
    const auto check = verify_ilp_solution(g, k, w, assignment_for_removal(g, removed));
    if (removed.empty()) {
      CHECK(check.objective == doctest::Approx(sigma(g, w).raw).epsilon(1e-12));
    } else {
      CHECK(check.objective == doctest::Approx(sigma(remove_nodes(g, removed), w).raw).epsilon(1e-12));
    }
    CHECK(check.removed == removed);
  }
}

TEST_CASE("assignment files") {
  std::istringstream in("# solver output\nx_0_1 1\ny_0 0\nS_0 2.0\n");
  const auto a = read_assignment(in);
  CHECK(a.size() == 3);
  CHECK(a.at("S_0") == 2.0);
  std::istringstream bad("x_0_1\n");
  CHECK_THROWS_AS(read_assignment(bad), ParseError);
}
