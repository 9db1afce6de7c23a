#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "netstrength/datasets.hpp"
#include "netstrength/error.hpp"

using namespace netstrength;

TEST_CASE("gnp extremes") {
  const auto none = generate({RandomModel::kGnp, 10, 0.0, 0, 1, 3});
  REQUIRE(none.size() == 3);
  for (const auto& g : none) {
    CHECK(g.node_count() == 10);
    CHECK(g.edge_count() == 0);
  }
  const auto full = generate({RandomModel::kGnp, 10, 1.0, 0, 1, 2});
  for (const auto& g : full) CHECK(g.edge_count() == 45);
}

TEST_CASE("generation is a pure function of the spec") {
  const GeneratorSpec gnm{RandomModel::kGnm, 8, 0, 5, 42, 4};
  const auto a = generate(gnm);
  const auto b = generate(gnm);
  CHECK(a == b);
  for (const auto& g : a) CHECK(g.edge_count() == 5);
  // Different graphs inside one suite, and per-index streams.
  CHECK(a[0] != a[1]);
  CHECK(generate_one(gnm, 2) == a[2]);

  const GeneratorSpec other{RandomModel::kGnm, 8, 0, 5, 43, 4};
  CHECK(generate(other) != a);
}

TEST_CASE("gnm hits every edge count and covers pairs") {
  for (std::size_t m = 0; m <= 10; ++m) {
    const auto g = generate_one({RandomModel::kGnm, 5, 0, m, 7, 1}, 0);
    CHECK(g.edge_count() == m);
  }
  std::vector<int> seen(45, 0);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto g = generate_one({RandomModel::kGnm, 10, 0, 3, seed, 1}, 0);
    for (auto [u, v] : g.edges()) {
      ++seen[static_cast<std::size_t>(u * 10 + v - (u + 1) * (u + 2) / 2)];
    }
  }
  for (int c : seen) CHECK(c > 0);
}

TEST_CASE("gnp edge count matches its expectation") {
  const std::size_t n = 20;
  const double p = 0.3;
  const double pairs = n * (n - 1) / 2.0;
  double total = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    total += static_cast<double>(generate_one({RandomModel::kGnp, n, p, 0, seed, 1}, 0).edge_count());
  }
  const double mean = total / 1000.0;
  // Standard deviation of the sample mean of a Binomial(pairs, p).
  const double sd = std::sqrt(pairs * p * (1 - p) / 1000.0);
  CHECK(std::abs(mean - p * pairs) < 3 * sd);
}

TEST_CASE("generator spec validation") {
  CHECK_THROWS_AS(generate({RandomModel::kGnm, 5, 0, 100, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(generate({RandomModel::kGnm, 5, 0, 11, 0, 1}), InvalidArgument);
  CHECK_NOTHROW(generate({RandomModel::kGnm, 5, 0, 10, 0, 1}));
  CHECK_THROWS_AS(generate({RandomModel::kGnp, 2, 0.5, 0, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(generate({RandomModel::kGnp, 5, 1.5, 0, 0, 1}), InvalidArgument);
}

TEST_CASE("edge list parsing") {
  SUBCASE("path") {
    std::istringstream in("0 1\n1 2\n");
    const auto g = read_edge_list(in);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
  }
  SUBCASE("duplicates and self-loops are counted") {
    std::istringstream in("# comment\n0 1\n\n0 1\n1 0\n2 2\n");
    const auto g = read_edge_list(in);
    CHECK(g.edge_count() == 1);
    CHECK(g.dropped_duplicates() == 2);
    CHECK(g.dropped_self_loops() == 1);
    CHECK(g.node_count() == 3);
  }
  SUBCASE("labels keep first-appearance order") {
    std::istringstream in("bob alice\nalice carol\n");
    const auto g = read_edge_list(in);
    CHECK(g.labels() == std::vector<std::string>{"bob", "alice", "carol"});
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
  }
  SUBCASE("malformed line reports its number") {
    std::istringstream in("0 1\n1 2 3\n");
    try {
      read_edge_list(in, "bad.edges");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("bad.edges:2") != std::string::npos);
    }
  }
}

TEST_CASE("edge list round trip keeps isolated nodes and labels") {
  const auto dir = std::filesystem::temp_directory_path() / "netstrength_datasets_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  for (const auto& g : generate({RandomModel::kGnp, 12, 0.1, 0, 5, 10})) {
    save_edge_list(dir / "g.edges", g);
    const auto once = load_edge_list(dir / "g.edges");
    save_edge_list(dir / "h.edges", once);
    const auto twice = load_edge_list(dir / "h.edges");
    CHECK(once == g);
    CHECK(twice == once);
  }
  std::istringstream named("x y\ny z\n");
  const auto g = read_edge_list(named);
  save_edge_list(dir / "named.edges", g);
  CHECK(load_edge_list(dir / "named.edges") == g);

  const auto written = write_suite(dir / "suite", "gnp", {RandomModel::kGnp, 10, 0.2, 0, 7, 5},
                                   generate({RandomModel::kGnp, 10, 0.2, 0, 7, 5}));
  CHECK(written.size() == 6);
  CHECK(written.back().filename() == "gnp_manifest.json");
  CHECK(std::filesystem::exists(dir / "suite" / "gnp_4.edges"));
  CHECK_THROWS_AS(load_edge_list(dir / "does_not_exist.edges"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("CHIAPAS fixture size" * doctest::skip(std::getenv("NETSTRENGTH_DATA_DIR") == nullptr)) {
  const std::filesystem::path path = std::filesystem::path(std::getenv("NETSTRENGTH_DATA_DIR")) / "CHIAPAS.edges";
  REQUIRE(std::filesystem::exists(path));
  const auto g = load_edge_list(path);
  CHECK(g.node_count() == 34);
  CHECK(g.edge_count() == 225);
}
