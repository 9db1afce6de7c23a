#include "netstrength/datasets.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "netstrength/error.hpp"
#include "text.hpp"

namespace netstrength {

namespace {

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

// Inverse of the row-major enumeration of pairs (0,1), (0,2), ..., (n-2,n-1).
Edge pair_from_index(std::uint64_t index, std::size_t n) {
  NodeId u = 0;
  std::uint64_t row = n - 1;
  while (index >= row) {
    index -= row;
    --row;
    ++u;
  }
  return {u, static_cast<NodeId>(u + 1 + index)};
}

std::string_view model_name(RandomModel m) { return m == RandomModel::kGnp ? "gnp" : "gnm"; }

}  // namespace

void GeneratorSpec::validate() const {
  if (nodes < 3) throw InvalidArgument("random graphs need at least 3 nodes");
  if (model == RandomModel::kGnp && !(probability >= 0.0 && probability <= 1.0)) {
    throw InvalidArgument("edge probability must lie in [0, 1]");
  }
  if (model == RandomModel::kGnm && edges > pair_count(nodes)) {
    throw InvalidArgument("m = " + std::to_string(edges) + " exceeds C(" +
                          std::to_string(nodes) + ",2) = " + std::to_string(pair_count(nodes)));
  }
}

std::uint64_t stream_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(seed + static_cast<std::uint64_t>(index));
}

Graph generate_one(const GeneratorSpec& spec, std::size_t index) {
  spec.validate();
  std::mt19937_64 rng(stream_seed(spec.seed, index));
  const std::size_t n = spec.nodes;
  std::vector<Edge> edges;

  if (spec.model == RandomModel::kGnp) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (uniform01(rng) < spec.probability) edges.emplace_back(u, v);
      }
    }
  } else {
    // Floyd's sampling of m distinct pair indices.
    const std::uint64_t total = pair_count(n);
    std::set<std::uint64_t> chosen;
    for (std::uint64_t j = total - spec.edges; j < total; ++j) {
      const std::uint64_t t = uniform_below(rng, j + 1);
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    edges.reserve(chosen.size());
    for (std::uint64_t idx : chosen) edges.push_back(pair_from_index(idx, n));
  }
  return Graph(n, edges);
}

std::vector<Graph> generate(const GeneratorSpec& spec) {
  spec.validate();
  std::vector<Graph> graphs;
  graphs.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) graphs.push_back(generate_one(spec, i));
  return graphs;
}

Graph read_edge_list(std::istream& in, std::string_view source) {
  const std::string src(source);
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;

  auto intern = [&](std::string_view label) {
    auto [it, inserted] = ids.try_emplace(std::string(label), static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const auto tokens = detail::split_whitespace(text.substr(1));
      if (!tokens.empty() && tokens.front() == "nodes") {
        for (std::size_t i = 1; i < tokens.size(); ++i) intern(tokens[i]);
      }
      continue;
    }
    const auto tokens = detail::split_whitespace(text);
    if (tokens.size() != 2) {
      throw ParseError(src, line_no,
                       "expected two labels per edge, found " + std::to_string(tokens.size()));
    }
    const NodeId u = intern(tokens[0]);
    const NodeId v = intern(tokens[1]);
    edges.emplace_back(u, v);
  }
  const std::size_t n = labels.size();
  return Graph(n, edges, std::move(labels));
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list " + path.string());
  return read_edge_list(in, path.string());
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& label : g.labels()) {
    if (label.empty() || label.front() == '#' ||
        label.find_first_of(" \t\r\n") != std::string::npos) {
      throw InvalidArgument("label '" + label + "' cannot be written to an edge list");
    }
  }
  out << "# nodes";
  for (const auto& label : g.labels()) out << ' ' << label;
  out << '\n';
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

void save_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_edge_list(out, g);
  if (!out) throw Error("failed writing " + path.string());
}

std::vector<std::filesystem::path> write_suite(const std::filesystem::path& dir,
                                               std::string_view stem,
                                               const GeneratorSpec& spec,
                                               const std::vector<Graph>& graphs) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  nlohmann::json files = nlohmann::json::array();
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const std::string name = std::string(stem) + "_" + std::to_string(i) + ".edges";
    save_edge_list(dir / name, graphs[i]);
    written.push_back(dir / name);
    files.push_back({{"file", name},
                     {"index", i},
                     {"stream_seed", stream_seed(spec.seed, i)},
                     {"nodes", graphs[i].node_count()},
                     {"edges", graphs[i].edge_count()}});
  }

  nlohmann::json params = {{"n", spec.nodes}};
  if (spec.model == RandomModel::kGnp) {
    params["p"] = spec.probability;
  } else {
    params["m"] = spec.edges;
  }
  nlohmann::json manifest = {
      {"model", model_name(spec.model)},
      {"params", params},
      {"seed", spec.seed},
      {"count", graphs.size()},
      {"rng", "mt19937_64 seeded by splitmix64(seed + index)"},
      {"graphs", files},
  };
  const auto manifest_path = dir / (std::string(stem) + "_manifest.json");
  std::ofstream out(manifest_path);
  if (!out) throw Error("cannot open " + manifest_path.string() + " for writing");
  out << manifest.dump(2) << '\n';
  written.push_back(manifest_path);
  return written;
}

}  // namespace netstrength
