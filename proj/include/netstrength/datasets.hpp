#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "netstrength/graph.hpp"

namespace netstrength {

enum class RandomModel {
  kGnp,  ///< each pair independently with probability p
  kGnm,  ///< exactly m edges, uniformly among all C(n,2) pairs
};

struct GeneratorSpec {
  RandomModel model = RandomModel::kGnp;
  std::size_t nodes = 3;
  double probability = 0.0;  // gnp only
  std::size_t edges = 0;     // gnm only
  std::uint64_t seed = 0;
  std::size_t count = 1;

  /// Throws InvalidArgument: n < 3, p outside [0, 1], m > C(n, 2).
  void validate() const;
};

/// Seed of the independent stream used for graph `index` of a suite.
///
/// Streams are std::mt19937_64 seeded with splitmix64(seed + index). Doubles
/// are taken from the top 53 bits of a draw; bounded integers use rejection
/// sampling. Neither depends on the standard library's distribution classes,
/// so output is identical across toolchains.
std::uint64_t stream_seed(std::uint64_t seed, std::size_t index);

/// Pure function of the spec: the same spec always yields the same graphs.
std::vector<Graph> generate(const GeneratorSpec& spec);
Graph generate_one(const GeneratorSpec& spec, std::size_t index);

/// Parses whitespace-separated label pairs, one edge per line. Blank lines
/// and lines starting with '#' are ignored, except a `# nodes <label>...`
/// line, which declares labels (and so isolated nodes) in order. Labels map
/// to ids in first-appearance order. Self-loops and repeated edges are
/// dropped and reported through Graph::dropped_self_loops/dropped_duplicates.
Graph read_edge_list(std::istream& in, std::string_view source = "<stream>");
Graph load_edge_list(const std::filesystem::path& path);

/// Writes the `# nodes` declaration followed by one edge per line.
void write_edge_list(std::ostream& out, const Graph& g);
void save_edge_list(const std::filesystem::path& path, const Graph& g);

/// Writes `<stem>_<index>.edges` for each graph plus `<stem>_manifest.json`.
/// Returns the written paths, manifest last.
std::vector<std::filesystem::path> write_suite(const std::filesystem::path& dir,
                                               std::string_view stem,
                                               const GeneratorSpec& spec,
                                               const std::vector<Graph>& graphs);

}  // namespace netstrength
