#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netstrength {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Simple undirected graph over node ids 0..n-1.
///
/// Immutable after construction. Edges are stored canonically (u < v) and
/// sorted, so two graphs built from the same edge set compare equal no matter
/// the insertion order or the orientation of each pair. Every node carries a
/// display label; when none is supplied the label is the decimal id.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from `edges`. Self-loops and repeated pairs are dropped
  /// and counted; an endpoint outside [0, n) throws InvalidArgument.
  Graph(std::size_t n, std::span<const Edge> edges, std::vector<std::string> labels = {});
  Graph(std::size_t n, std::initializer_list<Edge> edges);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(v); }
  std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }
  bool has_edge(NodeId u, NodeId v) const;

  const std::string& label(NodeId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Number of self-loops discarded during construction.
  std::size_t dropped_self_loops() const noexcept { return dropped_self_loops_; }
  /// Number of repeated edges discarded during construction.
  std::size_t dropped_duplicates() const noexcept { return dropped_duplicates_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.edges_ == b.edges_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::string> labels_;
  std::size_t dropped_self_loops_ = 0;
  std::size_t dropped_duplicates_ = 0;
};

struct ComponentDecomposition {
  /// assignment[v] is the component index of node v. Components are numbered
  /// in order of their smallest node id.
  std::vector<std::size_t> assignment;
  std::vector<std::size_t> sizes;

  std::size_t count() const noexcept { return sizes.size(); }
};

/// Connected component size distribution.
///
/// `counts[i - 1]` holds the number of components with exactly i nodes, for
/// i = 1..n.
struct Ccsd {
  std::vector<std::size_t> counts;

  std::size_t node_count() const noexcept { return counts.size(); }
  /// Components of the given size (1-based); 0 for sizes beyond n.
  std::size_t of_size(std::size_t size) const noexcept {
    return size >= 1 && size <= counts.size() ? counts[size - 1] : 0;
  }
  friend bool operator==(const Ccsd&, const Ccsd&) = default;
};

ComponentDecomposition components(const Graph& g);

/// Throws EmptyGraphError when g has no nodes.
Ccsd ccsd(const Graph& g);
Ccsd ccsd_from_sizes(std::span<const std::size_t> sizes, std::size_t n);

/// Induced subgraph on the nodes not in `removed`. Survivors are renumbered
/// contiguously in increasing original-id order and keep their labels.
Graph remove_nodes(const Graph& g, std::span<const NodeId> removed);

}  // namespace netstrength
