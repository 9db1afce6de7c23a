#include "netstrength/graph.hpp"

#include <algorithm>
#include <queue>

#include "netstrength/error.hpp"

namespace netstrength {

Graph::Graph(std::size_t n, std::span<const Edge> edges, std::vector<std::string> labels)
    : adjacency_(n), labels_(std::move(labels)) {
  if (labels_.empty()) {
    labels_.reserve(n);
    for (std::size_t v = 0; v < n; ++v) labels_.push_back(std::to_string(v));
  } else if (labels_.size() != n) {
    throw InvalidArgument("label count " + std::to_string(labels_.size()) +
                          " does not match node count " + std::to_string(n));
  }

  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InvalidArgument("edge {" + std::to_string(u) + "," + std::to_string(v) +
                            "} has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) {
      ++dropped_self_loops_;
      continue;
    }
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  auto tail = std::unique(edges_.begin(), edges_.end());
  dropped_duplicates_ = static_cast<std::size_t>(edges_.end() - tail);
  edges_.erase(tail, edges_.end());

  for (auto [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

Graph::Graph(std::size_t n, std::initializer_list<Edge> edges)
    : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return false;
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

ComponentDecomposition components(const Graph& g) {
  const std::size_t n = g.node_count();
  constexpr auto kUnassigned = static_cast<std::size_t>(-1);

  ComponentDecomposition out;
  out.assignment.assign(n, kUnassigned);
  std::queue<NodeId> frontier;
  for (NodeId root = 0; root < n; ++root) {
    if (out.assignment[root] != kUnassigned) continue;
    const std::size_t index = out.sizes.size();
    std::size_t size = 0;
    out.assignment[root] = index;
    frontier.push(root);
    while (!frontier.empty()) {
      NodeId v = frontier.front();
      frontier.pop();
      ++size;
      for (NodeId w : g.neighbors(v)) {
        if (out.assignment[w] == kUnassigned) {
          out.assignment[w] = index;
          frontier.push(w);
        }
      }
    }
    out.sizes.push_back(size);
  }
  return out;
}

Ccsd ccsd_from_sizes(std::span<const std::size_t> sizes, std::size_t n) {
  Ccsd out;
  out.counts.assign(n, 0);
  for (std::size_t s : sizes) {
    if (s == 0 || s > n) {
      throw InvalidArgument("component size " + std::to_string(s) + " outside [1, " +
                            std::to_string(n) + "]");
    }
    ++out.counts[s - 1];
  }
  return out;
}

Ccsd ccsd(const Graph& g) {
  if (g.node_count() == 0) throw EmptyGraphError();
  const auto decomposition = components(g);
  return ccsd_from_sizes(decomposition.sizes, g.node_count());
}

Graph remove_nodes(const Graph& g, std::span<const NodeId> removed) {
  const std::size_t n = g.node_count();
  std::vector<bool> gone(n, false);
  for (NodeId v : removed) {
    if (v >= n) throw InvalidArgument("cannot remove unknown node id " + std::to_string(v));
    gone[v] = true;
  }

  constexpr auto kDropped = static_cast<NodeId>(-1);
  std::vector<NodeId> remap(n, kDropped);
  std::vector<std::string> labels;
  NodeId next = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (gone[v]) continue;
    remap[v] = next++;
    labels.push_back(g.label(v));
  }

  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    if (!gone[u] && !gone[v]) edges.emplace_back(remap[u], remap[v]);
  }
  return Graph(next, edges, std::move(labels));
}

}  // namespace netstrength
