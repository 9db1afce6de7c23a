#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "netstrength/graph.hpp"
#include "netstrength/metrics.hpp"

namespace netstrength {

/// Strength measure minimized on the residual graph. `weights` is required
/// for the proposed metric and ignored otherwise.
struct Objective {
  MetricId metric = MetricId::kProposed;
  std::optional<WeightVector> weights;

  static Objective proposed(WeightVector w) { return {MetricId::kProposed, std::move(w)}; }
  static Objective baseline(MetricId id) { return {id, std::nullopt}; }
};

struct DismantleQuery {
  Graph graph;
  std::size_t k = 1;
  Objective objective;
  /// Search every removal set of size 1..k instead of exactly k.
  bool allow_fewer = true;
};

/// Limits for exhaustive search. Exceeding any of them raises
/// InstanceTooLarge; there is no heuristic fallback.
struct SearchBudget {
  std::size_t max_nodes_up_to_k2 = 40;
  std::size_t max_nodes_k3 = 25;
  std::size_t max_subsets = 2'000'000;
  unsigned threads = 1;
};

struct DismantleResult {
  std::vector<NodeId> removed;  // sorted ids in the input graph
  double residual_value = 0.0;  // objective evaluated on remove_nodes(graph, removed)
  std::size_t ties = 0;         // number of optimal removal sets
  MetricId objective = MetricId::kProposed;
};

/// Two objective values are tied when they differ by at most 1e-12 relative.
bool objective_tied(double a, double b);

/// Objective value of a graph under `objective`.
double evaluate_objective(const Graph& g, const Objective& objective);

/// Exact minimizer of the residual objective over removal sets.
///
/// Among tied optima the smallest set wins, then the lexicographically
/// smallest sorted id sequence. The result does not depend on
/// `budget.threads`.
DismantleResult best_removal(const DismantleQuery& q, const SearchBudget& budget = {});

/// Same search restricted to the structural baselines (cole1, cole2, gfp).
DismantleResult best_removal_baseline(const DismantleQuery& q, const SearchBudget& budget = {});

/// Number of removal sets the query would enumerate.
std::size_t search_space_size(std::size_t n, std::size_t k, bool allow_fewer);

/// JSON object {removed:[labels], residual_value, objective, k, ties}.
std::string result_to_json(const DismantleResult& r, const Graph& g, std::size_t k);

}  // namespace netstrength
