#include "netstrength/dismantle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <json.hpp>

#include "netstrength/error.hpp"

namespace netstrength {

namespace {

// CCSD of the graph with `removed` nodes masked out, without materializing
// the residual graph.
Ccsd residual_ccsd(const Graph& g, const std::vector<bool>& removed, std::size_t removed_count,
                   std::vector<NodeId>& stack, std::vector<char>& seen) {
  const std::size_t n = g.node_count();
  Ccsd out;
  out.counts.assign(n - removed_count, 0);
  std::fill(seen.begin(), seen.end(), 0);
  for (NodeId root = 0; root < n; ++root) {
    if (removed[root] || seen[root]) continue;
    std::size_t size = 0;
    seen[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      ++size;
      for (NodeId w : g.neighbors(v)) {
        if (!removed[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    ++out.counts[size - 1];
  }
  return out;
}

double evaluate(const Ccsd& d, const Objective& objective) {
  switch (objective.metric) {
    case MetricId::kProposed: return sigma(d, *objective.weights).raw;
    case MetricId::kCole1: return cole1(d).raw;
    case MetricId::kCole2: return cole2(d).raw;
    case MetricId::kGfp: return gfp_score(d).raw;
  }
  throw InvalidArgument("unknown objective");
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    if (result > std::numeric_limits<std::size_t>::max() / (n - k + i)) {
      return std::numeric_limits<std::size_t>::max();
    }
    result = result * (n - k + i) / i;
  }
  return result;
}

// Appends every k-subset of 0..n-1 in lexicographic order to `flat`.
void append_combinations(std::size_t n, std::size_t k, std::vector<NodeId>& flat) {
  std::vector<NodeId> current(k);
  for (std::size_t i = 0; i < k; ++i) current[i] = static_cast<NodeId>(i);
  while (true) {
    flat.insert(flat.end(), current.begin(), current.end());
    std::size_t i = k;
    while (i > 0 && current[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++current[i - 1];
    for (std::size_t j = i; j < k; ++j) current[j] = current[j - 1] + 1;
  }
}

void check_query(const DismantleQuery& q, const SearchBudget& budget) {
  const std::size_t n = q.graph.node_count();
  if (q.k < 1 || q.k >= n) {
    throw InvalidArgument("budget k = " + std::to_string(q.k) + " must satisfy 1 <= k < n = " +
                          std::to_string(n));
  }
  if (q.objective.metric == MetricId::kProposed) {
    if (!q.objective.weights) throw InvalidArgument("proposed objective needs a weight vector");
    const auto sizes = components(q.graph).sizes;
    const std::size_t largest = *std::max_element(sizes.begin(), sizes.end());
    if (!q.objective.weights->covers(largest)) {
      throw WeightRangeError(largest, q.objective.weights->size());
    }
  }
  const std::size_t node_limit = q.k <= 2 ? budget.max_nodes_up_to_k2
                                 : q.k == 3 ? budget.max_nodes_k3
                                            : std::numeric_limits<std::size_t>::max();
  const std::size_t subsets = search_space_size(n, q.k, q.allow_fewer);
  if (n > node_limit || subsets > budget.max_subsets) {
    throw InstanceTooLarge("instance too large for exact search: n = " + std::to_string(n) +
                           ", k = " + std::to_string(q.k) + ", " + std::to_string(subsets) +
                           " removal sets (limits: n <= " + std::to_string(node_limit) +
                           ", sets <= " + std::to_string(budget.max_subsets) + ")");
  }
}

}  // namespace

bool objective_tied(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

double evaluate_objective(const Graph& g, const Objective& objective) {
  if (objective.metric == MetricId::kProposed && !objective.weights) {
    throw InvalidArgument("proposed objective needs a weight vector");
  }
  return evaluate(ccsd(g), objective);
}

std::size_t search_space_size(std::size_t n, std::size_t k, bool allow_fewer) {
  std::size_t total = 0;
  for (std::size_t s = allow_fewer ? 1 : k; s <= k; ++s) {
    const std::size_t c = binomial(n, s);
    if (c > std::numeric_limits<std::size_t>::max() - total) {
      return std::numeric_limits<std::size_t>::max();
    }
    total += c;
  }
  return total;
}

DismantleResult best_removal(const DismantleQuery& q, const SearchBudget& budget) {
  check_query(q, budget);
  const Graph& g = q.graph;
  const std::size_t n = g.node_count();

  // Enumeration order is the tie-break order: size ascending, then lexicographic.
  std::vector<NodeId> flat;
  std::vector<std::size_t> set_size;
  std::vector<std::size_t> offset;
  for (std::size_t s = q.allow_fewer ? 1 : q.k; s <= q.k; ++s) {
    const std::size_t before = flat.size();
    append_combinations(n, s, flat);
    for (std::size_t pos = before; pos < flat.size(); pos += s) {
      offset.push_back(pos);
      set_size.push_back(s);
    }
  }
  const std::size_t total = offset.size();
  std::vector<double> values(total);

  auto evaluate_range = [&](std::size_t begin, std::size_t end) {
    std::vector<bool> removed(n, false);
    std::vector<NodeId> stack;
    std::vector<char> seen(n, 0);
    for (std::size_t idx = begin; idx < end; ++idx) {
      const auto first = flat.begin() + static_cast<std::ptrdiff_t>(offset[idx]);
      const auto last = first + static_cast<std::ptrdiff_t>(set_size[idx]);
      for (auto it = first; it != last; ++it) removed[*it] = true;
      values[idx] = evaluate(residual_ccsd(g, removed, set_size[idx], stack, seen), q.objective);
      for (auto it = first; it != last; ++it) removed[*it] = false;
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(budget.threads, 1, std::max<std::size_t>(total, 1));
  if (workers == 1) {
    evaluate_range(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(total, w * chunk);
      const std::size_t end = std::min(total, begin + chunk);
      pool.emplace_back(evaluate_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  const double best = *std::min_element(values.begin(), values.end());
  DismantleResult result;
  result.objective = q.objective.metric;
  std::size_t chosen = total;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (!objective_tied(values[idx], best)) continue;
    ++result.ties;
    if (chosen == total) chosen = idx;
  }
  const auto first = flat.begin() + static_cast<std::ptrdiff_t>(offset[chosen]);
  result.removed.assign(first, first + static_cast<std::ptrdiff_t>(set_size[chosen]));
  result.residual_value = values[chosen];
  return result;
}

DismantleResult best_removal_baseline(const DismantleQuery& q, const SearchBudget& budget) {
  if (q.objective.metric == MetricId::kProposed) {
    throw InvalidArgument("baseline search expects cole1, cole2 or gfp");
  }
  return best_removal(q, budget);
}

std::string result_to_json(const DismantleResult& r, const Graph& g, std::size_t k) {
  nlohmann::json removed = nlohmann::json::array();
  for (NodeId v : r.removed) removed.push_back(g.label(v));
  nlohmann::json out = {
      {"removed", removed},
      {"residual_value", r.residual_value},
      {"objective", to_string(r.objective)},
      {"k", k},
      {"ties", r.ties},
  };
  return out.dump();
}

}  // namespace netstrength
