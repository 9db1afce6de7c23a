#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "netstrength/graph.hpp"

namespace netstrength {

/// How a weight vector answers for component sizes beyond its length.
enum class ExtensionPolicy {
  kError,        ///< throw WeightRangeError
  kClampToLast,  ///< reuse w_N for every size > N
};

/// Perception weights w_1..w_N, indexed by component size.
class WeightVector {
 public:
  WeightVector() = default;
  /// `weights[0]` is w_1. Throws InvalidArgument when empty or non-finite.
  explicit WeightVector(std::vector<double> weights,
                        ExtensionPolicy policy = ExtensionPolicy::kError);

  std::size_t size() const noexcept { return weights_.size(); }
  ExtensionPolicy policy() const noexcept { return policy_; }
  const std::vector<double>& values() const noexcept { return weights_; }

  /// Weight for a component of `component_size` nodes (1-based).
  double at(std::size_t component_size) const;
  bool covers(std::size_t component_size) const noexcept;

  WeightVector with_policy(ExtensionPolicy policy) const {
    WeightVector copy = *this;
    copy.policy_ = policy;
    return copy;
  }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> weights_;
  ExtensionPolicy policy_ = ExtensionPolicy::kError;
};

/// The 30 weights fitted from the human-subject survey.
WeightVector default_weights(ExtensionPolicy policy = ExtensionPolicy::kError);

/// Writes `size,weight` rows, one per component size, using the shortest
/// decimal representation that round-trips each double.
void write_weights_csv(std::ostream& out, const WeightVector& w);
void save_weights_csv(const std::filesystem::path& path, const WeightVector& w);
WeightVector read_weights_csv(std::istream& in, std::string_view source = "<stream>",
                              ExtensionPolicy policy = ExtensionPolicy::kError);
WeightVector load_weights_csv(const std::filesystem::path& path,
                              ExtensionPolicy policy = ExtensionPolicy::kError);

enum class MetricId { kProposed, kCole1, kCole2, kGfp };

std::string_view to_string(MetricId id);
/// Accepts "proposed", "cole1", "cole2", "gfp"; throws InvalidArgument otherwise.
MetricId parse_metric_id(std::string_view text);

struct StrengthValue {
  MetricId metric = MetricId::kProposed;
  double raw = 0.0;
  double normalized = 0.0;  // raw / n
};

// All metrics throw EmptyGraphError for n = 0.

/// sigma(G, W) = sum over component sizes i of i * w_i * nc_i.
StrengthValue sigma(const Graph& g, const WeightVector& w);
StrengthValue sigma(const Ccsd& distribution, const WeightVector& w);

/// n / c(G), where c(G) is the number of connected components.
StrengthValue cole1(const Graph& g);
/// Size of the largest connected component.
StrengthValue cole2(const Graph& g);
/// Expected number of nodes reached by a failure starting at a uniformly
/// random node: sum of n_i^2 / n over component sizes n_i.
StrengthValue gfp_score(const Graph& g);

// Variants over a precomputed distribution; dismantling uses these to avoid
// rebuilding residual graphs.
StrengthValue cole1(const Ccsd& distribution);
StrengthValue cole2(const Ccsd& distribution);
StrengthValue gfp_score(const Ccsd& distribution);

double normalize(const StrengthValue& v, std::size_t n);

}  // namespace netstrength
