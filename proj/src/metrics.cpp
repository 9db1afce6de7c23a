#include "netstrength/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "netstrength/error.hpp"
#include "text.hpp"

namespace netstrength {

WeightVector::WeightVector(std::vector<double> weights, ExtensionPolicy policy)
    : weights_(std::move(weights)), policy_(policy) {
  if (weights_.empty()) throw InvalidArgument("weight vector must have at least one entry");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i])) {
      throw InvalidArgument("weight w_" + std::to_string(i + 1) + " is not finite");
    }
  }
}

bool WeightVector::covers(std::size_t component_size) const noexcept {
  if (component_size == 0 || weights_.empty()) return false;
  return component_size <= weights_.size() || policy_ == ExtensionPolicy::kClampToLast;
}

double WeightVector::at(std::size_t component_size) const {
  if (component_size == 0) throw InvalidArgument("component sizes start at 1");
  if (component_size <= weights_.size()) return weights_[component_size - 1];
  if (policy_ == ExtensionPolicy::kClampToLast && !weights_.empty()) return weights_.back();
  throw WeightRangeError(component_size, weights_.size());
}

WeightVector default_weights(ExtensionPolicy policy) {
  return WeightVector(
      {
          0.2221, 0.6607, 0.8747, 1.2271, 0.5538, 0.9078, 0.9445, 0.9517, 0.9737, 0.7178,
          0.6668, 0.7028, 0.8193, 0.7625, 0.9872, 0.7648, 1.0714, 0.6910, 0.9432, 0.8923,
          0.9193, 0.9847, 0.8122, 0.9321, 0.9485, 0.9868, 0.8559, 0.8390, 0.9867, 0.9093,
      },
      policy);
}

void write_weights_csv(std::ostream& out, const WeightVector& w) {
  out << "size,weight\n";
  for (std::size_t i = 0; i < w.size(); ++i) {
    out << (i + 1) << ',' << detail::format_double(w.values()[i]) << '\n';
  }
}

void save_weights_csv(const std::filesystem::path& path, const WeightVector& w) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_weights_csv(out, w);
  if (!out) throw Error("failed writing " + path.string());
}

WeightVector read_weights_csv(std::istream& in, std::string_view source, ExtensionPolicy policy) {
  const std::string src(source);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<double> weights;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = detail::split(text, ',');
    if (!header_seen) {
      header_seen = true;
      if (fields.size() == 2 && fields[0] == "size" && fields[1] == "weight") continue;
      throw ParseError(src, line_no, "expected header 'size,weight'");
    }
    if (fields.size() != 2) throw ParseError(src, line_no, "expected two fields");
    const auto size = detail::parse_int<std::size_t>(fields[0]);
    const auto weight = detail::parse_double(fields[1]);
    if (!size || !weight) throw ParseError(src, line_no, "unparsable size or weight");
    if (*size != weights.size() + 1) {
      throw ParseError(src, line_no,
                       "sizes must run 1..N in order; expected " +
                           std::to_string(weights.size() + 1));
    }
    if (!std::isfinite(*weight)) throw ParseError(src, line_no, "weight is not finite");
    weights.push_back(*weight);
  }
  if (weights.empty()) throw ParseError(src, line_no, "no weights found");
  return WeightVector(std::move(weights), policy);
}

WeightVector load_weights_csv(const std::filesystem::path& path, ExtensionPolicy policy) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open weight file " + path.string());
  return read_weights_csv(in, path.string(), policy);
}

std::string_view to_string(MetricId id) {
  switch (id) {
    case MetricId::kProposed: return "proposed";
    case MetricId::kCole1: return "cole1";
    case MetricId::kCole2: return "cole2";
    case MetricId::kGfp: return "gfp";
  }
  return "unknown";
}

MetricId parse_metric_id(std::string_view text) {
  if (text == "proposed") return MetricId::kProposed;
  if (text == "cole1") return MetricId::kCole1;
  if (text == "cole2") return MetricId::kCole2;
  if (text == "gfp") return MetricId::kGfp;
  throw InvalidArgument("unknown metric '" + std::string(text) +
                        "' (expected proposed, cole1, cole2 or gfp)");
}

namespace {

StrengthValue make_value(MetricId id, double raw, std::size_t n) {
  return StrengthValue{id, raw, raw / static_cast<double>(n)};
}

std::size_t require_nodes(const Ccsd& d) {
  if (d.node_count() == 0) throw EmptyGraphError();
  return d.node_count();
}

}  // namespace

StrengthValue sigma(const Ccsd& distribution, const WeightVector& w) {
  const std::size_t n = require_nodes(distribution);
  double total = 0.0;
  for (std::size_t size = 1; size <= n; ++size) {
    const std::size_t count = distribution.of_size(size);
    if (count == 0) continue;
    total += static_cast<double>(size) * w.at(size) * static_cast<double>(count);
  }
  return make_value(MetricId::kProposed, total, n);
}

StrengthValue cole1(const Ccsd& distribution) {
  const std::size_t n = require_nodes(distribution);
  std::size_t components = 0;
  for (std::size_t c : distribution.counts) components += c;
  return make_value(MetricId::kCole1, static_cast<double>(n) / static_cast<double>(components), n);
}

StrengthValue cole2(const Ccsd& distribution) {
  const std::size_t n = require_nodes(distribution);
  std::size_t largest = n;
  while (distribution.of_size(largest) == 0) --largest;
  return make_value(MetricId::kCole2, static_cast<double>(largest), n);
}

StrengthValue gfp_score(const Ccsd& distribution) {
  const std::size_t n = require_nodes(distribution);
  std::size_t squares = 0;
  for (std::size_t size = 1; size <= n; ++size) squares += size * size * distribution.of_size(size);
  return make_value(MetricId::kGfp, static_cast<double>(squares) / static_cast<double>(n), n);
}

StrengthValue sigma(const Graph& g, const WeightVector& w) { return sigma(ccsd(g), w); }
StrengthValue cole1(const Graph& g) { return cole1(ccsd(g)); }
StrengthValue cole2(const Graph& g) { return cole2(ccsd(g)); }
StrengthValue gfp_score(const Graph& g) { return gfp_score(ccsd(g)); }

double normalize(const StrengthValue& v, std::size_t n) {
  if (n == 0) throw InvalidArgument("cannot normalize by zero nodes");
  return v.raw / static_cast<double>(n);
}

}  // namespace netstrength
