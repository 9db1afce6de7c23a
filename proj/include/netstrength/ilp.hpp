#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netstrength/dismantle.hpp"
#include "netstrength/graph.hpp"
#include "netstrength/metrics.hpp"

namespace netstrength {

// Integer program for the k most authoritative nodes.
//
// Variables, with i a node id (0-based), j a component slot in 1..n and t a
// component size in 0..n:
//   x_i_j  binary   node i sits in slot j
//   y_i    binary   node i is removed
//   m_j_t  binary   slot j has size t
//   C_j    integer  size of slot j
//   S_t    integer  number of slots of size t
// Objective: minimize sum_t t * W_t * S_t - W_1 * sum_i y_i.

enum class VarKind { kBinary, kInteger };
enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct IlpVariable {
  std::string name;
  VarKind kind = VarKind::kBinary;
  double lower = 0.0;
  double upper = 1.0;
};

struct IlpTerm {
  std::size_t var = 0;
  double coeff = 0.0;
};

struct IlpConstraint {
  std::string name;
  /// edge_le, edge_ge, assign, slot_size, budget, size_pick, size_value or size_count.
  std::string family;
  std::vector<IlpTerm> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

struct IlpModel {
  std::size_t nodes = 0;
  std::size_t budget = 0;
  std::vector<IlpVariable> variables;
  std::vector<IlpTerm> objective;
  std::vector<IlpConstraint> constraints;

  /// Index of a variable by name; throws InvalidArgument when absent.
  std::size_t index_of(const std::string& name) const;
  std::size_t count_prefix(const std::string& prefix) const;

 private:
  friend IlpModel build_ilp_model(const Graph&, std::size_t, const WeightVector&);
  std::map<std::string, std::size_t> by_name_;
};

/// Throws InvalidArgument unless 1 <= k < n, and WeightRangeError when the
/// weights do not cover sizes up to n.
IlpModel build_ilp_model(const Graph& g, std::size_t k, const WeightVector& w);

/// CPLEX LP-format rendering: Minimize, Subject To, Bounds, Generals,
/// Binaries, End. Output is deterministic.
void write_lp(std::ostream& out, const IlpModel& model);
std::string emit_ilp(const Graph& g, std::size_t k, const WeightVector& w);

/// Variable assignment keyed by model variable name.
using IlpAssignment = std::map<std::string, double>;

struct IlpCheck {
  double objective = 0.0;
  /// Removal set encoded by the y variables.
  std::vector<NodeId> removed;
  /// Enumerated optimum under the proposed metric, when the instance fits the
  /// exact search budget.
  std::optional<DismantleResult> optimum;
  bool matches_optimum = false;
};

/// Evaluates `assignment` against every constraint of the model and returns
/// its objective. Missing variables, non-integral values and violated rows
/// raise ConstraintViolation naming the offending family ("coverage",
/// "binary", "integer" or a constraint family).
IlpCheck verify_ilp_solution(const Graph& g, std::size_t k, const WeightVector& w,
                             const IlpAssignment& assignment, const SearchBudget& budget = {});

/// Feasible assignment that places each removed node in a singleton slot and
/// each residual component in its own slot. Its objective equals sigma on
/// remove_nodes(g, removed).
IlpAssignment assignment_for_removal(const Graph& g, std::span<const NodeId> removed);

/// Reads `name value` pairs (whitespace separated, '#' comments).
IlpAssignment read_assignment(std::istream& in);

}  // namespace netstrength
