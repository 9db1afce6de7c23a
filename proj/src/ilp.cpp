#include "netstrength/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "netstrength/error.hpp"
#include "text.hpp"

namespace netstrength {

namespace {

std::string x_name(std::size_t i, std::size_t j) {
  return "x_" + std::to_string(i) + "_" + std::to_string(j);
}
std::string y_name(std::size_t i) { return "y_" + std::to_string(i); }
std::string m_name(std::size_t j, std::size_t t) {
  return "m_" + std::to_string(j) + "_" + std::to_string(t);
}
std::string c_name(std::size_t j) { return "C_" + std::to_string(j); }
std::string s_name(std::size_t t) { return "S_" + std::to_string(t); }

class ModelBuilder {
 public:
  explicit ModelBuilder(IlpModel& model) : model_(model) {}

  std::size_t add(std::string name, VarKind kind, double upper,
                  std::map<std::string, std::size_t>& index) {
    const std::size_t id = model_.variables.size();
    index.emplace(name, id);
    model_.variables.push_back(IlpVariable{std::move(name), kind, 0.0, upper});
    return id;
  }

  void row(std::string name, std::string family, std::vector<IlpTerm> terms, Sense sense,
           double rhs) {
    model_.constraints.push_back(
        IlpConstraint{std::move(name), std::move(family), std::move(terms), sense, rhs});
  }

 private:
  IlpModel& model_;
};

// LP-format lines are kept short; continuation lines start with a space.
void write_terms(std::ostream& out, const IlpModel& model, const std::vector<IlpTerm>& terms) {
  std::size_t on_line = 0;
  bool first = true;
  for (const auto& term : terms) {
    if (on_line == 8) {
      out << "\n   ";
      on_line = 0;
    }
    const double magnitude = std::abs(term.coeff);
    if (first) {
      out << (term.coeff < 0 ? " - " : " ");
    } else {
      out << (term.coeff < 0 ? " - " : " + ");
    }
    if (magnitude != 1.0) out << detail::format_double(magnitude) << ' ';
    out << model.variables[term.var].name;
    first = false;
    ++on_line;
  }
  if (first) out << " 0";
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::kLessEqual: return "<=";
    case Sense::kGreaterEqual: return ">=";
    case Sense::kEqual: return "=";
  }
  return "=";
}

double row_activity(const IlpConstraint& c, const std::vector<double>& values) {
  double total = 0.0;
  for (const auto& term : c.terms) total += term.coeff * values[term.var];
  return total;
}

bool row_satisfied(const IlpConstraint& c, double activity) {
  constexpr double kTol = 1e-6;
  switch (c.sense) {
    case Sense::kLessEqual: return activity <= c.rhs + kTol;
    case Sense::kGreaterEqual: return activity >= c.rhs - kTol;
    case Sense::kEqual: return std::abs(activity - c.rhs) <= kTol;
  }
  return false;
}

}  // namespace

std::size_t IlpModel::index_of(const std::string& name) const {
  const auto it = by_name_.find(name);
  if (it == by_name_.end()) throw InvalidArgument("model has no variable '" + name + "'");
  return it->second;
}

std::size_t IlpModel::count_prefix(const std::string& prefix) const {
  return static_cast<std::size_t>(
      std::count_if(variables.begin(), variables.end(),
                    [&](const IlpVariable& v) { return v.name.rfind(prefix, 0) == 0; }));
}

IlpModel build_ilp_model(const Graph& g, std::size_t k, const WeightVector& w) {
  const std::size_t n = g.node_count();
  if (k < 1 || k >= n) {
    throw InvalidArgument("budget k = " + std::to_string(k) + " must satisfy 1 <= k < n = " +
                          std::to_string(n));
  }
  if (!w.covers(n)) throw WeightRangeError(n, w.size());

  IlpModel model;
  model.nodes = n;
  model.budget = k;
  ModelBuilder b(model);
  auto& index = model.by_name_;
  const auto nd = static_cast<double>(n);

  std::vector<std::vector<std::size_t>> x(n, std::vector<std::size_t>(n + 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j <= n; ++j) x[i][j] = b.add(x_name(i, j), VarKind::kBinary, 1, index);
  std::vector<std::size_t> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = b.add(y_name(i), VarKind::kBinary, 1, index);
  std::vector<std::vector<std::size_t>> m(n + 1, std::vector<std::size_t>(n + 1));
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t t = 0; t <= n; ++t) m[j][t] = b.add(m_name(j, t), VarKind::kBinary, 1, index);
  std::vector<std::size_t> c(n + 1);
  for (std::size_t j = 1; j <= n; ++j) c[j] = b.add(c_name(j), VarKind::kInteger, nd, index);
  std::vector<std::size_t> s(n + 1);
  for (std::size_t t = 0; t <= n; ++t) s[t] = b.add(s_name(t), VarKind::kInteger, nd, index);

  // Size-weighted slot counts minus the singleton weight of every removed node.
  for (std::size_t t = 0; t <= n; ++t) {
    model.objective.push_back({s[t], t == 0 ? 0.0 : static_cast<double>(t) * w.at(t)});
  }
  for (std::size_t i = 0; i < n; ++i) model.objective.push_back({y[i], -w.at(1)});

  // Adjacent nodes share a slot unless one of them is removed.
  for (auto [u, v] : g.edges()) {
    for (std::size_t j = 1; j <= n; ++j) {
      const std::string suffix = std::to_string(u) + "_" + std::to_string(v) + "_" + std::to_string(j);
      b.row("edge_le_" + suffix, "edge_le",
            {{x[u][j], 1}, {x[v][j], -1}, {y[u], -1}, {y[v], -1}}, Sense::kLessEqual, 0);
      b.row("edge_ge_" + suffix, "edge_ge",
            {{x[u][j], 1}, {x[v][j], -1}, {y[u], 1}, {y[v], 1}}, Sense::kGreaterEqual, 0);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<IlpTerm> terms;
    for (std::size_t j = 1; j <= n; ++j) terms.push_back({x[i][j], 1});
    b.row("assign_" + std::to_string(i), "assign", std::move(terms), Sense::kEqual, 1);
  }
  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<IlpTerm> terms{{c[j], 1}};
    for (std::size_t i = 0; i < n; ++i) terms.push_back({x[i][j], -1});
    b.row("slot_size_" + std::to_string(j), "slot_size", std::move(terms), Sense::kEqual, 0);
  }
  {
    std::vector<IlpTerm> terms;
    for (std::size_t i = 0; i < n; ++i) terms.push_back({y[i], 1});
    b.row("budget", "budget", std::move(terms), Sense::kLessEqual, static_cast<double>(k));
  }
  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<IlpTerm> terms;
    for (std::size_t t = 0; t <= n; ++t) terms.push_back({m[j][t], 1});
    b.row("size_pick_" + std::to_string(j), "size_pick", std::move(terms), Sense::kEqual, 1);
  }
  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<IlpTerm> terms{{c[j], 1}};
    for (std::size_t t = 1; t <= n; ++t) terms.push_back({m[j][t], -static_cast<double>(t)});
    b.row("size_value_" + std::to_string(j), "size_value", std::move(terms), Sense::kEqual, 0);
  }
  for (std::size_t t = 0; t <= n; ++t) {
    std::vector<IlpTerm> terms{{s[t], 1}};
    for (std::size_t j = 1; j <= n; ++j) terms.push_back({m[j][t], -1});
    b.row("size_count_" + std::to_string(t), "size_count", std::move(terms), Sense::kEqual, 0);
  }
  return model;
}

void write_lp(std::ostream& out, const IlpModel& model) {
  out << "\\ k most authoritative nodes: n = " << model.nodes << ", k = " << model.budget << '\n';
  out << "Minimize\n obj:";
  write_terms(out, model, model.objective);
  out << "\nSubject To\n";
  for (const auto& row : model.constraints) {
    out << ' ' << row.name << ':';
    write_terms(out, model, row.terms);
    out << ' ' << sense_text(row.sense) << ' ' << detail::format_double(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.kind == VarKind::kInteger) {
      out << ' ' << detail::format_double(v.lower) << " <= " << v.name
          << " <= " << detail::format_double(v.upper) << '\n';
    }
  }
  auto section = [&](const char* title, VarKind kind) {
    out << title << '\n';
    std::size_t on_line = 0;
    for (const auto& v : model.variables) {
      if (v.kind != kind) continue;
      out << ' ' << v.name;
      if (++on_line == 10) {
        out << '\n';
        on_line = 0;
      }
    }
    if (on_line != 0) out << '\n';
  };
  section("Generals", VarKind::kInteger);
  section("Binaries", VarKind::kBinary);
  out << "End\n";
}

std::string emit_ilp(const Graph& g, std::size_t k, const WeightVector& w) {
  std::ostringstream out;
  write_lp(out, build_ilp_model(g, k, w));
  return out.str();
}

IlpCheck verify_ilp_solution(const Graph& g, std::size_t k, const WeightVector& w,
                             const IlpAssignment& assignment, const SearchBudget& budget) {
  const IlpModel model = build_ilp_model(g, k, w);

  std::vector<double> values(model.variables.size());
  for (std::size_t idx = 0; idx < model.variables.size(); ++idx) {
    const auto& var = model.variables[idx];
    const auto it = assignment.find(var.name);
    if (it == assignment.end()) {
      throw ConstraintViolation("coverage", "no value for variable " + var.name);
    }
    const double value = it->second;
    if (!std::isfinite(value) || std::abs(value - std::round(value)) > 1e-9) {
      throw ConstraintViolation(var.kind == VarKind::kBinary ? "binary" : "integer",
                                var.name + " = " + detail::format_double(value) +
                                    " is not integral");
    }
    if (value < var.lower - 1e-9 || value > var.upper + 1e-9) {
      throw ConstraintViolation(var.kind == VarKind::kBinary ? "binary" : "integer",
                                var.name + " = " + detail::format_double(value) +
                                    " is outside its bounds");
    }
    values[idx] = std::round(value);
  }

  for (const auto& row : model.constraints) {
    const double activity = row_activity(row, values);
    if (!row_satisfied(row, activity)) {
      throw ConstraintViolation(row.family, "row " + row.name + " has activity " +
                                                detail::format_double(activity) + ", needs " +
                                                sense_text(row.sense) + " " +
                                                detail::format_double(row.rhs));
    }
  }

  IlpCheck check;
  for (const auto& term : model.objective) check.objective += term.coeff * values[term.var];
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (values[model.index_of(y_name(i))] == 1.0) check.removed.push_back(static_cast<NodeId>(i));
  }
  try {
    check.optimum = best_removal(DismantleQuery{g, k, Objective::proposed(w), true}, budget);
    check.matches_optimum = objective_tied(check.objective, check.optimum->residual_value);
  } catch (const InstanceTooLarge&) {
    check.optimum.reset();
  }
  return check;
}

IlpAssignment assignment_for_removal(const Graph& g, std::span<const NodeId> removed) {
  const std::size_t n = g.node_count();
  std::vector<bool> gone(n, false);
  for (NodeId v : removed) {
    if (v >= n) throw InvalidArgument("cannot remove unknown node id " + std::to_string(v));
    gone[v] = true;
  }

  // Residual components keep their own slots; removed nodes become singletons.
  std::vector<NodeId> survivors;
  for (NodeId v = 0; v < n; ++v)
    if (!gone[v]) survivors.push_back(v);
  const Graph residual = remove_nodes(g, removed);
  const auto parts = components(residual);

  std::vector<std::size_t> slot(n, 0);
  for (std::size_t r = 0; r < survivors.size(); ++r) slot[survivors[r]] = parts.assignment[r] + 1;
  std::size_t next = parts.count() + 1;
  for (NodeId v = 0; v < n; ++v)
    if (gone[v]) slot[v] = next++;

  std::vector<std::size_t> slot_size(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) ++slot_size[slot[v]];

  IlpAssignment a;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) a[x_name(i, j)] = slot[i] == j ? 1.0 : 0.0;
    a[y_name(i)] = gone[i] ? 1.0 : 0.0;
  }
  std::vector<std::size_t> size_count(n + 1, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    a[c_name(j)] = static_cast<double>(slot_size[j]);
    for (std::size_t t = 0; t <= n; ++t) a[m_name(j, t)] = slot_size[j] == t ? 1.0 : 0.0;
    ++size_count[slot_size[j]];
  }
  for (std::size_t t = 0; t <= n; ++t) a[s_name(t)] = static_cast<double>(size_count[t]);
  return a;
}

IlpAssignment read_assignment(std::istream& in) {
  IlpAssignment a;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto tokens = detail::split_whitespace(text);
    if (tokens.size() != 2) throw ParseError("<assignment>", line_no, "expected 'name value'");
    const auto value = detail::parse_double(tokens[1]);
    if (!value) throw ParseError("<assignment>", line_no, "unparsable value");
    a[std::string(tokens[0])] = *value;
  }
  return a;
}

}  // namespace netstrength
