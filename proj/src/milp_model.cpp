#include "mosaic/milp_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "mosaic/error.hpp"

namespace mosaic {

std::size_t MilpModel::add_variable(std::string name, VarKind kind, double lower, double upper) {
  if (lower > upper) {
    throw Error(ErrorCode::InvalidArgument, "variable '" + name + "' has lower > upper");
  }
  if (kind == VarKind::Binary) {
    lower = std::max(lower, 0.0);
    upper = std::min(upper, 1.0);
  }
  const auto index = variables_.size();
  if (!var_index_.emplace(name, index).second) {
    throw Error(ErrorCode::DuplicateId, "variable '" + name + "' declared twice");
  }
  variables_.push_back(Variable{std::move(name), kind, lower, upper});
  return index;
}

namespace {

std::vector<Term> normalize(std::vector<Term> terms, std::size_t n_vars) {
  for (const auto& t : terms) {
    if (t.var >= n_vars) {
      throw Error(ErrorCode::InvalidArgument, "term references undeclared variable");
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back().var == t.var) {
      out.back().coef += t.coef;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coef == 0.0; });
  return out;
}

}  // namespace

std::size_t MilpModel::add_constraint(std::string name, std::vector<Term> terms, Comparator cmp,
                                      double rhs) {
  const auto index = constraints_.size();
  if (!constraint_index_.emplace(name, index).second) {
    throw Error(ErrorCode::DuplicateId, "constraint '" + name + "' declared twice");
  }
  constraints_.push_back(
      Constraint{std::move(name), normalize(std::move(terms), variables_.size()), cmp, rhs});
  return index;
}

void MilpModel::set_objective(Sense sense, std::vector<Term> terms) {
  objective_ = Objective{sense, normalize(std::move(terms), variables_.size())};
}

std::optional<std::size_t> MilpModel::find_variable(std::string_view name) const {
  auto it = var_index_.find(name);
  if (it == var_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> MilpModel::find_constraint(std::string_view name) const {
  auto it = constraint_index_.find(name);
  if (it == constraint_index_.end()) return std::nullopt;
  return it->second;
}

double MilpModel::evaluate_objective(const std::vector<double>& values) const {
  double sum = 0.0;
  for (const auto& t : objective_.terms) sum += t.coef * values.at(t.var);
  return sum;
}

namespace {

class LineWriter {
 public:
  explicit LineWriter(std::string& out) : out_(out) {}

  void token(const std::string& text) {
    if (column_ + text.size() + 1 > 200) {
      out_ += "\n   ";
      column_ = 3;
    }
    out_ += ' ';
    out_ += text;
    column_ += text.size() + 1;
  }
  void start(std::string_view prefix) {
    out_ += prefix;
    column_ = prefix.size();
  }
  void end() {
    out_ += '\n';
    column_ = 0;
  }

 private:
  std::string& out_;
  std::size_t column_ = 0;
};

std::string number(double v) { return fmt::format("{:.17g}", v); }

void write_terms(LineWriter& w, const MilpModel& model, const std::vector<Term>& terms) {
  if (terms.empty()) {
    // LP rows need at least one term.
    w.token("0 " + model.variables().front().name);
    return;
  }
  bool first = true;
  for (const auto& t : terms) {
    const auto& name = model.variables()[t.var].name;
    if (first) {
      w.token(number(t.coef) + " " + name);
    } else {
      w.token((t.coef < 0 ? "- " : "+ ") + number(std::abs(t.coef)) + " " + name);
    }
    first = false;
  }
}

std::string bound(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return number(v);
}

}  // namespace

std::string to_lp_format(const MilpModel& model) {
  if (model.variables().empty()) {
    throw Error(ErrorCode::InvalidArgument, "model has no variables");
  }
  std::string out;
  LineWriter w(out);

  out += model.objective().sense == Sense::Minimize ? "Minimize\n" : "Maximize\n";
  w.start(" obj:");
  write_terms(w, model, model.objective().terms);
  w.end();

  out += "Subject To\n";
  for (const auto& c : model.constraints()) {
    w.start(" " + c.name + ":");
    write_terms(w, model, c.terms);
    switch (c.cmp) {
      case Comparator::LessEqual: w.token("<="); break;
      case Comparator::Equal: w.token("="); break;
      case Comparator::GreaterEqual: w.token(">="); break;
    }
    w.token(number(c.rhs));
    w.end();
  }

  out += "Bounds\n";
  for (const auto& v : model.variables()) {
    if (v.kind == VarKind::Binary) continue;
    if (v.lower == v.upper) {
      out += " " + v.name + " = " + number(v.lower) + "\n";
    } else {
      out += " " + bound(v.lower) + " <= " + v.name + " <= " + bound(v.upper) + "\n";
    }
  }

  auto list_section = [&](VarKind kind, std::string_view title) {
    bool any = false;
    for (const auto& v : model.variables()) {
      if (v.kind != kind) continue;
      if (!any) {
        out += title;
        out += '\n';
        w.start("");
        any = true;
      }
      w.token(v.name);
    }
    if (any) w.end();
  };
  list_section(VarKind::Integer, "Generals");
  list_section(VarKind::Binary, "Binaries");
  out += "End\n";
  return out;
}

CostTable::CostTable(std::size_t rows, std::size_t cells)
    : rows_(rows), cells_(cells), w_(rows * cells, 0.0) {}

CostTable CostTable::uniform(std::vector<double> per_cell) {
  CostTable t;
  t.rows_ = 1;
  t.cells_ = per_cell.size();
  t.w_ = std::move(per_cell);
  return t;
}

CostTable global_costs(const HostGrid& grid) {
  const auto mu = grid_centroid(grid);
  std::vector<double> w;
  w.reserve(grid.size());
  for (const auto& cell : grid.cells()) w.push_back(squared_distance(cell.center, mu));
  return CostTable::uniform(std::move(w));
}

CostTable eccentricity_costs(const ContractedSystem& cs, const HostGrid& grid,
                             const CenterMap& centers) {
  const auto& system = cs.system;
  std::vector<Point2> mu;
  for (const auto& set : system.sets()) {
    auto it = centers.find(set.name);
    if (it == centers.end()) {
      throw Error(ErrorCode::MissingCenter, "no center for set '" + set.name + "'");
    }
    mu.push_back(it->second);
  }
  CostTable table(system.element_count(), grid.size());
  for (std::size_t r = 0; r < system.element_count(); ++r) {
    for (std::size_t v = 0; v < grid.size(); ++v) {
      double w = 0.0;
      for (auto s : system.sets_of(r)) w += squared_distance(grid.cell(v).center, mu[s]);
      table.set(r, v, w);
    }
  }
  return table;
}

CenterMap initial_centers(const HostGrid& grid, const std::vector<std::string>& base_set_names,
                          const std::vector<std::string>& overlay_set_names, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  const auto mu = grid_centroid(grid);
  CenterMap centers;
  const double k = static_cast<double>(base_set_names.size());
  for (std::size_t j = 0; j < base_set_names.size(); ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / k;
    centers[base_set_names[j]] = mu + epsilon * Point2{std::cos(angle), std::sin(angle)};
  }
  for (const auto& name : overlay_set_names) centers[name] = mu;
  return centers;
}

ModelOptions full_contiguity(const ContractedSystem& cs) {
  ModelOptions opts;
  for (std::size_t s = 0; s < cs.system.set_count(); ++s) opts.contiguity_sets.push_back(s);
  return opts;
}

ModelOptions base_contiguity(const ContractedSystem& cs) {
  ModelOptions opts;
  opts.contiguity_sets = cs.system.base_set_indices();
  return opts;
}

std::vector<AssignmentUnit> assignment_units(const ContractedSystem& cs) {
  std::vector<bool> is_center(cs.system.element_count(), false);
  for (auto c : cs.center) is_center[c] = true;
  std::vector<AssignmentUnit> units;
  for (std::size_t r = 0; r < cs.system.element_count(); ++r) {
    if (is_center[r] && cs.alpha[r] > 1) {
      units.push_back({r, 1, true});
      units.push_back({r, cs.alpha[r] - 1, false});
    } else {
      units.push_back({r, cs.alpha[r], is_center[r]});
    }
  }
  return units;
}

AssignmentModel build_assignment_model(const ContractedSystem& cs, const HostGrid& grid,
                                       const CostTable& costs, const ModelOptions& opts) {
  const auto& system = cs.system;
  const auto total = static_cast<std::size_t>(cs.total_alpha());
  if (grid.size() < total) {
    throw Error(ErrorCode::GridTooSmall, fmt::format("{} cells for {} elements", grid.size(),
                                                     total));
  }
  if (cs.center.size() != system.set_count()) {
    throw Error(ErrorCode::MissingCenter, "contracted system lacks set centers");
  }
  if (costs.cells() != grid.size() ||
      (!costs.is_uniform() && costs.rows() != system.element_count())) {
    throw Error(ErrorCode::InvalidArgument, "cost table does not match system and grid");
  }

  AssignmentModel am;
  am.units = assignment_units(cs);
  am.contiguity_sets = opts.contiguity_sets;
  std::sort(am.contiguity_sets.begin(), am.contiguity_sets.end());
  am.contiguity_sets.erase(std::unique(am.contiguity_sets.begin(), am.contiguity_sets.end()),
                           am.contiguity_sets.end());
  for (auto s : am.contiguity_sets) {
    if (s >= system.set_count()) {
      throw Error(ErrorCode::UnknownSet, "contiguity set index out of range");
    }
  }
  for (auto b : system.base_set_indices()) {
    if (!std::binary_search(am.contiguity_sets.begin(), am.contiguity_sets.end(), b)) {
      throw Error(ErrorCode::InvalidArgument,
                  "base set '" + system.sets()[b].name + "' must be contiguity-constrained");
    }
  }

  // Units per set, and the center unit of each set.
  std::vector<std::vector<std::size_t>> set_units(system.set_count());
  am.center_unit.assign(system.set_count(), 0);
  for (std::size_t u = 0; u < am.units.size(); ++u) {
    for (auto s : system.sets_of(am.units[u].rep)) {
      set_units[s].push_back(u);
      if (am.units[u].rep == cs.center[s] && am.units[u].center_part) {
        am.center_unit[s] = u;
      }
    }
  }

  auto& model = am.model;
  const auto& cells = grid.cells();

  // (a) assignment variables
  am.x.assign(am.units.size(), {});
  for (std::size_t u = 0; u < am.units.size(); ++u) {
    for (std::size_t v = 0; v < grid.size(); ++v) {
      am.x[u].push_back(model.add_variable(fmt::format("x_{}_{}", u, to_int(cells[v].id)),
                                           VarKind::Binary, 0.0, 1.0));
    }
  }

  // (b) each unit occupies exactly `multiplicity` cells
  for (std::size_t u = 0; u < am.units.size(); ++u) {
    std::vector<Term> terms;
    for (std::size_t v = 0; v < grid.size(); ++v) terms.push_back({am.x[u][v], 1.0});
    model.add_constraint(fmt::format("assign_{}", u), std::move(terms), Comparator::Equal,
                         am.units[u].multiplicity);
  }
  // (c) at most one unit per cell
  for (std::size_t v = 0; v < grid.size(); ++v) {
    std::vector<Term> terms;
    for (std::size_t u = 0; u < am.units.size(); ++u) terms.push_back({am.x[u][v], 1.0});
    model.add_constraint(fmt::format("cell_{}", to_int(cells[v].id)), std::move(terms),
                         Comparator::LessEqual, 1.0);
  }

  for (const auto& [a, b] : grid.edges()) {
    am.arcs.emplace_back(a, b);
    am.arcs.emplace_back(b, a);
  }
  std::vector<std::vector<std::size_t>> out_arcs(grid.size()), in_arcs(grid.size());
  for (std::size_t k = 0; k < am.arcs.size(); ++k) {
    out_arcs[am.arcs[k].first].push_back(k);
    in_arcs[am.arcs[k].second].push_back(k);
  }

  // (d)-(f) single-commodity flow per contiguity set, sinking at the center
  am.y.assign(system.set_count(), {});
  for (auto s : am.contiguity_sets) {
    const double n = cs.set_weight(s);
    for (const auto& [from, to] : am.arcs) {
      am.y[s].push_back(model.add_variable(
          fmt::format("y_{}_{}_{}", s, to_int(cells[from].id), to_int(cells[to].id)),
          VarKind::Integer, 0.0, n - 1.0));
    }
    const auto center = am.center_unit[s];
    for (std::size_t v = 0; v < grid.size(); ++v) {
      std::vector<Term> balance;
      for (auto k : out_arcs[v]) balance.push_back({am.y[s][k], 1.0});
      for (auto k : in_arcs[v]) balance.push_back({am.y[s][k], -1.0});
      for (auto u : set_units[s]) balance.push_back({am.x[u][v], -1.0});
      balance.push_back({am.x[center][v], n});
      model.add_constraint(fmt::format("flow_{}_{}", s, to_int(cells[v].id)),
                           std::move(balance), Comparator::Equal, 0.0);

      std::vector<Term> cap;
      for (auto k : in_arcs[v]) cap.push_back({am.y[s][k], 1.0});
      for (auto u : set_units[s]) cap.push_back({am.x[u][v], -(n - 1.0)});
      model.add_constraint(fmt::format("cap_{}_{}", s, to_int(cells[v].id)),
                           std::move(cap), Comparator::LessEqual, 0.0);
    }
  }

  // (g) each x stands for one original element, so w is not scaled by alpha
  std::vector<Term> objective;
  for (std::size_t u = 0; u < am.units.size(); ++u) {
    for (std::size_t v = 0; v < grid.size(); ++v) {
      objective.push_back({am.x[u][v], costs.at(am.units[u].rep, v)});
    }
  }
  model.set_objective(Sense::Minimize, std::move(objective));

  if (opts.objective == ObjectiveKind::PerimeterBonus) add_perimeter_objective(am, cs, grid);
  return am;
}

void add_perimeter_objective(AssignmentModel& am, const ContractedSystem& cs,
                             const HostGrid& grid) {
  const auto& system = cs.system;
  auto& model = am.model;
  const auto& cells = grid.cells();
  am.z.assign(system.set_count(), {});
  std::vector<Term> objective;
  for (std::size_t s = 0; s < system.set_count(); ++s) {
    std::vector<std::size_t> units;
    for (std::size_t u = 0; u < am.units.size(); ++u) {
      const auto& sets = system.sets_of(am.units[u].rep);
      if (std::binary_search(sets.begin(), sets.end(), s)) units.push_back(u);
    }
    for (const auto& [a, b] : grid.edges()) {
      const auto ida = to_int(cells[a].id);
      const auto idb = to_int(cells[b].id);
      const auto z = model.add_variable(fmt::format("z_{}_{}_{}", s, ida, idb),
                                        VarKind::Binary, 0.0, 1.0);
      am.z[s].push_back(z);
      objective.push_back({z, 1.0});
      for (auto [end, id] : {std::pair{a, ida}, std::pair{b, idb}}) {
        std::vector<Term> terms{{z, 1.0}};
        for (auto u : units) terms.push_back({am.x[u][end], -1.0});
        model.add_constraint(fmt::format("zcap_{}_{}_{}_{}", s, ida, idb, id),
                             std::move(terms), Comparator::LessEqual, 0.0);
      }
    }
  }
  model.set_objective(Sense::Maximize, std::move(objective));
}

std::string to_lp_format(const AssignmentModel& am, const ContractedSystem& cs) {
  std::string out = "\\ units: x_<unit>_<cell>\n";
  for (std::size_t u = 0; u < am.units.size(); ++u) {
    const auto& unit = am.units[u];
    out += fmt::format("\\   unit {} = {} x{}{}\n", u, cs.system.elements()[unit.rep].id,
                       unit.multiplicity, unit.center_part ? " (center)" : "");
  }
  out += "\\ sets: y_<set>_<from>_<to>, z_<set>_<a>_<b>\n";
  for (std::size_t s = 0; s < cs.system.set_count(); ++s) {
    out += fmt::format("\\   set {} = {}\n", s, cs.system.sets()[s].name);
  }
  return out + to_lp_format(am.model);
}

}  // namespace mosaic
