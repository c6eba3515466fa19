#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mosaic/grid.hpp"
#include "mosaic/setsystem.hpp"

namespace mosaic {

enum class VarKind { Binary, Integer, Continuous };
enum class Comparator { LessEqual, Equal, GreaterEqual };
enum class Sense { Minimize, Maximize };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = 0.0;
};

struct Term {
  std::size_t var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Comparator cmp = Comparator::LessEqual;
  double rhs = 0.0;
};

struct Objective {
  Sense sense = Sense::Minimize;
  std::vector<Term> terms;
};

// Solver-agnostic mixed-integer linear program.
class MilpModel {
 public:
  std::size_t add_variable(std::string name, VarKind kind, double lower, double upper);
  // Duplicate variables within `terms` are merged; zero coefficients dropped.
  std::size_t add_constraint(std::string name, std::vector<Term> terms, Comparator cmp,
                             double rhs);
  void set_objective(Sense sense, std::vector<Term> terms);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Objective& objective() const { return objective_; }

  std::optional<std::size_t> find_variable(std::string_view name) const;
  std::optional<std::size_t> find_constraint(std::string_view name) const;

  double evaluate_objective(const std::vector<double>& values) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Objective objective_;
  std::map<std::string, std::size_t, std::less<>> var_index_;
  std::map<std::string, std::size_t, std::less<>> constraint_index_;
};

// CPLEX LP text: Minimize/Maximize, Subject To, Bounds, Generals, Binaries.
std::string to_lp_format(const MilpModel& model);

// Assignment costs w(representative, cell), indexed by the grid's cell
// index. A table with a single row applies that row to every representative.
class CostTable {
 public:
  CostTable() = default;
  CostTable(std::size_t rows, std::size_t cells);

  static CostTable uniform(std::vector<double> per_cell);

  double at(std::size_t rep, std::size_t cell) const {
    return w_[(rows_ == 1 ? 0 : rep) * cells_ + cell];
  }
  void set(std::size_t rep, std::size_t cell, double value) { w_[rep * cells_ + cell] = value; }
  std::size_t rows() const { return rows_; }
  std::size_t cells() const { return cells_; }
  bool is_uniform() const { return rows_ == 1; }

 private:
  std::size_t rows_ = 0;
  std::size_t cells_ = 0;
  std::vector<double> w_;
};

using CenterMap = std::map<std::string, Point2>;

// Squared distance of each cell to the grid centroid, for every element.
CostTable global_costs(const HostGrid& grid);

// w(s, v) = sum over sets containing s of |v.p - mu_set|^2.
CostTable eccentricity_costs(const ContractedSystem& cs, const HostGrid& grid,
                             const CenterMap& centers);

// First-iteration centers: base set j of k sits at
// mu + epsilon * (cos(2 pi j / k), sin(2 pi j / k)); overlays sit at mu.
CenterMap initial_centers(const HostGrid& grid, const std::vector<std::string>& base_set_names,
                          const std::vector<std::string>& overlay_set_names, double epsilon);

enum class ObjectiveKind { AssignmentCost, PerimeterBonus };

struct ModelOptions {
  std::vector<std::size_t> contiguity_sets;  // set indices; must include all base sets
  ObjectiveKind objective = ObjectiveKind::AssignmentCost;
};

// Contiguity for all sets, assignment-cost objective.
ModelOptions full_contiguity(const ContractedSystem& cs);
// Contiguity for base sets only.
ModelOptions base_contiguity(const ContractedSystem& cs);

// One block of x variables. A representative that is the designated center
// of some set and stands for alpha > 1 elements is split into a center unit
// of multiplicity 1 and a remainder unit, so every flow sink is one cell.
struct AssignmentUnit {
  std::size_t rep = 0;
  int multiplicity = 1;
  bool center_part = false;
};

struct AssignmentModel {
  MilpModel model;
  std::vector<AssignmentUnit> units;
  std::vector<std::size_t> center_unit;        // per set index
  std::vector<std::size_t> contiguity_sets;    // sorted set indices
  std::vector<std::vector<std::size_t>> x;     // [unit][cell index] -> variable
  // [set index][directed edge] -> variable; empty for sets without flows.
  std::vector<std::vector<std::size_t>> y;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;  // directed edges, cell indices
  std::vector<std::vector<std::size_t>> z;     // [set index][undirected edge]
};

std::vector<AssignmentUnit> assignment_units(const ContractedSystem& cs);

// Variable names: x_<unit>_<cell>, y_<set>_<from>_<to>, z_<set>_<a>_<b>,
// where units and sets are indices and cells are cell ids.
AssignmentModel build_assignment_model(const ContractedSystem& cs, const HostGrid& grid,
                                       const CostTable& costs, const ModelOptions& opts);

// Adds z variables for every set and grid edge and replaces the objective by
// the maximization of their sum.
void add_perimeter_objective(AssignmentModel& am, const ContractedSystem& cs,
                             const HostGrid& grid);

// Unit table and set index legend as LP comments, followed by the model.
std::string to_lp_format(const AssignmentModel& am, const ContractedSystem& cs);

}  // namespace mosaic
