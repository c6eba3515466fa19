#include "mosaic/backend.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include <unistd.h>

#include "Highs.h"
#include "mosaic/error.hpp"

namespace mosaic {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "time_limit";
    case SolveStatus::Error: return "error";
  }
  return "error";
}

namespace {

void configure(Highs& highs, const BackendConfig& config) {
  highs.setOptionValue("output_flag", config.verbose);
  highs.setOptionValue("threads", 1);
  highs.setOptionValue("random_seed", static_cast<HighsInt>(config.seed % 2147483647));
  highs.setOptionValue("mip_rel_gap", config.relative_gap);
  // An absolute gap of 1e-6 would let exact runs stop at a suboptimal point
  // when objectives are tiny.
  highs.setOptionValue("mip_abs_gap", config.relative_gap == 0.0 ? 1e-9 : 1e-6);
  if (std::isfinite(config.time_limit)) highs.setOptionValue("time_limit", config.time_limit);
}

HighsLp to_highs_lp(const MilpModel& model) {
  HighsLp lp;
  const auto n = static_cast<HighsInt>(model.variables().size());
  const auto m = static_cast<HighsInt>(model.constraints().size());
  lp.num_col_ = n;
  lp.num_row_ = m;
  lp.sense_ = model.objective().sense == Sense::Minimize ? ObjSense::kMinimize
                                                          : ObjSense::kMaximize;
  lp.col_cost_.assign(n, 0.0);
  for (const auto& t : model.objective().terms) lp.col_cost_[t.var] += t.coef;
  lp.integrality_.reserve(n);
  for (const auto& v : model.variables()) {
    lp.col_lower_.push_back(v.lower);
    lp.col_upper_.push_back(v.upper);
    lp.integrality_.push_back(v.kind == VarKind::Continuous ? HighsVarType::kContinuous
                                                            : HighsVarType::kInteger);
  }
  for (const auto& c : model.constraints()) {
    const double inf = kHighsInf;
    switch (c.cmp) {
      case Comparator::LessEqual:
        lp.row_lower_.push_back(-inf);
        lp.row_upper_.push_back(c.rhs);
        break;
      case Comparator::Equal:
        lp.row_lower_.push_back(c.rhs);
        lp.row_upper_.push_back(c.rhs);
        break;
      case Comparator::GreaterEqual:
        lp.row_lower_.push_back(c.rhs);
        lp.row_upper_.push_back(inf);
        break;
    }
  }
  auto& a = lp.a_matrix_;
  a.format_ = MatrixFormat::kRowwise;
  a.num_col_ = n;
  a.num_row_ = m;
  a.start_.assign(1, 0);
  a.start_.reserve(m + 1);
  for (const auto& c : model.constraints()) {
    for (const auto& t : c.terms) {
      a.index_.push_back(static_cast<HighsInt>(t.var));
      a.value_.push_back(t.coef);
    }
    a.start_.push_back(static_cast<HighsInt>(a.index_.size()));
  }
  return lp;
}

BackendResult collect(Highs& highs, std::size_t n_vars,
                      const std::vector<HighsInt>& column_of_var) {
  BackendResult result;
  const auto status = highs.getModelStatus();
  const auto& info = highs.getInfo();
  result.has_solution = info.primal_solution_status == kSolutionStatusFeasible;
  switch (status) {
    case HighsModelStatus::kOptimal:
      result.status = SolveStatus::Optimal;
      break;
    case HighsModelStatus::kInfeasible:
      result.status = SolveStatus::Infeasible;
      result.has_solution = false;
      break;
    case HighsModelStatus::kTimeLimit:
    case HighsModelStatus::kIterationLimit:
    case HighsModelStatus::kSolutionLimit:
    case HighsModelStatus::kInterrupt:
      result.status = SolveStatus::TimeLimit;
      break;
    default:
      result.status = SolveStatus::Error;
      result.message = highs.modelStatusToString(status);
      break;
  }
  if (result.has_solution) {
    const auto& col_value = highs.getSolution().col_value;
    result.values.resize(n_vars);
    for (std::size_t i = 0; i < n_vars; ++i) {
      result.values[i] = col_value.at(static_cast<std::size_t>(column_of_var[i]));
    }
    result.objective = info.objective_function_value;
    result.bound = info.mip_dual_bound;
    result.gap = std::isfinite(info.mip_gap) ? info.mip_gap : 1.0;
    if (result.gap < 0) result.gap = 0;
  }
  return result;
}

std::vector<HighsInt> identity_columns(std::size_t n) {
  std::vector<HighsInt> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = static_cast<HighsInt>(i);
  return cols;
}

void pass_start(Highs& highs, const std::vector<double>& hint,
                const std::vector<HighsInt>& column_of_var) {
  if (hint.empty()) return;
  if (hint.size() != column_of_var.size()) {
    throw Error(ErrorCode::InvalidArgument, "start vector does not match the model");
  }
  HighsSolution solution;
  solution.col_value.assign(column_of_var.size(), 0.0);
  for (std::size_t i = 0; i < hint.size(); ++i) {
    solution.col_value[static_cast<std::size_t>(column_of_var[i])] = hint[i];
  }
  solution.value_valid = true;
  if (highs.setSolution(solution) == HighsStatus::kError) {
    throw Error(ErrorCode::SolverFailure, "HiGHS rejected the start vector");
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

class HighsBackend final : public SolverBackend {
 public:
  using SolverBackend::SolverBackend;

  std::string name() const override { return "highs"; }

  using SolverBackend::solve;

  BackendResult solve(const MilpModel& model, const std::vector<double>& hint) override {
    const auto start = std::chrono::steady_clock::now();
    Highs highs;
    configure(highs, config());
    if (highs.passModel(to_highs_lp(model)) == HighsStatus::kError) {
      throw Error(ErrorCode::SolverFailure, "HiGHS rejected the model");
    }
    pass_start(highs, hint, identity_columns(model.variables().size()));
    if (highs.run() == HighsStatus::kError) {
      BackendResult failed;
      failed.message = "HiGHS run failed";
      failed.wall_time = seconds_since(start);
      return failed;
    }
    auto result = collect(highs, model.variables().size(),
                          identity_columns(model.variables().size()));
    result.wall_time = seconds_since(start);
    return result;
  }
};

class HighsLpFileBackend final : public SolverBackend {
 public:
  using SolverBackend::SolverBackend;

  std::string name() const override { return "highs-lp"; }

  using SolverBackend::solve;

  BackendResult solve(const MilpModel& model, const std::vector<double>& hint) override {
    static std::atomic<int> counter{0};
    const auto start = std::chrono::steady_clock::now();
    const auto path = std::filesystem::temp_directory_path() /
                      ("mosaic-" + std::to_string(::getpid()) + "-" +
                       std::to_string(counter++) + ".lp");
    {
      std::ofstream out(path);
      if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
      out << to_lp_format(model);
    }
    Highs highs;
    configure(highs, config());
    const auto read_status = highs.readModel(path.string());
    std::filesystem::remove(path);
    if (read_status == HighsStatus::kError) {
      throw Error(ErrorCode::SolverFailure, "HiGHS could not read the LP file");
    }

    // Columns in the file are ordered by first appearance; map back by name.
    const auto& names = highs.getLp().col_names_;
    std::map<std::string, HighsInt, std::less<>> column_of_name;
    for (std::size_t c = 0; c < names.size(); ++c) {
      column_of_name.emplace(names[c], static_cast<HighsInt>(c));
    }
    std::vector<HighsInt> column_of_var;
    for (const auto& v : model.variables()) {
      auto it = column_of_name.find(v.name);
      if (it == column_of_name.end()) {
        throw Error(ErrorCode::SolverFailure, "variable '" + v.name + "' missing from LP file");
      }
      column_of_var.push_back(it->second);
    }
    pass_start(highs, hint, column_of_var);

    if (highs.run() == HighsStatus::kError) {
      BackendResult failed;
      failed.message = "HiGHS run failed";
      failed.wall_time = seconds_since(start);
      return failed;
    }
    auto result = collect(highs, model.variables().size(), column_of_var);
    result.wall_time = seconds_since(start);
    return result;
  }
};

}  // namespace

std::unique_ptr<SolverBackend> make_backend(std::string_view name, BackendConfig config) {
  if (name.empty() || name == "highs") return std::make_unique<HighsBackend>(config);
  if (name == "highs-lp") return std::make_unique<HighsLpFileBackend>(config);
  throw Error(ErrorCode::InvalidArgument, "unknown solver backend '" + std::string(name) + "'");
}

std::unique_ptr<SolverBackend> backend_from_env(BackendConfig config) {
  const char* env = std::getenv("MOSAIC_SOLVER");
  return make_backend(env ? std::string_view(env) : std::string_view("highs"), config);
}

std::vector<std::string> available_backends() { return {"highs", "highs-lp"}; }

}  // namespace mosaic
