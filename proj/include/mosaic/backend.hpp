#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mosaic/milp_model.hpp"

namespace mosaic {

enum class SolveStatus { Optimal, Infeasible, TimeLimit, Error };

std::string_view to_string(SolveStatus status);

struct BackendConfig {
  double relative_gap = 0.005;
  double time_limit = std::numeric_limits<double>::infinity();  // seconds per solve
  std::uint64_t seed = 0;
  bool verbose = false;
};

struct BackendResult {
  SolveStatus status = SolveStatus::Error;
  bool has_solution = false;
  // Values indexed like MilpModel::variables(); empty without a solution.
  std::vector<double> values;
  double objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;  // relative, as reported by the backend
  double wall_time = 0.0;
  std::string message;
};

// A MILP backend. One solve at a time per instance.
class SolverBackend {
 public:
  explicit SolverBackend(BackendConfig config) : config_(config) {}
  virtual ~SolverBackend() = default;

  virtual std::string name() const = 0;
  // `start`, when not empty, is a feasible point indexed like
  // MilpModel::variables() that the solver may use as its first incumbent.
  virtual BackendResult solve(const MilpModel& model, const std::vector<double>& start) = 0;
  BackendResult solve(const MilpModel& model) { return solve(model, {}); }

  const BackendConfig& config() const { return config_; }
  void set_config(const BackendConfig& config) { config_ = config; }

 private:
  BackendConfig config_;
};

// "highs": in-memory model handed to HiGHS.
// "highs-lp": model serialized to LP text, read back by HiGHS, and solution
// values matched to variables by name.
std::unique_ptr<SolverBackend> make_backend(std::string_view name, BackendConfig config);

// Adapter named by the MOSAIC_SOLVER environment variable (default "highs").
std::unique_ptr<SolverBackend> backend_from_env(BackendConfig config);

std::vector<std::string> available_backends();

}  // namespace mosaic
