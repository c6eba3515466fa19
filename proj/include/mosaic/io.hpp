#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "mosaic/grid.hpp"
#include "mosaic/metrics.hpp"
#include "mosaic/setsystem.hpp"
#include "mosaic/solver.hpp"

namespace mosaic {

// Everything needed to re-render or re-score a solved instance.
struct EmbeddingFile {
  SetSystem system;
  GridKind grid_kind = GridKind::Hex;
  int rows = 1;
  int cols = 1;
  Variant variant = Variant::MSE;
  Embedding embedding;
  std::optional<SolveReport> report;

  HostGrid grid() const { return HostGrid(grid_kind, rows, cols); }
};

std::string set_system_to_json(const SetSystem& system);

std::string report_to_json(const SolveReport& report);
SolveReport parse_report_json(std::string_view text);

std::string embedding_to_json(const EmbeddingFile& file);

// Parses and validates: every element sits on a distinct grid cell, flows
// join adjacent cells, and every set with flows is contiguous
// (ContiguityViolation names the offending sets).
EmbeddingFile parse_embedding_json(std::string_view text);

std::string metrics_to_json(const PpScores& scores, const std::optional<SolveReport>& report);
std::string metrics_to_csv(const PpScores& scores);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace mosaic
