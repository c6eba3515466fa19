#include "mosaic/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "csv.hpp"
#include "json.hpp"
#include "mosaic/error.hpp"

namespace mosaic {

using json = nlohmann::ordered_json;

namespace {

json system_json(const SetSystem& system) {
  json doc;
  doc["elements"] = json::array();
  for (std::size_t i = 0; i < system.element_count(); ++i) {
    const auto& e = system.elements()[i];
    doc["elements"].push_back(
        {{"id", e.id}, {"label", e.label}, {"base", system.sets()[system.base_set_of(i)].name}});
  }
  doc["overlays"] = json::object();
  for (const auto& set : system.sets()) {
    if (set.kind == SetKind::Overlay) doc["overlays"][set.name] = set.members;
  }
  return doc;
}

json report_json(const SolveReport& report) {
  json doc;
  doc["variant"] = std::string(to_string(report.variant));
  doc["backend"] = report.backend;
  doc["seed"] = report.seed;
  doc["iterations"] = json::array();
  for (const auto& it : report.iterations) {
    json centers = json::object();
    for (const auto& [name, p] : it.centers) centers[name] = {p.x, p.y};
    doc["iterations"].push_back({{"objective", it.objective},
                                 {"gap", it.gap},
                                 {"wall_time", it.wall_time},
                                 {"status", std::string(to_string(it.status))},
                                 {"grid_cells", it.grid_cells},
                                 {"centers", centers}});
  }
  doc["total_wall_time"] = report.total_wall_time;
  doc["final_objective"] = report.final_objective;
  doc["final_gap"] = report.final_gap;
  return doc;
}

SolveStatus parse_status(const std::string& text) {
  for (auto s : {SolveStatus::Optimal, SolveStatus::Infeasible, SolveStatus::TimeLimit,
                 SolveStatus::Error}) {
    if (to_string(s) == text) return s;
  }
  throw Error(ErrorCode::MalformedInput, "unknown status '" + text + "'");
}

SolveReport report_from(const json& doc) {
  SolveReport report;
  report.variant = parse_variant(doc.at("variant").get<std::string>());
  report.backend = doc.at("backend").get<std::string>();
  report.seed = doc.at("seed").get<std::uint64_t>();
  for (const auto& it : doc.at("iterations")) {
    IterationRecord rec;
    rec.objective = it.at("objective").get<double>();
    rec.gap = it.at("gap").get<double>();
    rec.wall_time = it.at("wall_time").get<double>();
    rec.status = parse_status(it.at("status").get<std::string>());
    rec.grid_cells = it.at("grid_cells").get<std::size_t>();
    for (const auto& [name, p] : it.at("centers").items()) {
      rec.centers[name] = Point2{p.at(0).get<double>(), p.at(1).get<double>()};
    }
    report.iterations.push_back(std::move(rec));
  }
  report.total_wall_time = doc.at("total_wall_time").get<double>();
  report.final_objective = doc.at("final_objective").get<double>();
  report.final_gap = doc.at("final_gap").get<double>();
  return report;
}

}  // namespace

std::string set_system_to_json(const SetSystem& system) {
  return system_json(system).dump(2) + "\n";
}

std::string report_to_json(const SolveReport& report) {
  return report_json(report).dump(2) + "\n";
}

SolveReport parse_report_json(std::string_view text) {
  try {
    return report_from(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedInput, e.what());
  }
}

std::string embedding_to_json(const EmbeddingFile& file) {
  json doc;
  doc["system"] = system_json(file.system);
  doc["grid"] = {{"kind", std::string(to_string(file.grid_kind))},
                 {"rows", file.rows},
                 {"cols", file.cols}};
  doc["variant"] = std::string(to_string(file.variant));
  doc["assignment"] = json::object();
  // Declaration order keeps files easy to read and diff.
  for (const auto& e : file.system.elements()) {
    auto it = file.embedding.assignment.find(e.id);
    if (it != file.embedding.assignment.end()) doc["assignment"][e.id] = to_int(it->second);
  }
  doc["flows"] = json::object();
  for (const auto& set : file.system.sets()) {
    auto it = file.embedding.flows.find(set.name);
    if (it == file.embedding.flows.end()) continue;
    json arcs = json::array();
    for (const auto& f : it->second) arcs.push_back({to_int(f.from), to_int(f.to), f.amount});
    doc["flows"][set.name] = arcs;
  }
  if (file.report) doc["report"] = report_json(*file.report);
  return doc.dump(2) + "\n";
}

EmbeddingFile parse_embedding_json(std::string_view text) {
  EmbeddingFile file;
  try {
    const auto doc = json::parse(text);
    file.system = parse_set_system_json(doc.at("system").dump());
    file.grid_kind = parse_grid_kind(doc.at("grid").at("kind").get<std::string>());
    file.rows = doc.at("grid").at("rows").get<int>();
    file.cols = doc.at("grid").at("cols").get<int>();
    file.variant = parse_variant(doc.at("variant").get<std::string>());
    for (const auto& [id, cell] : doc.at("assignment").items()) {
      file.embedding.assignment[id] = cell_id(cell.get<int>());
    }
    if (doc.contains("flows")) {
      for (const auto& [name, arcs] : doc.at("flows").items()) {
        auto& list = file.embedding.flows[name];
        for (const auto& a : arcs) {
          list.push_back({cell_id(a.at(0).get<int>()), cell_id(a.at(1).get<int>()),
                          a.at(2).get<int>()});
        }
      }
    }
    if (doc.contains("report")) file.report = report_from(doc.at("report"));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedInput, e.what());
  }

  const auto grid = file.grid();
  std::set<CellId> used;
  for (const auto& e : file.system.elements()) {
    auto it = file.embedding.assignment.find(e.id);
    if (it == file.embedding.assignment.end()) {
      throw Error(ErrorCode::UnknownElement, "element '" + e.id + "' has no cell");
    }
    if (!grid.contains(it->second)) {
      throw Error(ErrorCode::MalformedInput,
                  fmt::format("element '{}' sits outside the grid", e.id));
    }
    if (!used.insert(it->second).second) {
      throw Error(ErrorCode::OccupancyViolation,
                  fmt::format("cell {} holds more than one element", to_int(it->second)));
    }
  }
  if (file.embedding.assignment.size() != file.system.element_count()) {
    throw Error(ErrorCode::UnknownElement, "assignment lists elements outside the set system");
  }
  for (const auto& [name, flows] : file.embedding.flows) {
    if (!file.system.find_set(name)) throw Error(ErrorCode::UnknownSet, "flows for '" + name + "'");
    for (const auto& f : flows) {
      const auto a = grid.find(f.from);
      const auto b = grid.find(f.to);
      const auto& nb = a ? grid.cell(*a).neighbors : std::vector<std::size_t>{};
      if (!a || !b || std::find(nb.begin(), nb.end(), *b) == nb.end() || f.amount <= 0) {
        throw Error(ErrorCode::MalformedInput, "invalid flow arc in set '" + name + "'");
      }
    }
  }
  const auto broken = contiguity_violations(file.embedding, file.system, grid);
  if (!broken.empty()) {
    std::string names;
    for (const auto& n : broken) names += (names.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::ContiguityViolation, "not contiguous: " + names);
  }
  return file;
}

std::string metrics_to_json(const PpScores& scores, const std::optional<SolveReport>& report) {
  json doc;
  doc["pp_c1"] = scores.pp_c1;
  doc["pp_c2"] = scores.pp_c2;
  doc["pp_c3"] = scores.pp_c3;
  doc["sets"] = json::array();
  for (const auto& s : scores.sets) {
    doc["sets"].push_back({{"name", s.name},
                           {"kind", s.kind == SetKind::Base ? "base" : "overlay"},
                           {"cells", s.geometry.cells.size()},
                           {"area", s.geometry.area},
                           {"perimeter", s.geometry.perimeter},
                           {"pp", s.pp},
                           {"components", s.geometry.component_count}});
  }
  if (report) {
    doc["wall_time"] = report->total_wall_time;
    json times = json::array();
    for (const auto& it : report->iterations) times.push_back(it.wall_time);
    doc["iteration_wall_times"] = times;
    doc["gap"] = report->final_gap;
  }
  return doc.dump(2) + "\n";
}

std::string metrics_to_csv(const PpScores& scores) {
  std::ostringstream out;
  out << "name,kind,cells,area,perimeter,pp,components\n";
  for (const auto& s : scores.sets) {
    out << detail::csv_field(s.name) << ',' << (s.kind == SetKind::Base ? "base" : "overlay")
        << ',' << s.geometry.cells.size() << ','
        << fmt::format("{:.6f},{:.6f},{:.6f}", s.geometry.area, s.geometry.perimeter, s.pp)
        << ',' << s.geometry.component_count << '\n';
  }
  out << fmt::format("pp_c1,summary,,,,{:.6f},\n", scores.pp_c1);
  out << fmt::format("pp_c2,summary,,,,{:.6f},\n", scores.pp_c2);
  out << fmt::format("pp_c3,summary,,,,{:.6f},\n", scores.pp_c3);
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace mosaic
