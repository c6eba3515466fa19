#include "mosaic/cli.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "mosaic/backend.hpp"
#include "mosaic/io.hpp"
#include "mosaic/metrics.hpp"
#include "mosaic/render.hpp"
#include "mosaic/solver.hpp"
#include "mosaic/synth.hpp"

namespace mosaic {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Infeasible:
      return 3;
    case ErrorCode::SolverFailure:
    case ErrorCode::NoIncumbent:
    case ErrorCode::NonIntegralSolution:
      return 4;
    default:
      return 2;
  }
}

namespace {

namespace fs = std::filesystem;

struct InputFiles {
  std::string elements;
  std::string overlays;
  std::string json;
};

struct SolveFlags {
  std::string grid = "hex";
  std::string variant = "mse";
  double gap = 0.005;
  int iterations = 5;
  double time_limit = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  std::string grid_size;
};

void add_input_options(CLI::App& cmd, InputFiles& in) {
  cmd.add_option("--elements", in.elements, "CSV with id,label,base_set");
  cmd.add_option("--overlays", in.overlays, "CSV with set,element_id");
  cmd.add_option("--input", in.json, "JSON set system (alternative to the CSV pair)");
}

void add_solve_options(CLI::App& cmd, SolveFlags& f) {
  cmd.add_option("--gap", f.gap, "relative optimality gap");
  cmd.add_option("--iterations", f.iterations, "eccentricity iterations");
  cmd.add_option("--time-limit", f.time_limit, "seconds per solve");
  cmd.add_option("--seed", f.seed, "solver seed");
  cmd.add_option("--grid-size", f.grid_size, "ROWSxCOLS instead of the default sizing");
}

SetSystem load_system(const InputFiles& in) {
  if (!in.json.empty()) return parse_set_system_json(read_text_file(in.json));
  if (in.elements.empty()) {
    throw Error(ErrorCode::InvalidArgument, "give --elements (and --overlays) or --input");
  }
  const std::string overlays = in.overlays.empty() ? "" : read_text_file(in.overlays);
  return parse_set_system(read_text_file(in.elements), overlays);
}

std::pair<int, int> parse_grid_size(const std::string& text, const SetSystem& system) {
  if (text.empty()) return grid_size_for(static_cast<int>(system.element_count()));
  int rows = 0;
  int cols = 0;
  char sep = 0;
  std::istringstream in(text);
  if (!(in >> rows >> sep >> cols) || (sep != 'x' && sep != 'X') || rows < 1 || cols < 1 ||
      !in.eof()) {
    throw Error(ErrorCode::InvalidArgument, "grid size must look like 10x12");
  }
  return {rows, cols};
}

void check_flags(const SolveFlags& f) {
  if (!(f.gap >= 0.0 && f.gap < 1.0)) throw Error(ErrorCode::InvalidArgument, "gap must be in [0,1)");
  if (f.iterations < 1) throw Error(ErrorCode::InvalidArgument, "iterations must be >= 1");
  if (!(f.time_limit > 0.0)) throw Error(ErrorCode::InvalidArgument, "time limit must be > 0");
}

BackendConfig backend_config(const SolveFlags& f) {
  BackendConfig config;
  config.relative_gap = f.gap;
  config.time_limit = f.time_limit;
  config.seed = f.seed;
  return config;
}

int cmd_embed(const InputFiles& in, const SolveFlags& flags, const std::string& out_dir,
              std::ostream& out) {
  check_flags(flags);
  const auto system = load_system(in);
  const auto kind = parse_grid_kind(flags.grid);
  const auto variant = parse_variant(flags.variant);
  const auto [rows, cols] = parse_grid_size(flags.grid_size, system);
  const HostGrid grid(kind, rows, cols);
  const auto cs = contract_indistinguishable(system);
  auto backend = backend_from_env(backend_config(flags));
  RunOptions opts;
  opts.max_iterations = flags.iterations;
  auto result = run_variant(variant, cs, grid, *backend, opts);

  EmbeddingFile file{system, kind, rows, cols, variant, result.embedding, result.report};
  write_text_file(fs::path(out_dir) / "embedding.json", embedding_to_json(file));
  write_text_file(fs::path(out_dir) / "report.json", report_to_json(result.report));
  out << fmt::format("{} on {} {}x{}: {} iteration(s), objective {:.6g}, gap {:.4g}, {:.2f} s\n",
                     to_string(variant), to_string(kind), rows, cols,
                     result.report.iterations.size(), result.report.final_objective,
                     result.report.final_gap, result.report.total_wall_time);
  return 0;
}

int cmd_render(const std::string& embedding_path, std::vector<std::string> select,
               const std::string& style_name, bool gallery, const std::string& out_dir,
               std::ostream& out, std::ostream& err) {
  const auto file = parse_embedding_json(read_text_file(embedding_path));
  const auto grid = file.grid();
  const auto style = default_style();
  if (select.empty()) select = file.system.set_names(SetKind::Overlay);
  auto doc = render_base_map(file.embedding, file.system, grid, style);
  const bool kelp = style_name == "kelp";
  if (kelp) {
    doc = render_kelp_overlays(std::move(doc), file.embedding, file.system, grid, style, select);
  } else {
    doc = render_boundary_overlays(std::move(doc), file.embedding, file.system, grid, style,
                                   select);
  }
  doc = place_labels(std::move(doc), file.embedding, file.system, grid, style, kelp);
  for (const auto& w : doc.warnings) err << "warning: " << w << '\n';

  const auto map_path = fs::path(out_dir) / "map.svg";
  write_text_file(map_path, doc.to_svg());
  out << map_path.string() << '\n';
  if (gallery) {
    for (const auto& p : export_gallery(doc, out_dir)) out << p.string() << '\n';
  }
  return 0;
}

int cmd_metrics(const std::string& embedding_path, const std::string& out_dir,
                std::ostream& out) {
  const auto file = parse_embedding_json(read_text_file(embedding_path));
  const auto scores = pp_scores(file.embedding, file.system, file.grid());
  write_text_file(fs::path(out_dir) / "metrics.json", metrics_to_json(scores, file.report));
  write_text_file(fs::path(out_dir) / "metrics.csv", metrics_to_csv(scores));
  out << fmt::format("pp_c1 {:.4f}  pp_c2 {:.4f}  pp_c3 {:.4f}\n", scores.pp_c1, scores.pp_c2,
                     scores.pp_c3);
  for (const auto& s : scores.sets) {
    out << fmt::format("  {:<24} pp {:.4f}  components {}\n", s.name, s.pp,
                       s.geometry.component_count);
  }
  return 0;
}

int cmd_synth(const std::string& profile_name, std::uint64_t seed, int overlays, int elements,
              int base_sets, const std::string& out_dir, std::ostream& out) {
  SynthProfile profile;
  if (profile_name == "random") {
    if (elements < 1 || base_sets < 1) {
      throw Error(ErrorCode::InvalidArgument, "random profile needs --elements and --base-sets");
    }
    profile = {"random", elements, base_sets, std::max(0, overlays)};
  } else {
    profile = named_profile(profile_name, overlays);
  }
  const auto system = synthesize(profile, seed);
  write_text_file(fs::path(out_dir) / "elements.csv", elements_to_csv(system));
  write_text_file(fs::path(out_dir) / "overlays.csv", overlays_to_csv(system));
  out << fmt::format("{}: {} elements, {} base sets, {} overlays (seed {})\n", profile.name,
                     system.element_count(), system.base_set_indices().size(),
                     system.overlay_set_indices().size(), seed);
  return 0;
}

int cmd_compare(const InputFiles& in, const SolveFlags& flags, const std::string& out_dir,
                std::ostream& out, std::ostream& err) {
  check_flags(flags);
  const auto system = load_system(in);
  const auto [rows, cols] = parse_grid_size(flags.grid_size, system);
  const auto cs = contract_indistinguishable(system);
  RunOptions opts;
  opts.max_iterations = flags.iterations;

  std::string csv = "variant,grid,pp_c1,pp_c2,pp_c3,wall_time,gap,status\n";
  for (auto kind : {GridKind::Hex, GridKind::Square}) {
    const HostGrid grid(kind, rows, cols);
    for (auto variant : {Variant::MSP, Variant::MSE, Variant::MSEA}) {
      auto backend = backend_from_env(backend_config(flags));
      std::string row;
      try {
        const auto result = run_variant(variant, cs, grid, *backend, opts);
        const auto scores = pp_scores(result.embedding, system, grid);
        const auto status = result.report.iterations.back().status;
        row = fmt::format("{},{},{:.6f},{:.6f},{:.6f},{:.3f},{:.6f},{}", to_string(variant),
                          to_string(kind), scores.pp_c1, scores.pp_c2, scores.pp_c3,
                          result.report.total_wall_time, result.report.final_gap,
                          to_string(status));
      } catch (const Error& e) {
        err << fmt::format("{} on {}: {}\n", to_string(variant), to_string(kind), e.what());
        row = fmt::format("{},{},,,,,,\"error: {}\"", to_string(variant), to_string(kind),
                          to_string(e.code()));
      }
      csv += row + "\n";
      out << row << '\n';
    }
  }
  write_text_file(fs::path(out_dir) / "compare.csv", csv);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Embed set systems into grid maps, render them and score compactness",
               "mosaic"};
  app.require_subcommand(1);
  std::string out_dir = ".";

  InputFiles embed_in;
  SolveFlags embed_flags;
  auto* embed = app.add_subcommand("embed", "solve an embedding");
  add_input_options(*embed, embed_in);
  add_solve_options(*embed, embed_flags);
  embed->add_option("--grid", embed_flags.grid, "hex or square")
      ->check(CLI::IsMember({"hex", "square"}));
  embed->add_option("--variant", embed_flags.variant, "msp, mse, msea or relaxed")
      ->check(CLI::IsMember({"msp", "mse", "msea", "relaxed"}));
  embed->add_option("--out", out_dir, "output directory");

  std::string embedding_path;
  std::vector<std::string> select;
  std::string style = "boundary";
  bool gallery = false;
  auto* render = app.add_subcommand("render", "draw an embedding as SVG");
  render->add_option("embedding", embedding_path, "embedding.json")->required();
  render->add_option("--select", select, "overlays to draw (comma separated)")->delimiter(',');
  render->add_option("--style", style, "boundary or kelp")
      ->check(CLI::IsMember({"boundary", "kelp"}));
  render->add_flag("--gallery", gallery, "also write gallery.html and per-overlay SVGs");
  render->add_option("--out", out_dir, "output directory");

  auto* metrics = app.add_subcommand("metrics", "Polsby-Popper scores of an embedding");
  metrics->add_option("embedding", embedding_path, "embedding.json")->required();
  metrics->add_option("--out", out_dir, "output directory");

  std::string profile = "bonn";
  std::uint64_t synth_seed = 0;
  int overlays = 0;
  int elements = 0;
  int base_sets = 0;
  auto* synth = app.add_subcommand("synth", "generate a synthetic set system");
  synth->add_option("--profile", profile, "bonn, vienna, parliament or random")
      ->check(CLI::IsMember({"bonn", "vienna", "parliament", "random"}));
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--overlays", overlays, "overlay count (overrides the profile)");
  synth->add_option("--elements", elements, "element count (random profile)");
  synth->add_option("--base-sets", base_sets, "base set count (random profile)");
  synth->add_option("--out", out_dir, "output directory");

  InputFiles compare_in;
  SolveFlags compare_flags;
  compare_flags.time_limit = 60.0;
  auto* compare = app.add_subcommand("compare", "run MSP, MSE and MSEA on both grid kinds");
  add_input_options(*compare, compare_in);
  add_solve_options(*compare, compare_flags);
  compare->add_option("--out", out_dir, "output directory");

  std::vector<const char*> argv{"mosaic"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (embed->parsed()) return cmd_embed(embed_in, embed_flags, out_dir, out);
    if (render->parsed()) {
      return cmd_render(embedding_path, select, style, gallery, out_dir, out, err);
    }
    if (metrics->parsed()) return cmd_metrics(embedding_path, out_dir, out);
    if (synth->parsed()) {
      return cmd_synth(profile, synth_seed, overlays, elements, base_sets, out_dir, out);
    }
    if (compare->parsed()) return cmd_compare(compare_in, compare_flags, out_dir, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return 2;
}

}  // namespace mosaic
