// ribbon: command-line front end for the ribbon diagram library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ribbon/bounds.hpp"
#include "ribbon/catalog.hpp"
#include "ribbon/error.hpp"
#include "ribbon/io.hpp"
#include "ribbon/optimize.hpp"
#include "ribbon/render.hpp"
#include "ribbon/verify.hpp"

using namespace ribbon;

namespace {

std::string fixed6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ValidationError, "cannot write '" + path + "'");
  out << text;
}

int exit_for(CheckStatus s) {
  switch (s) {
    case CheckStatus::Ribbon: return 0;
    case CheckStatus::DiskOnly: return 2;
    case CheckStatus::Invalid: return 3;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ribbon diagrams built from unit disks: lengths, optimisation, checks, rendering"};
  app.require_subcommand(1);

  auto* catalog = app.add_subcommand("catalog", "List or emit built-in diagrams");
  catalog->require_subcommand(1);
  auto* cat_list = catalog->add_subcommand("list", "Names, expected lengths and statuses");
  auto* cat_emit = catalog->add_subcommand("emit", "Write a catalog entry as a diagram file");
  std::string emit_name, emit_out;
  cat_emit->add_option("name", emit_name, "Entry name, e.g. trefoil or family1(3)")->required();
  cat_emit->add_option("-o,--output", emit_out, "Output file (default stdout)");

  std::string file;
  auto* length = app.add_subcommand("length", "Core length and ribbonlength");
  length->add_option("file", file)->required();

  auto* grad = app.add_subcommand("grad", "Length gradient per disk");
  grad->add_option("file", file)->required();

  auto* minimize_cmd = app.add_subcommand("minimize", "Shorten the core by moving disks");
  OptimizeSettings settings;
  std::vector<std::string> fixed;
  std::string min_out;
  minimize_cmd->add_option("file", file)->required();
  minimize_cmd->add_option("--tol", settings.grad_tolerance, "KKT residual tolerance");
  minimize_cmd->add_option("--max-iters", settings.max_iterations, "Iteration cap");
  minimize_cmd->add_option("--step", settings.step_size, "Initial step size");
  minimize_cmd->add_option("--fix", fixed, "Disk id to keep fixed (repeatable)");
  minimize_cmd->add_option("-o,--output", min_out, "Write the final diagram here");

  auto* check = app.add_subcommand("check", "Ribbon / disk-diagram conditions");
  CheckSettings check_settings;
  bool human = false;
  check->add_option("file", file)->required();
  check->add_option("--sample-step", check_settings.sample_step, "Core sampling step (0 = automatic)");
  check->add_option("--grid-step", check_settings.grid_step, "Flood-fill grid step");
  check->add_flag("--human", human, "Readable report instead of key=value lines");

  auto* bound = app.add_subcommand("bound", "Crossing-number bound from the core length");
  std::optional<double> bound_length;
  auto* bound_file = bound->add_option("file", file);
  auto* bound_len = bound->add_option("--length", bound_length, "Use this length directly");
  bound_file->excludes(bound_len);

  auto* render = app.add_subcommand("render", "Write an SVG picture");
  RenderOptions ropts;
  std::string svg_out;
  render->add_option("file", file)->required();
  render->add_option("-o,--output", svg_out, "SVG file")->required();
  render->add_flag("--ribbon", ropts.draw_ribbon, "Draw the ribbon boundary");
  render->add_flag("--disks", ropts.draw_disks, "Draw the disks");
  render->add_flag("--violations", ropts.highlight_violations, "Mark check violations");
  render->add_option("--scale", ropts.scale, "Pixels per unit")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*cat_list) {
      for (const auto& name : catalog_names()) {
        const auto e = catalog_get(name);
        const std::string expected =
            e.expected_length ? format_length(e.expected_length->value()) : "unpublished";
        std::cout << name << "  expected length = " << expected
                  << "  computed = " << format_length(total_length(e.diagram))
                  << "  status = " << to_string(e.status) << "\n";
      }
    } else if (*cat_emit) {
      write_text(emit_out, serialize_diagram(catalog_get(emit_name).diagram));
    } else if (*length) {
      const Diagram d = read_diagram_file(file);
      const double len = total_length(d);
      std::cout << "length = " << format_length(len)
                << ", ribbonlength = " << format_length(len / 2.0) << "\n";
    } else if (*grad) {
      const Diagram d = read_diagram_file(file);
      const auto g = length_gradient(d);
      for (std::size_t i = 0; i < g.size(); ++i) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.12f %.12f", g[i].x, g[i].y);
        std::cout << d.config[i].id << " " << buf << "\n";
      }
    } else if (*minimize_cmd) {
      const Diagram d = read_diagram_file(file);
      settings.fixed_disks.insert(fixed.begin(), fixed.end());
      const OptimizeResult r = minimize(d, settings);
      std::cout << "initial length = " << format_length(total_length(d)) << "\n"
                << "final length = " << format_length(r.final_length) << "\n"
                << "iterations = " << r.iterations << "\n"
                << "converged = " << (r.converged ? "true" : "false") << "\n"
                << "kkt residual = " << r.kkt_residual << "\n"
                << "active contacts =";
      for (const auto& [a, b] : r.active_contacts) std::cout << " " << a << "-" << b;
      std::cout << "\n";
      Diagram out = d;
      out.config = r.final_config;
      if (!min_out.empty()) write_diagram_file(min_out, out);
    } else if (*check) {
      const Diagram d = read_diagram_file(file);
      const CheckReport r = full_report(d, check_settings);
      std::cout << (human ? format_report(r) : format_report_kv(r));
      return exit_for(r.status);
    } else if (*bound) {
      double len = 0.0;
      if (bound_length) {
        len = *bound_length;
      } else if (!file.empty()) {
        len = total_length(read_diagram_file(file));
      } else {
        throw Error(ErrorCode::ValidationError, "bound needs a file or --length");
      }
      const BoundResult b = crossing_bound(len);
      std::cout << "length_used=" << fixed6(b.length_used) << "\n"
                << "raw_bound=" << fixed6(b.raw_bound) << "\n"
                << "crossing_bound=" << b.crossing_bound << "\n";
    } else if (*render) {
      const Diagram d = read_diagram_file(file);
      std::optional<CheckReport> report;
      if (ropts.highlight_violations) report = full_report(d);
      write_text(svg_out, render_svg(d, ropts, report ? &*report : nullptr));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
