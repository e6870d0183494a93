#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cremona/classify.hpp"
#include "cremona/report.hpp"

using namespace cremona;

namespace {

SurfaceInvariants invariants_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open invariants file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error("invariants file " + path + ": " + e.what());
  }
  return report::invariants_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification toolkit for a quartic Cremona transformation of P^4"};
  app.require_subcommand(1);
  // global flags stay recognizable after the subcommand name
  app.fallthrough();

  std::string json_path;
  bool quiet = false;
  app.add_option("--json", json_path, "write the report as JSON to this path ('-' for stdout)");
  app.add_flag("--quiet", quiet, "suppress the console rendering");

  std::string fixture;
  CLI::App* verify =
      app.add_subcommand("verify-example", "replay the finite-field pipeline on a section fixture");
  verify->add_option("input", fixture, "section fixture JSON: {\"prime\": p, \"matrix\": 8x16}")
      ->required();

  std::string inv_path;
  CLI::App* inter =
      app.add_subcommand("intersection", "intersection-number tables for one surface datum");
  inter->add_option("input", inv_path,
                    "invariants JSON (n, m, d, delta, kc, k2, c2, chi, g; optional xi); "
                    "defaults to the built-in quartic datum");

  bool show_steps = false;
  std::string case_label;
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "replay the Diophantine case elimination");
  classify_cmd->add_flag("--show-steps", show_steps, "embed the per-step integers in the report");
  classify_cmd->add_option("--case", case_label, "restrict to one case label (a..g)");

  app.add_subcommand("lattice", "middle-cohomology lattice and the base-change isometry");

  std::string points_path;
  CLI::App* motivic_cmd =
      app.add_subcommand("motivic", "class-group identity and its point-count realization");
  motivic_cmd->add_option("--points", points_path,
                          "section fixture for the point-count realization");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    report::VerificationReport rep;
    if (verify->parsed()) {
      rep = report::verify_example(k3::load_section_input(fixture));
    } else if (inter->parsed()) {
      rep = report::intersection(inv_path.empty() ? survivor_surface()
                                                  : invariants_from_file(inv_path));
    } else if (classify_cmd->parsed()) {
      char filter = 0;
      if (!case_label.empty()) {
        if (case_label.size() != 1 || case_label[0] < 'a' || case_label[0] > 'g')
          throw Error("classify: --case expects a single letter a..g");
        filter = case_label[0];
      }
      rep = report::classification(show_steps, filter);
    } else if (motivic_cmd->parsed()) {
      std::optional<k3::SectionInput> pts;
      if (!points_path.empty()) pts = k3::load_section_input(points_path);
      rep = report::motivic(pts);
    } else {
      rep = report::lattice();
    }

    if (!quiet) std::cout << report::render_text(rep);
    if (!json_path.empty()) {
      nlohmann::json j = report::to_json(rep);
      if (json_path == "-") {
        std::cout << j.dump(2) << "\n";
      } else {
        std::ofstream out(json_path);
        if (!out) throw Error("cannot write report to " + json_path);
        out << j.dump(2) << "\n";
      }
    }
    return rep.pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
