// Command-line front end: gradings <command> [files...] [options]

#include <CLI11.hpp>

#include <iostream>

#include "gradings/commands.hpp"

int main(int argc, char** argv) {
  using namespace gradings;
  CLI::App app{"Gradings on finite-dimensional algebras: universal groups, toral rank, almost fine gradings, "
               "classification and root systems."};
  app.require_subcommand(1);

  bool json = false;
  CommandOptions opts;
  app.add_flag("--json", json, "Emit JSON instead of text")->trigger_on_parse();

  auto add_common = [&](CLI::App* sub, std::vector<std::string>& files) {
    sub->add_option("files", files, "Input files; standard input when omitted or '-'");
    sub->add_flag("--json", json, "Emit JSON instead of text");
    sub->add_option("--seed", opts.seed, "Seed for generic choices");
    sub->add_option("--grading,-g", opts.gradings, "Grading name (repeatable for validate and classify)");
  };

  std::vector<std::string> files;
  std::string catalog_name;
  for (const auto& name : command_names()) {
    CLI::App* sub = nullptr;
    if (name == "catalog") {
      sub = app.add_subcommand(name, "Print a built-in example as a workspace, or list the examples");
      sub->add_option("name", catalog_name, "Example name");
      sub->add_flag("--json", json, "Emit JSON (the listing only; entries are always JSON)");
      continue;
    }
    sub = app.add_subcommand(name, "");
    add_common(sub, files);
    if (name == "coarsen-enum") {
      sub->description("Enumerate almost fine coarsenings of a fine grading");
      sub->add_flag("--universal-only", opts.universal_only, "Keep only kernels generated by differences of support");
      sub->add_option("--cap", opts.cap, "Bound on subgroup enumeration");
    } else if (name == "classify") {
      sub->description("Classify G-gradings induced from almost fine gradings");
      sub->add_option("--group", opts.group, "Target group: JSON literal or invariants such as 2,2")->required();
      sub->add_option("--cap", opts.cap, "Bound on homomorphism enumeration");
      sub->add_flag("--assert-weyl-complete", opts.assert_weyl_complete,
                    "The supplied Weyl generators generate the full Weyl groups");
    } else if (name == "induce" || name == "admissible") {
      sub->description(name == "induce" ? "Grading induced by a homomorphism" : "Admissibility of a homomorphism");
      sub->add_option("--hom", opts.hom, "Homomorphism name");
    } else if (name == "root-graded") {
      sub->description("Root-graded structure of a non-special grading");
      sub->add_option("--refinement", opts.refinement, "Name of a fine refinement (default: canonical refinement)");
    } else {
      const std::map<std::string, std::string> text = {
          {"validate", "Validate gradings and check assertions"},
          {"ugroup", "Universal abelian group"},
          {"der", "Graded derivation algebra"},
          {"trank", "Toral rank"},
          {"almost-fine", "Almost fine test"},
          {"refine-canonical", "Canonical refinement by a maximal torus"},
          {"rootsys", "Root system of a non-special grading"}};
      sub->description(text.at(name));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    Report r;
    if (command == "catalog") {
      r = catalog_command(catalog_name);
      if (!catalog_name.empty()) json = true;
    } else {
      if (files.empty()) files.push_back("-");
      Workspace ws = parse_workspace(files);
      r = run_command(command, ws, opts);
    }
    if (json) std::cout << r.json.dump(2) << "\n";
    else std::cout << r.text;
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::Internal);
  }
}
