#pragma once

// Subcommands of the command-line tool, independent of argument parsing.

#include <cstdint>
#include <string>
#include <vector>

#include "gradings/io.hpp"
#include "gradings/afine.hpp"

namespace gradings {

struct CommandOptions {
  std::vector<std::string> gradings;  // selected gradings; empty means the first
  std::string refinement;             // root-graded: a named fine refinement
  std::string hom;                    // induce, admissible
  std::string group;                  // classify: group literal or "2,2" invariants
  std::uint64_t seed = kDefaultSeed;
  std::size_t cap = 0;                // 0 keeps the library default
  bool universal_only = false;
  bool assert_weyl_complete = false;
};

struct Report {
  std::string text;
  Json json;
};

std::vector<std::string> command_names();

/// Dispatches every subcommand except `catalog`.
Report run_command(const std::string& command, const Workspace& ws, const CommandOptions& opts);

/// A workspace holding the catalog entry (algebra, grading, refinement,
/// Weyl generators, expected facts as assertions); an empty name lists them.
Report catalog_command(const std::string& name);

/// Parses a group given as a JSON literal or as comma-separated invariants
/// optionally followed by "+Z^r", e.g. "2,2" or "2+Z^1".
FgAbGroup parse_group_spec(const std::string& text);

}  // namespace gradings
