#pragma once

// Command front end shared by the dcloc executable and its tests.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dcloc/geometry.hpp"

namespace dcloc::cli {

enum class Command { kSolve, kExistence, kClassify, kOracle, kGen };

std::string_view to_string(Command c);
std::optional<Command> parse_command(std::string_view name);

/// One invocation. `overrides` holds flag values by long name without dashes
/// ("lambda", "starts", "grid", ...). For `gen`, instance_path is the file
/// written; for the other commands it is the file read.
struct RunManifest {
  Command command = Command::kSolve;
  std::string instance_path;
  std::map<std::string, std::string> overrides;
  std::string output_path;  // report destination; empty means `out`
  std::uint64_t seed = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitSolverError = 3;

/// Executes the command and writes a JSON report. Returns 0 on success, 2 on
/// parse or validation failures, 3 when a solver or oracle fails. Messages go
/// to `err`.
int run(const RunManifest& manifest, std::ostream& out, std::ostream& err);

/// Parses argv into a manifest. Returns the exit code to use when parsing
/// stops early (help or usage errors).
std::variant<RunManifest, int> parse_arguments(int argc, const char* const* argv,
                                               std::ostream& out, std::ostream& err);

/// Synthetic stand-in for the city dataset: group A (attractions) inside the
/// contiguous-states box, group B split between the two outlying regions.
struct CityGroups {
  std::vector<Vector> a;  // (lat, long)
  std::vector<Vector> b;
};

CityGroups synthesize_cities(std::uint64_t seed, int a_count = 1097, int b_count = 120);

}  // namespace dcloc::cli
