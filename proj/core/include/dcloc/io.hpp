#pragma once

// Instance documents (JSON), point CSV ingestion, and report export.
//
// Instance schema:
//   { "dimension": n,
//     "attractions": [ { "shape": <set>, "weight": w }, ... ],
//     "repulsions":  [ ... ],
//     "constraint":  <set> }
//   <set> := { "kind": "point",     "point":  [..] }
//          | { "kind": "ball",      "center": [..], "radius": r }
//          | { "kind": "box",       "lower":  [..], "upper": [..] }
//          | { "kind": "halfspace", "normal": [..], "offset": b }
// Box bounds accept the strings "-inf" and "inf". "repulsions" may be omitted,
// and "constraint" defaults to the whole space.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dcloc/dca.hpp"
#include "dcloc/errors.hpp"
#include "dcloc/model.hpp"

namespace dcloc {

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line = 0, std::string field = {})
      : Error(format(message, line, field)), line(line), field(std::move(field)) {}

  std::size_t line;   // 1-based, 0 when unknown
  std::string field;  // e.g. "attractions[2].shape.radius"

 private:
  static std::string format(const std::string& message, std::size_t line,
                            const std::string& field);
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics);
  ValidationError(const std::string& message, std::string field);

  std::vector<Diagnostic> diagnostics;
};

nlohmann::json vector_to_json(const Vector& v);
nlohmann::json set_to_json(const ConvexSet& set);
nlohmann::json instance_to_json(const ProblemInstance& inst);

/// Throws ParseError on schema violations and ValidationError when the
/// instance fails validate_instance.
ProblemInstance instance_from_json(const nlohmann::json& doc);

struct LoadedInstance {
  ProblemInstance instance;
  std::vector<Diagnostic> warnings;
};

LoadedInstance parse_instance(std::string_view text);
LoadedInstance load_instance(const std::filesystem::path& path);

std::string dump_instance(const ProblemInstance& inst);
void write_instance(const std::filesystem::path& path, const ProblemInstance& inst);

enum class SetRole { kAttraction, kRepulsion };

struct PointShape {
  enum class Kind { kPoint, kSquare };
  Kind kind = Kind::kPoint;
  double half_side = 0.0;

  static PointShape point() { return {}; }
  static PointShape square(double half_side) { return {Kind::kSquare, half_side}; }
  /// "point" or "square:<half side>".
  static PointShape parse(std::string_view text);
};

/// One point per row, comma separated. A first row that does not parse as
/// numbers is treated as a header. Throws ParseError with the row number.
std::vector<Vector> read_points_csv(const std::filesystem::path& path);
std::vector<Vector> parse_points_csv(std::istream& in);

std::vector<WeightedSet> load_points_csv(const std::filesystem::path& path,
                                         SetRole role, PointShape shape,
                                         double weight);

void write_points_csv(const std::filesystem::path& path, const std::vector<Vector>& points,
                      std::string_view header);

/// Columns k, x_1..x_n, f, step_norm.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryPoint>& traj);

nlohmann::json to_json(const SolveReport& report);
nlohmann::json to_json(const ExistenceReport& report);
nlohmann::json to_json(const Diagnostic& diagnostic);

}  // namespace dcloc
