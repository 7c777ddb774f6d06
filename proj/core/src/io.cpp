#include "dcloc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dcloc {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<double> parse_double(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  const char* begin = t.data();
  if (*begin == '+') ++begin;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
  return value;
}

// Shortest text that reads back to the same double.
std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

const json& require(const json& obj, std::string_view key, const std::string& path) {
  if (!obj.is_object()) throw ParseError("expected an object", 0, path);
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing field", 0, join(path, key));
  return *it;
}

double number_at(const json& value, const std::string& path, bool allow_inf) {
  if (value.is_number()) return value.get<double>();
  if (allow_inf && value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ParseError(allow_inf ? "expected a number or \"-inf\"/\"inf\"" : "expected a number",
                   0, path);
}

Vector vector_at(const json& value, const std::string& path, bool allow_inf = false) {
  if (!value.is_array()) throw ParseError("expected an array of numbers", 0, path);
  Vector v(static_cast<Eigen::Index>(value.size()));
  for (std::size_t k = 0; k < value.size(); ++k) {
    v[static_cast<Eigen::Index>(k)] =
        number_at(value[k], path + "[" + std::to_string(k) + "]", allow_inf);
  }
  return v;
}

json bound_to_json(double b) {
  if (std::isinf(b)) return b > 0 ? json("inf") : json("-inf");
  return b;
}

ConvexSet set_from_json(const json& doc, const std::string& path) {
  const json& kind_value = require(doc, "kind", path);
  if (!kind_value.is_string()) throw ParseError("expected a string", 0, join(path, "kind"));
  const auto& kind = kind_value.get_ref<const std::string&>();
  try {
    if (kind == "point") {
      return ConvexSet::singleton(vector_at(require(doc, "point", path), join(path, "point")));
    }
    if (kind == "ball") {
      return ConvexSet::ball(
          vector_at(require(doc, "center", path), join(path, "center")),
          number_at(require(doc, "radius", path), join(path, "radius"), false));
    }
    if (kind == "box") {
      return ConvexSet::box(
          vector_at(require(doc, "lower", path), join(path, "lower"), true),
          vector_at(require(doc, "upper", path), join(path, "upper"), true));
    }
    if (kind == "halfspace") {
      return ConvexSet::halfspace(
          vector_at(require(doc, "normal", path), join(path, "normal")),
          number_at(require(doc, "offset", path), join(path, "offset"), false));
    }
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what(), path);
  }
  throw ParseError("unknown set kind '" + kind + "'", 0, join(path, "kind"));
}

std::vector<WeightedSet> sets_from_json(const json& doc, const std::string& path) {
  if (!doc.is_array()) throw ParseError("expected an array", 0, path);
  std::vector<WeightedSet> out;
  out.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string item = path + "[" + std::to_string(i) + "]";
    ConvexSet set = set_from_json(require(doc[i], "shape", item), join(item, "shape"));
    const double weight = number_at(require(doc[i], "weight", item), join(item, "weight"), false);
    out.push_back({std::move(set), weight});
  }
  return out;
}

json sets_to_json(const std::vector<WeightedSet>& sets) {
  json out = json::array();
  for (const auto& ws : sets) out.push_back({{"shape", set_to_json(ws.set)}, {"weight", ws.weight}});
  return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("write failed for " + path.string());
}

std::string_view to_string(Diagnostic::Code code) {
  switch (code) {
    case Diagnostic::Code::kDimensionMismatch: return "dimension_mismatch";
    case Diagnostic::Code::kNonPositiveWeight: return "nonpositive_weight";
    case Diagnostic::Code::kNoAttractions: return "no_attractions";
    case Diagnostic::Code::kAttractionMeetsConstraint: return "attraction_meets_constraint";
  }
  return "unknown";
}

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::string out = "invalid instance";
  for (const auto& d : diagnostics) {
    if (d.severity == Diagnostic::Severity::kError) out += "; " + d.message;
  }
  return out;
}

}  // namespace

std::string ParseError::format(const std::string& message, std::size_t line,
                               const std::string& field) {
  std::string out = "parse error";
  if (line > 0) out += " at line " + std::to_string(line);
  if (!field.empty()) out += " in " + field;
  return out + ": " + message;
}

ValidationError::ValidationError(std::vector<Diagnostic> diags)
    : Error(summarize(diags)), diagnostics(std::move(diags)) {}

ValidationError::ValidationError(const std::string& message, std::string field)
    : Error("invalid instance: " + field + ": " + message) {}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

json set_to_json(const ConvexSet& set) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Singleton>) {
          return {{"kind", "point"}, {"point", vector_to_json(s.point)}};
        } else if constexpr (std::is_same_v<T, Ball>) {
          return {{"kind", "ball"}, {"center", vector_to_json(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, AxisBox>) {
          json lower = json::array();
          json upper = json::array();
          for (Eigen::Index k = 0; k < s.lower.size(); ++k) {
            lower.push_back(bound_to_json(s.lower[k]));
            upper.push_back(bound_to_json(s.upper[k]));
          }
          return {{"kind", "box"}, {"lower", lower}, {"upper", upper}};
        } else {
          return {{"kind", "halfspace"}, {"normal", vector_to_json(s.normal)}, {"offset", s.offset}};
        }
      },
      set.shape());
}

json instance_to_json(const ProblemInstance& inst) {
  return {{"dimension", inst.dimension},
          {"attractions", sets_to_json(inst.attractions)},
          {"repulsions", sets_to_json(inst.repulsions)},
          {"constraint", set_to_json(inst.constraint)}};
}

ProblemInstance instance_from_json(const json& doc) {
  const json& dim = require(doc, "dimension", "");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) {
    throw ParseError("expected a positive integer", 0, "dimension");
  }
  ProblemInstance inst;
  inst.dimension = dim.get<int>();
  inst.attractions = sets_from_json(require(doc, "attractions", ""), "attractions");
  if (const auto it = doc.find("repulsions"); it != doc.end()) {
    inst.repulsions = sets_from_json(*it, "repulsions");
  }
  if (const auto it = doc.find("constraint"); it != doc.end()) {
    inst.constraint = set_from_json(*it, "constraint");
  } else {
    inst.constraint = ConvexSet::whole_space(inst.dimension);
  }
  auto diagnostics = validate_instance(inst);
  if (has_errors(diagnostics)) throw ValidationError(std::move(diagnostics));
  return inst;
}

LoadedInstance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  LoadedInstance out{instance_from_json(doc), {}};
  for (auto& d : validate_instance(out.instance)) out.warnings.push_back(std::move(d));
  return out;
}

LoadedInstance load_instance(const std::filesystem::path& path) {
  return parse_instance(read_file(path));
}

std::string dump_instance(const ProblemInstance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

void write_instance(const std::filesystem::path& path, const ProblemInstance& inst) {
  write_file(path, dump_instance(inst));
}

PointShape PointShape::parse(std::string_view text) {
  if (text == "point") return point();
  constexpr std::string_view prefix = "square:";
  if (text.substr(0, prefix.size()) == prefix) {
    const auto h = parse_double(text.substr(prefix.size()));
    if (h && *h > 0.0 && std::isfinite(*h)) return square(*h);
  }
  throw std::invalid_argument("shape must be 'point' or 'square:<half side>', got '" +
                              std::string(text) + "'");
}

std::vector<Vector> parse_points_csv(std::istream& in) {
  std::vector<Vector> points;
  std::string line;
  std::size_t row = 0;
  bool first = true;
  Eigen::Index width = -1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    std::vector<double> values;
    bool numeric = true;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      const auto v = parse_double(field);
      if (!v) {
        numeric = false;
        break;
      }
      values.push_back(*v);
    }
    const bool was_first = first;
    first = false;
    if (!numeric) {
      if (was_first) continue;  // header
      throw ParseError("non-numeric field '" + trim(field) + "'", row);
    }
    if (width < 0) width = static_cast<Eigen::Index>(values.size());
    if (static_cast<Eigen::Index>(values.size()) != width) {
      throw ParseError("expected " + std::to_string(width) + " columns, got " +
                           std::to_string(values.size()),
                       row);
    }
    points.push_back(Eigen::Map<const Vector>(values.data(), width));
  }
  if (points.empty()) throw ParseError("empty group: no data rows");
  return points;
}

std::vector<Vector> read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_points_csv(in);
}

std::vector<WeightedSet> load_points_csv(const std::filesystem::path& path, SetRole role,
                                         PointShape shape, double weight) {
  if (!(weight > 0.0)) {
    throw ValidationError("weight must be positive",
                          role == SetRole::kAttraction ? "attractions" : "repulsions");
  }
  std::vector<WeightedSet> out;
  for (const auto& p : read_points_csv(path)) {
    if (shape.kind == PointShape::Kind::kSquare) {
      out.push_back({ConvexSet::square(p, shape.half_side), weight});
    } else {
      out.push_back({ConvexSet::singleton(p), weight});
    }
  }
  return out;
}

void write_points_csv(const std::filesystem::path& path, const std::vector<Vector>& points,
                      std::string_view header) {
  std::string out;
  if (!header.empty()) out.append(header).push_back('\n');
  for (const auto& p : points) {
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      if (k) out.push_back(',');
      out += format_double(p[k]);
    }
    out.push_back('\n');
  }
  write_file(path, out);
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryPoint>& traj) {
  const Eigen::Index n = traj.empty() ? 0 : traj.front().x.size();
  out << "k";
  for (Eigen::Index k = 1; k <= n; ++k) out << ",x_" << k;
  out << ",f,step_norm\n";
  for (const auto& t : traj) {
    out << t.k;
    for (Eigen::Index k = 0; k < t.x.size(); ++k) out << ',' << format_double(t.x[k]);
    out << ',' << format_double(t.f_value) << ',' << format_double(t.step_norm) << '\n';
  }
}

json to_json(const SolveReport& report) {
  json methods = json::array();
  std::vector<InnerMethod> seen;
  for (const auto m : report.inner_methods_used) {
    if (std::find(seen.begin(), seen.end(), m) == seen.end()) {
      seen.push_back(m);
      methods.push_back(to_string(m));
    }
  }
  return {{"final_x", vector_to_json(report.final_x)},
          {"final_value", report.final_value},
          {"outer_iterations", report.outer_iterations},
          {"termination", to_string(report.termination)},
          {"criticality_residual", report.criticality_residual},
          {"inner_methods_used", methods}};
}

json to_json(const ExistenceReport& report) {
  json out = {{"verdict", to_string(report.verdict)}, {"rule", to_string(report.rule)}};
  if (report.gamma) out["gamma"] = *report.gamma;
  if (report.w) out["w"] = vector_to_json(*report.w);
  if (report.majority_index) out["majority_index"] = *report.majority_index;
  if (report.infimum) out["infimum"] = *report.infimum;
  return out;
}

json to_json(const Diagnostic& d) {
  json out = {{"code", to_string(d.code)},
              {"severity", d.severity == Diagnostic::Severity::kError ? "error" : "warning"},
              {"message", d.message}};
  if (d.index) out["index"] = *d.index;
  return out;
}

}  // namespace dcloc
