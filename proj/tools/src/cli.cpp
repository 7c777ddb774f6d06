#include "dcloc/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dcloc/analysis.hpp"
#include "dcloc/dca.hpp"
#include "dcloc/errors.hpp"
#include "dcloc/io.hpp"
#include "dcloc/oracle.hpp"
#include "dcloc/random.hpp"

namespace dcloc::cli {

using nlohmann::json;

namespace {

// Bad flag values; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_real(std::string_view text, std::string_view what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw UsageError("--" + std::string(what) + ": expected a number, got '" +
                     std::string(text) + "'");
  }
  return value;
}

long long parse_integer(std::string_view text, std::string_view what) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("--" + std::string(what) + ": expected an integer, got '" +
                     std::string(text) + "'");
  }
  return value;
}

Vector parse_vector(std::string_view text, std::string_view what) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? comma : comma - start);
    values.push_back(parse_real(piece, what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

class Overrides {
 public:
  explicit Overrides(const std::map<std::string, std::string>& values) : values_(values) {}

  const std::string* find(const std::string& key) const {
    const auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
  }
  double real(const std::string& key, double fallback) const {
    const auto* v = find(key);
    return v ? parse_real(*v, key) : fallback;
  }
  int integer(const std::string& key, int fallback, int min) const {
    const auto* v = find(key);
    if (!v) return fallback;
    const long long n = parse_integer(*v, key);
    if (n < min || n > 1'000'000'000) {
      throw UsageError("--" + key + ": must be at least " + std::to_string(min));
    }
    return static_cast<int>(n);
  }
  bool flag(const std::string& key) const {
    const auto* v = find(key);
    return v && *v != "false" && *v != "0";
  }
  std::optional<Vector> vector(const std::string& key) const {
    const auto* v = find(key);
    if (!v) return std::nullopt;
    return parse_vector(*v, key);
  }

 private:
  const std::map<std::string, std::string>& values_;
};

InnerMethod parse_inner_method(const std::string& name) {
  if (name == "weiszfeld") return InnerMethod::kWeiszfeld;
  if (name == "subgradient") return InnerMethod::kSubgradient;
  if (name == "auto") return InnerMethod::kAuto;
  throw UsageError("--inner-method: expected weiszfeld, subgradient or auto, got '" + name + "'");
}

DcaConfig dca_config(const Overrides& o) {
  DcaConfig cfg;
  cfg.lambda = o.real("lambda", cfg.lambda);
  if (!(cfg.lambda > 0.0)) throw UsageError("--lambda: must be positive");
  cfg.max_outer = o.integer("max-outer", cfg.max_outer, 1);
  cfg.outer_step_tol = o.real("outer-tol", cfg.outer_step_tol);
  if (const auto* m = o.find("inner-method")) cfg.inner.method = parse_inner_method(*m);
  cfg.inner.max_iters = o.integer("inner-iters", cfg.inner.max_iters, 1);
  cfg.inner.step_tol = o.real("inner-tol", cfg.inner.step_tol);
  if (!(cfg.inner.step_tol > 0.0)) throw UsageError("--inner-tol: must be positive");
  cfg.record_trajectory = o.find("trajectory") != nullptr;
  return cfg;
}

json config_json(const DcaConfig& cfg, int starts) {
  return {{"lambda", cfg.lambda},
          {"max_outer", cfg.max_outer},
          {"outer_tol", cfg.outer_step_tol},
          {"inner_method", to_string(cfg.inner.method)},
          {"inner_iters", cfg.inner.max_iters},
          {"inner_tol", cfg.inner.step_tol},
          {"starts", starts}};
}

json prng_json(std::uint64_t seed) {
  return {{"family", CounterRng::kFamily}, {"seed", seed}};
}

json warnings_json(const std::vector<Diagnostic>& warnings) {
  json out = json::array();
  for (const auto& w : warnings) out.push_back(to_json(w));
  return out;
}

void require_dimension(const Vector& x, int n, std::string_view what) {
  if (x.size() != n) {
    throw UsageError("--" + std::string(what) + ": expected " + std::to_string(n) +
                     " coordinates, got " + std::to_string(x.size()));
  }
}

json run_solve(const RunManifest& m, const LoadedInstance& loaded, const Overrides& o) {
  const ProblemInstance& inst = loaded.instance;
  const DcaConfig cfg = dca_config(o);
  const int starts = o.integer("starts", 1, 1);
  const auto x0 = o.vector("x0");
  if (x0) {
    require_dimension(*x0, inst.dimension, "x0");
    if (!contains(inst.constraint, *x0)) throw UsageError("--x0: point is not in the constraint set");
  }
  const MultiStartReport multi = dca_multistart(inst, cfg, starts, m.seed, x0);

  json report = to_json(multi.best);
  report["command"] = "solve";
  report["prng"] = prng_json(m.seed);
  report["config"] = config_json(cfg, starts);
  report["best_start"] = multi.best_index;
  report["warnings"] = warnings_json(loaded.warnings);
  if (o.flag("existence")) report["existence"] = to_json(existence_classify(inst));

  if (const auto* path = o.find("trajectory")) {
    std::ofstream traj(*path);
    if (!traj) throw Error("cannot write " + *path);
    write_trajectory_csv(traj, *multi.best.trajectory);
  }
  return report;
}

json run_existence(const LoadedInstance& loaded) {
  json report = to_json(existence_classify(loaded.instance));
  report["command"] = "existence";
  report["warnings"] = warnings_json(loaded.warnings);
  return report;
}

json run_classify(const LoadedInstance& loaded, const Overrides& o) {
  const auto special = as_special(loaded.instance);
  if (!special) throw UsageError("classify needs exactly one attraction and one repulsion");
  validate(*special);
  const auto x = o.vector("x");
  if (!x) throw UsageError("classify needs --x");
  require_dimension(*x, loaded.instance.dimension, "x");

  const PointClass pc = classify_point(*special, *x);
  json report = {{"command", "classify"},
                 {"x", vector_to_json(*x)},
                 {"stationary", to_string(pc.stationary)},
                 {"critical", to_string(pc.critical)},
                 {"warnings", warnings_json(loaded.warnings)}};
  report["witness"] = pc.witness ? vector_to_json(*pc.witness) : json(nullptr);
  if (is_bounded(special->omega)) {
    const SpecialSolution sol = solve_special(*special);
    json points = json::array();
    for (const auto& p : sol.points) points.push_back(vector_to_json(p));
    json rays = json::array();
    for (const auto& r : sol.rays) {
      rays.push_back({{"base", vector_to_json(r.base)}, {"direction", vector_to_json(r.direction)}});
    }
    report["solutions"] = {{"mode", to_string(sol.mode)},
                           {"points", points},
                           {"rays", rays},
                           {"exact", sol.exact},
                           {"unique", to_string(uniqueness_check(*special))}};
  }
  return report;
}

// "lo..hi@m"
GridSpec parse_grid(const std::string& text, int n) {
  const auto dots = text.find("..");
  const auto at = text.find('@');
  if (dots == std::string::npos || at == std::string::npos || at < dots) {
    throw UsageError("--grid: expected lo..hi@m, got '" + text + "'");
  }
  const double lo = parse_real(std::string_view(text).substr(0, dots), "grid");
  const double hi = parse_real(std::string_view(text).substr(dots + 2, at - dots - 2), "grid");
  const long long m = parse_integer(std::string_view(text).substr(at + 1), "grid");
  if (!(lo < hi) || m < 2 || m > 100'000'000) {
    throw UsageError("--grid: need lo < hi and at least 2 points per axis");
  }
  return {Vector::Constant(n, lo), Vector::Constant(n, hi), static_cast<int>(m)};
}

json run_oracle(const LoadedInstance& loaded, const Overrides& o) {
  const auto* grid_text = o.find("grid");
  if (!grid_text) throw UsageError("oracle needs --grid lo..hi@m");
  const GridSpec grid = parse_grid(*grid_text, loaded.instance.dimension);
  const OracleResult r = grid_search(loaded.instance, grid);
  return {{"command", "oracle"},
          {"best_x", vector_to_json(r.best_x)},
          {"best_value", r.best_value},
          {"evaluations", r.evaluations},
          {"spacing", r.spacing},
          {"grid", *grid_text},
          {"warnings", warnings_json(loaded.warnings)}};
}

json run_gen(const RunManifest& m, const Overrides& o) {
  const auto* a_path = o.find("attractions");
  const auto* b_path = o.find("repulsions");
  if (!a_path || !b_path) throw UsageError("gen needs --attractions and --repulsions");
  if (m.instance_path.empty()) throw UsageError("gen needs --instance for the output file");
  PointShape shape;
  try {
    shape = PointShape::parse(o.find("shape") ? *o.find("shape") : "point");
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--shape: ") + e.what());
  }
  const bool synthesize = o.flag("synthesize");
  if (synthesize) {
    const CityGroups cities = synthesize_cities(m.seed);
    write_points_csv(*a_path, cities.a, "lat,long");
    write_points_csv(*b_path, cities.b, "lat,long");
  }

  ProblemInstance inst;
  inst.attractions = load_points_csv(*a_path, SetRole::kAttraction, shape,
                                     o.real("attraction-weight", 1.0));
  inst.repulsions = load_points_csv(*b_path, SetRole::kRepulsion, shape,
                                    o.real("repulsion-weight", 1.0));
  inst.dimension = static_cast<int>(inst.attractions.front().set.dimension());
  if (const auto ball = o.vector("ball")) {
    if (ball->size() != inst.dimension + 1) {
      throw UsageError("--ball: expected " + std::to_string(inst.dimension) +
                       " center coordinates and a radius");
    }
    const double radius = (*ball)[inst.dimension];
    if (!(radius > 0.0)) throw UsageError("--ball: radius must be positive");
    inst.constraint = ConvexSet::ball(ball->head(inst.dimension), radius);
  } else {
    inst.constraint = ConvexSet::whole_space(inst.dimension);
  }
  const auto diagnostics = validate_instance(inst);
  if (has_errors(diagnostics)) throw ValidationError(diagnostics);
  write_instance(m.instance_path, inst);

  std::string shape_name = "point";
  if (shape.kind == PointShape::Kind::kSquare) {
    std::ostringstream s;
    s << "square:" << shape.half_side;
    shape_name = s.str();
  }
  return {{"command", "gen"},
          {"instance", m.instance_path},
          {"attractions", inst.attractions.size()},
          {"repulsions", inst.repulsions.size()},
          {"shape", shape_name},
          {"synthesized", synthesize},
          {"prng", prng_json(m.seed)},
          {"weiszfeld_applicable", weiszfeld_applicable(inst)},
          {"warnings", warnings_json(diagnostics)}};
}

json dispatch(const RunManifest& m) {
  const Overrides o(m.overrides);
  if (m.command == Command::kGen) return run_gen(m, o);
  if (m.instance_path.empty()) throw UsageError("an instance file is required");
  const LoadedInstance loaded = load_instance(m.instance_path);
  switch (m.command) {
    case Command::kSolve: return run_solve(m, loaded, o);
    case Command::kExistence: return run_existence(loaded);
    case Command::kClassify: return run_classify(loaded, o);
    case Command::kOracle: return run_oracle(loaded, o);
    case Command::kGen: break;
  }
  throw UsageError("unknown command");
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::kSolve: return "solve";
    case Command::kExistence: return "existence";
    case Command::kClassify: return "classify";
    case Command::kOracle: return "oracle";
    case Command::kGen: return "gen";
  }
  return "solve";
}

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::kSolve, Command::kExistence, Command::kClassify, Command::kOracle,
                    Command::kGen}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

int run(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  json report;
  try {
    report = dispatch(manifest);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const PreconditionViolated& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolverError;
  }

  const std::string text = report.dump(2) + "\n";
  if (manifest.output_path.empty()) {
    out << text;
  } else {
    std::ofstream file(manifest.output_path, std::ios::binary);
    if (!(file << text)) {
      err << "error: cannot write " << manifest.output_path << '\n';
      return kExitSolverError;
    }
  }
  return kExitOk;
}

std::variant<RunManifest, int> parse_arguments(int argc, const char* const* argv,
                                               std::ostream& out, std::ostream& err) {
  CLI::App app{"Location problems with attractive and repulsive convex sets"};
  app.require_subcommand(1);

  RunManifest manifest;
  std::map<std::string, std::string> values;
  std::vector<std::pair<CLI::App*, Command>> commands;

  auto common = [&](CLI::App* sub, Command command, bool takes_instance) {
    commands.emplace_back(sub, command);
    if (takes_instance) {
      sub->add_option("instance", manifest.instance_path, "Instance JSON file")->required();
    }
    sub->add_option("-o,--output", manifest.output_path, "Report file (default: stdout)");
    sub->add_option("--seed", manifest.seed, "Seed for every random draw");
  };
  auto value = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option_function<std::string>(
        "--" + name, [&values, name](const std::string& v) { values[name] = v; }, help);
  };
  auto flag = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_flag_function(
        "--" + name, [&values, name](std::int64_t) { values[name] = "true"; }, help);
  };

  CLI::App* solve = app.add_subcommand("solve", "Run DCA from one or more starts");
  common(solve, Command::kSolve, true);
  value(solve, "lambda", "Quadratic shift of the convex split (default 1)");
  value(solve, "max-outer", "Outer iteration cap (default 1000)");
  value(solve, "outer-tol", "Outer step tolerance (default 1e-8)");
  value(solve, "inner-method", "weiszfeld, subgradient or auto (default auto)");
  value(solve, "inner-iters", "Inner iteration cap (default 1000)");
  value(solve, "inner-tol", "Inner step tolerance (default 1e-10)");
  value(solve, "starts", "Number of starts (default 1)");
  value(solve, "x0", "First start, comma separated");
  value(solve, "trajectory", "Write the best run's trajectory CSV here");
  flag(solve, "existence", "Include the existence report");

  CLI::App* existence = app.add_subcommand("existence", "Apply the existence rules");
  common(existence, Command::kExistence, true);

  CLI::App* classify = app.add_subcommand("classify", "Classify a point of a one-to-one instance");
  common(classify, Command::kClassify, true);
  value(classify, "x", "Point to classify, comma separated");

  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force grid minimum");
  common(oracle, Command::kOracle, true);
  value(oracle, "grid", "Per-axis range and count, lo..hi@m");

  CLI::App* gen = app.add_subcommand("gen", "Build an instance from point CSV files");
  common(gen, Command::kGen, false);
  gen->add_option("--instance", manifest.instance_path, "Instance file to write")->required();
  value(gen, "attractions", "CSV of attraction points");
  value(gen, "repulsions", "CSV of repulsion points");
  value(gen, "shape", "point or square:<half side> (default point)");
  value(gen, "ball", "Constraint ball as center coordinates then radius");
  value(gen, "attraction-weight", "Weight of every attraction (default 1)");
  value(gen, "repulsion-weight", "Weight of every repulsion (default 1)");
  flag(gen, "synthesize", "Write seeded synthetic city groups to the CSV paths first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) manifest.command = command;
  }
  manifest.overrides = std::move(values);
  return manifest;
}

CityGroups synthesize_cities(std::uint64_t seed, int a_count, int b_count) {
  CounterRng a_rng(seed, 0);
  CounterRng b_rng(seed, 1);
  auto point = [](CounterRng& rng, double lat_lo, double lat_hi, double lon_lo, double lon_hi) {
    Vector p(2);
    p << rng.uniform(lat_lo, lat_hi), rng.uniform(lon_lo, lon_hi);
    // Two decimals, like published city tables.
    return Vector((p * 100.0).array().round() / 100.0);
  };
  CityGroups out;
  for (int i = 0; i < a_count; ++i) out.a.push_back(point(a_rng, 25.0, 49.0, -124.0, -67.0));
  const int pacific = b_count / 4;
  for (int j = 0; j < b_count; ++j) {
    out.b.push_back(j < pacific ? point(b_rng, 19.0, 22.5, -160.5, -154.5)
                                : point(b_rng, 55.0, 71.0, -168.0, -130.0));
  }
  return out;
}

}  // namespace dcloc::cli
