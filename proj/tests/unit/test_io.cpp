#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcloc/io.hpp"
#include "fixtures.hpp"
#include "random_instances.hpp"

namespace dcloc {
namespace {

using testgen::fixture_path;
using testgen::vec;

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() /
                    ("dcloc_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                     "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::filesystem::path file(const std::string& name, const std::string& content = {}) const {
    const auto p = path_ / name;
    if (!content.empty()) std::ofstream(p) << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

TEST(LoadInstance, StripFixture) {
  const auto loaded = load_instance(fixture_path("strip_between_halfplanes.json"));
  EXPECT_EQ(loaded.instance.dimension, 2);
  EXPECT_EQ(loaded.instance.attractions.size(), 1u);
  EXPECT_EQ(loaded.instance.repulsions.size(), 2u);
  const auto* line = loaded.instance.attractions[0].set.as<AxisBox>();
  ASSERT_NE(line, nullptr);
  EXPECT_EQ(line->lower[0], -kInf);
  EXPECT_EQ(line->upper[0], kInf);
  // The line crosses the constraint ball.
  ASSERT_EQ(loaded.warnings.size(), 1u);
  EXPECT_EQ(loaded.warnings[0].code, Diagnostic::Code::kAttractionMeetsConstraint);
}

TEST(LoadInstance, NegativeWeightRejected) {
  try {
    load_instance(fixture_path("invalid_negative_weight.json"));
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_FALSE(e.diagnostics.empty());
    EXPECT_EQ(e.diagnostics[0].code, Diagnostic::Code::kNonPositiveWeight);
  }
}

TEST(LoadInstance, MixedDimensionsRejected) {
  try {
    load_instance(fixture_path("invalid_mixed_dimensions.json"));
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_FALSE(e.diagnostics.empty());
    EXPECT_EQ(e.diagnostics[0].code, Diagnostic::Code::kDimensionMismatch);
  }
}

TEST(ParseInstance, SyntaxErrorReportsLine) {
  try {
    parse_instance("{\n  \"dimension\": 2,\n  \"attractions\": [\n}\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 4u);
  }
}

TEST(ParseInstance, SchemaErrorReportsField) {
  try {
    parse_instance(R"({"dimension": 1, "attractions": [{"shape": {"kind": "ball", "center": [0]}, "weight": 1}]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field, "attractions[0].shape.radius");
  }
  try {
    parse_instance(R"({"dimension": 1, "attractions": [{"shape": {"kind": "cone"}, "weight": 1}]})");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field, "attractions[0].shape.kind");
  }
}

TEST(ParseInstance, InvalidShapeIsValidationError) {
  EXPECT_THROW(parse_instance(R"({"dimension": 1, "attractions": [{"shape": {"kind": "ball", "center": [0], "radius": -1}, "weight": 1}]})"),
               ValidationError);
}

TEST(ParseInstance, DefaultsToWholeSpace) {
  const auto loaded = parse_instance(R"({"dimension": 3, "attractions": [{"shape": {"kind": "point", "point": [0, 0, 1]}, "weight": 1}]})");
  EXPECT_EQ(loaded.instance.constraint, ConvexSet::whole_space(3));
  EXPECT_TRUE(loaded.instance.repulsions.empty());
}

TEST(InstanceRoundTrip, RandomInstancesExact) {
  CounterRng rng(71);
  for (int t = 0; t < 100; ++t) {
    testgen::InstanceOptions opts;
    opts.dimension = 1 + t % 3;
    opts.bounded_sets = false;
    opts.bounded_constraint = t % 2 == 0;
    opts.separated = false;
    const auto inst = testgen::random_instance(rng, opts);
    const auto back = parse_instance(dump_instance(inst)).instance;
    ASSERT_EQ(back.dimension, inst.dimension);
    ASSERT_EQ(back.attractions.size(), inst.attractions.size());
    ASSERT_EQ(back.repulsions.size(), inst.repulsions.size());
    for (std::size_t i = 0; i < inst.attractions.size(); ++i) {
      EXPECT_EQ(back.attractions[i].set, inst.attractions[i].set);
      EXPECT_EQ(back.attractions[i].weight, inst.attractions[i].weight);
    }
    for (std::size_t j = 0; j < inst.repulsions.size(); ++j) {
      EXPECT_EQ(back.repulsions[j].set, inst.repulsions[j].set);
      EXPECT_EQ(back.repulsions[j].weight, inst.repulsions[j].weight);
    }
    EXPECT_EQ(back.constraint, inst.constraint);
    EXPECT_EQ(dump_instance(back), dump_instance(inst));
  }
}

TEST(InstanceRoundTrip, ThroughFile) {
  TempDir dir;
  const auto inst = testgen::load_fixture("unbounded_ray_1d.json");
  write_instance(dir.file("inst.json"), inst);
  EXPECT_EQ(dump_instance(load_instance(dir.file("inst.json")).instance), dump_instance(inst));
}

TEST(PointsCsv, TwoPoints) {
  TempDir dir;
  const auto sets = load_points_csv(dir.file("p.csv", "1,2\n3,4\n"), SetRole::kAttraction,
                                    PointShape::point(), 1.0);
  ASSERT_EQ(sets.size(), 2u);
  EXPECT_EQ(sets[0].set, ConvexSet::singleton(vec({1, 2})));
  EXPECT_EQ(sets[1].set, ConvexSet::singleton(vec({3, 4})));
  EXPECT_EQ(sets[1].weight, 1.0);
}

TEST(PointsCsv, SquaresOfHalfSideFive) {
  TempDir dir;
  const auto sets = load_points_csv(dir.file("p.csv", "1,2\n3,4\n"), SetRole::kRepulsion,
                                    PointShape::square(5), 1.0);
  ASSERT_EQ(sets.size(), 2u);
  EXPECT_EQ(sets[0].set, ConvexSet::box(vec({-4, -3}), vec({6, 7})));
  EXPECT_EQ(sets[1].set, ConvexSet::box(vec({-2, -1}), vec({8, 9})));
}

TEST(PointsCsv, EmptyFileIsParseError) {
  TempDir dir;
  std::ofstream(dir.file("empty.csv")).close();
  EXPECT_THROW(load_points_csv(dir.file("empty.csv"), SetRole::kAttraction, PointShape::point(), 1.0),
               ParseError);
  EXPECT_THROW(read_points_csv(dir.file("header.csv", "lat,long\n")), ParseError);
}

TEST(PointsCsv, HeaderSkippedAndBadRowNumbered) {
  std::istringstream good("lat,long\n1, 2\n\n3,4\n");
  EXPECT_EQ(parse_points_csv(good).size(), 2u);
  std::istringstream bad("lat,long\n1,2\n3,x\n");
  try {
    parse_points_csv(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3u);
  }
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(parse_points_csv(ragged), ParseError);
}

TEST(PointsCsv, WriteReadRoundTrip) {
  TempDir dir;
  const std::vector<Vector> pts = {vec({0.1, -123.456789012345}), vec({1e-300, 7})};
  write_points_csv(dir.file("w.csv"), pts, "lat,long");
  EXPECT_EQ(read_points_csv(dir.file("w.csv")), pts);
}

TEST(PointShapeParse, Forms) {
  EXPECT_EQ(PointShape::parse("point").kind, PointShape::Kind::kPoint);
  const auto sq = PointShape::parse("square:5");
  EXPECT_EQ(sq.kind, PointShape::Kind::kSquare);
  EXPECT_EQ(sq.half_side, 5.0);
  EXPECT_THROW(PointShape::parse("square:-1"), std::invalid_argument);
  EXPECT_THROW(PointShape::parse("disc"), std::invalid_argument);
}

TEST(TrajectoryCsv, Columns) {
  std::vector<TrajectoryPoint> traj(2);
  traj[0] = {0, vec({1, 2}), vec({0, 0}), 3.0, 0.0};
  traj[1] = {1, vec({1.5, 2}), vec({0, 0}), 2.5, 0.5};
  std::ostringstream out;
  write_trajectory_csv(out, traj);
  EXPECT_EQ(out.str(), "k,x_1,x_2,f,step_norm\n0,1,2,3,0\n1,1.5,2,2.5,0.5\n");
}

TEST(ReportJson, SolveReportFields) {
  SolveReport r;
  r.final_x = vec({1, 2});
  r.final_value = -2;
  r.outer_iterations = 3;
  r.termination = Termination::kStepTol;
  r.inner_methods_used = {InnerMethod::kWeiszfeld, InnerMethod::kSubgradient, InnerMethod::kWeiszfeld};
  const auto j = to_json(r);
  EXPECT_EQ(j["termination"], "step_tol");
  EXPECT_EQ(j["inner_methods_used"], nlohmann::json({"weiszfeld", "subgradient"}));
  EXPECT_EQ(j["final_x"], nlohmann::json({1.0, 2.0}));
}

}  // namespace
}  // namespace dcloc
