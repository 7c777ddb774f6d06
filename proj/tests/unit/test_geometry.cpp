#include <gtest/gtest.h>

#include <cmath>

#include "dcloc/errors.hpp"
#include "dcloc/geometry.hpp"
#include "fixtures.hpp"
#include "random_instances.hpp"

namespace dcloc {
namespace {

using testgen::vec;

TEST(Contains, BoundaryPointOfBall) {
  EXPECT_TRUE(contains(ConvexSet::ball(vec({0, 0}), 1), vec({1, 0}), 0.0));
}

TEST(Contains, HorizontalLine) {
  const auto line = ConvexSet::box(vec({-kInf, 0}), vec({kInf, 0}));
  EXPECT_TRUE(contains(line, vec({3, 0})));
}

TEST(Contains, DistinctPoint) {
  EXPECT_FALSE(contains(ConvexSet::singleton(vec({1, 0})), vec({0, 0}), 0.0));
}

TEST(Contains, DimensionMismatchThrows) {
  EXPECT_THROW(contains(ConvexSet::singleton(vec({1, 0})), vec({0}), 0.0), DimensionMismatch);
}

TEST(Project, BallScalesRadially) {
  const Vector p = project(ConvexSet::ball(vec({0, 0}), 1), vec({3, 4}));
  EXPECT_NEAR(p[0], 0.6, 1e-15);
  EXPECT_NEAR(p[1], 0.8, 1e-15);
}

TEST(Project, BoxClamps) {
  EXPECT_EQ(project(ConvexSet::box(vec({0, 0}), vec({1, 1})), vec({2, 5})), vec({1, 1}));
}

TEST(Project, LowerHalfplane) {
  EXPECT_EQ(project(ConvexSet::halfspace(vec({0, 1}), -1), vec({3, 0})), vec({3, -1}));
}

TEST(Distance, PointToItself) {
  EXPECT_EQ(distance(ConvexSet::singleton(vec({1, 0})), vec({1, 0})), 0.0);
}

TEST(Distance, InsideHalfline) {
  EXPECT_EQ(distance(ConvexSet::box(vec({-kInf}), vec({0})), vec({-10})), 0.0);
}

TEST(Distance, PointOnLine) {
  EXPECT_EQ(distance(ConvexSet::singleton(vec({1})), vec({-10})), 11.0);
}

TEST(DistanceSubgradient, RadialDirectionOutsideBall) {
  const auto s = distance_subgradient(ConvexSet::ball(vec({0, 0}), 1), vec({2, 0}), 1e-9);
  ASSERT_TRUE(s.exterior());
  EXPECT_NEAR((s.gradient - vec({1, 0})).norm(), 0.0, 1e-15);
}

TEST(DistanceSubgradient, AwayFromPoint) {
  const auto s = distance_subgradient(ConvexSet::singleton(vec({1, 0})), vec({-2, 0}), 1e-9);
  ASSERT_TRUE(s.exterior());
  EXPECT_NEAR((s.gradient - vec({-1, 0})).norm(), 0.0, 1e-15);
  EXPECT_NEAR(s.gradient.norm(), 1.0, 1e-15);
}

TEST(DistanceSubgradient, OnSegmentGivesDescriptor) {
  const auto seg = ConvexSet::box(vec({0, -2}), vec({0, 2}));
  const auto s = distance_subgradient(seg, vec({0, 1}), 1e-9);
  EXPECT_FALSE(s.exterior());
  EXPECT_EQ(s.set, &seg);
}

TEST(NormalCone, UpperEndOfSegment) {
  const auto seg = ConvexSet::box(vec({0, -2}), vec({0, 2}));
  EXPECT_TRUE(normal_cone_contains(seg, vec({0, 2}), vec({0, 1}), 1e-9));
  // Brute-force check over sampled points of the segment.
  for (double t = -2; t <= 2; t += 0.25) EXPECT_LE(vec({0, 1}).dot(vec({0, t}) - vec({0, 2})), 0.0);
}

TEST(NormalCone, MidpointOfSegmentRejectsAxisDirection) {
  const auto seg = ConvexSet::box(vec({0, -2}), vec({0, 2}));
  EXPECT_FALSE(normal_cone_contains(seg, vec({0, 0}), vec({0, 1}), 1e-9));
  EXPECT_GT(vec({0, 1}).dot(vec({0, 1}) - vec({0, 0})), 0.0);
}

TEST(NormalCone, ZeroVectorAlwaysInside) {
  const Vector zero = Vector::Zero(2);
  EXPECT_TRUE(normal_cone_contains(ConvexSet::ball(vec({0, 0}), 1), vec({0.2, 0.1}), zero, 1e-9));
  EXPECT_TRUE(normal_cone_contains(ConvexSet::halfspace(vec({1, 0}), 0), vec({-1, 0}), zero, 1e-9));
  EXPECT_TRUE(normal_cone_contains(ConvexSet::singleton(vec({1, 1})), vec({1, 1}), zero, 1e-9));
}

TEST(NormalCone, OutsidePointIsPreconditionViolation) {
  EXPECT_THROW(normal_cone_contains(ConvexSet::ball(vec({0, 0}), 1), vec({3, 0}), vec({1, 0}), 1e-9),
               PreconditionViolated);
}

TEST(NormalCone, BallBoundaryOutwardOnly) {
  const auto b = ConvexSet::ball(vec({0, 0}), 1);
  EXPECT_TRUE(normal_cone_contains(b, vec({1, 0}), vec({2, 0}), 1e-9));
  EXPECT_FALSE(normal_cone_contains(b, vec({1, 0}), vec({1, 1}), 1e-9));
  EXPECT_FALSE(normal_cone_contains(b, vec({0.5, 0}), vec({1, 0}), 1e-9));
}

TEST(BoundingRadius, Shapes) {
  EXPECT_EQ(*bounding_radius(ConvexSet::singleton(vec({3, 4}))), 5.0);
  EXPECT_EQ(*bounding_radius(ConvexSet::ball(vec({1, 0}), 2)), 3.0);
  EXPECT_FALSE(bounding_radius(ConvexSet::halfspace(vec({1, 1}), 0)).has_value());
}

TEST(BoxVertices, Segment) {
  const auto v = box_vertices(ConvexSet::box(vec({0, -2}), vec({0, 2})));
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0], vec({0, -2}));
  EXPECT_EQ(v[1], vec({0, 2}));
}

TEST(BoxVertices, UnitSquareAndPoint) {
  EXPECT_EQ(box_vertices(ConvexSet::box(vec({0, 0}), vec({1, 1}))).size(), 4u);
  const auto p = box_vertices(ConvexSet::box(vec({1, 1}), vec({1, 1})));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], vec({1, 1}));
}

TEST(BoxVertices, RejectsUnboundedAndNonBox) {
  EXPECT_ANY_THROW(box_vertices(ConvexSet::box(vec({0, -kInf}), vec({1, 0}))));
  EXPECT_ANY_THROW(box_vertices(ConvexSet::ball(vec({0, 0}), 1)));
}

TEST(Factories, RejectInvalidShapes) {
  EXPECT_THROW(ConvexSet::ball(vec({0, 0}), 0.0), std::invalid_argument);
  EXPECT_THROW(ConvexSet::box(vec({1, 0}), vec({0, 0})), std::invalid_argument);
  EXPECT_THROW(ConvexSet::halfspace(vec({0, 0}), 1.0), std::invalid_argument);
  EXPECT_THROW(ConvexSet::singleton(vec({std::nan(""), 0})), std::invalid_argument);
}

TEST(Subset, DecidedPairs) {
  const auto unit = ConvexSet::ball(vec({0, 0}), 1);
  EXPECT_TRUE(is_subset(ConvexSet::singleton(vec({0.5, 0})), unit));
  EXPECT_TRUE(is_subset(ConvexSet::ball(vec({0.5, 0}), 0.5), unit));
  EXPECT_FALSE(is_subset(ConvexSet::ball(vec({0.5, 0}), 0.6), unit));
  EXPECT_TRUE(is_subset(ConvexSet::box(vec({-0.5, -0.5}), vec({0.5, 0.5})), unit));
  EXPECT_FALSE(is_subset(ConvexSet::box(vec({-0.8, -0.8}), vec({0.8, 0.8})), unit));
  EXPECT_TRUE(is_subset(unit, ConvexSet::halfspace(vec({1, 0}), 1)));
  EXPECT_FALSE(is_subset(ConvexSet::halfspace(vec({1, 0}), 1), unit));
  EXPECT_TRUE(is_subset(ConvexSet::halfspace(vec({1, 0}), 0), ConvexSet::halfspace(vec({2, 0}), 1)));
}

TEST(Intersects, DecidedPairs) {
  const auto unit = ConvexSet::ball(vec({0, 0}), 1);
  EXPECT_TRUE(intersects(unit, ConvexSet::ball(vec({2, 0}), 1)));
  EXPECT_FALSE(intersects(unit, ConvexSet::ball(vec({2.1, 0}), 1)));
  EXPECT_TRUE(intersects(ConvexSet::box(vec({-kInf, 0}), vec({kInf, 0})), unit));
  EXPECT_FALSE(intersects(ConvexSet::halfspace(vec({0, 1}), -1.5), unit));
  EXPECT_FALSE(intersects(ConvexSet::halfspace(vec({0, 1}), -1), ConvexSet::halfspace(vec({0, -1}), -1)));
}

// Properties over random sets.

class GeometryProperty : public ::testing::TestWithParam<int> {};

TEST_P(GeometryProperty, ProjectionNonexpansive) {
  CounterRng rng(11, static_cast<std::uint64_t>(GetParam()));
  const int n = 1 + GetParam() % 3;
  for (int t = 0; t < 200; ++t) {
    const ConvexSet q = testgen::random_set(rng, n, 5.0);
    const Vector x = testgen::uniform_vector(rng, n, -10, 10);
    const Vector y = testgen::uniform_vector(rng, n, -10, 10);
    EXPECT_LE((project(q, x) - project(q, y)).norm(), (x - y).norm() * (1 + 1e-12) + 1e-12);
  }
}

TEST_P(GeometryProperty, DistanceIsOneLipschitz) {
  CounterRng rng(12, static_cast<std::uint64_t>(GetParam()));
  const int n = 1 + GetParam() % 3;
  for (int t = 0; t < 200; ++t) {
    const ConvexSet q = testgen::random_set(rng, n, 5.0);
    const Vector x = testgen::uniform_vector(rng, n, -10, 10);
    const Vector y = testgen::uniform_vector(rng, n, -10, 10);
    EXPECT_LE(std::abs(distance(q, x) - distance(q, y)), (x - y).norm() + 1e-12);
  }
}

TEST_P(GeometryProperty, VariationalInequality) {
  CounterRng rng(13, static_cast<std::uint64_t>(GetParam()));
  const int n = 1 + GetParam() % 3;
  for (int t = 0; t < 100; ++t) {
    const ConvexSet q = testgen::random_set(rng, n, 5.0);
    const Vector x = testgen::uniform_vector(rng, n, -10, 10);
    const Vector w = project(q, x);
    EXPECT_TRUE(contains(q, w));
    for (int s = 0; s < 10; ++s) {
      const Vector p = testgen::sample_in(rng, q, 10.0);
      EXPECT_LE((x - w).dot(p - w), 1e-12 * (1 + x.squaredNorm() + p.squaredNorm()));
    }
  }
}

TEST_P(GeometryProperty, ExteriorGradientIsUnitSubgradient) {
  CounterRng rng(14, static_cast<std::uint64_t>(GetParam()));
  const int n = 1 + GetParam() % 3;
  for (int t = 0; t < 100; ++t) {
    const ConvexSet q = testgen::random_set(rng, n, 5.0);
    const Vector x = testgen::uniform_vector(rng, n, -10, 10);
    const auto sub = distance_subgradient(q, x, default_tolerance(x));
    if (!sub.exterior()) continue;
    EXPECT_NEAR(sub.gradient.norm(), 1.0, 1e-12);
    const double dx = distance(q, x);
    for (int s = 0; s < 10; ++s) {
      const Vector y = testgen::uniform_vector(rng, n, -10, 10);
      EXPECT_GE(distance(q, y), dx + sub.gradient.dot(y - x) - 1e-12 * (1 + y.norm()));
    }
  }
}

TEST_P(GeometryProperty, NormalConeAgreesWithSampling) {
  CounterRng rng(15, static_cast<std::uint64_t>(GetParam()));
  const int n = 1 + GetParam() % 3;
  for (int t = 0; t < 100; ++t) {
    const ConvexSet q = testgen::random_bounded_set(rng, n, 3.0);
    const Vector x = project(q, testgen::uniform_vector(rng, n, -6, 6));
    const Vector outward = testgen::uniform_vector(rng, n, -6, 6) - x;
    // The residual of a projection is always normal at the projected point.
    const Vector z = testgen::uniform_vector(rng, n, -6, 6);
    const Vector pz = project(q, z);
    EXPECT_TRUE(normal_cone_contains(q, pz, z - pz, 1e-9));
    if (normal_cone_contains(q, x, outward, 1e-9)) {
      for (int s = 0; s < 20; ++s) {
        const Vector p = testgen::sample_in(rng, q, 3.0);
        EXPECT_LE(outward.dot(p - x), 1e-7 * (1 + outward.norm()));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Streams, GeometryProperty, ::testing::Range(0, 6));

}  // namespace
}  // namespace dcloc
