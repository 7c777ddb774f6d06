#pragma once

// Closed convex sets with closed-form projections: points, Euclidean balls,
// axis-aligned boxes with optional infinite bounds, and halfspaces.
//
// Every routine here is a pure function of its arguments. Dimension
// mismatches raise DimensionMismatch.

#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace dcloc {

using Vector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Scale-aware membership tolerance: 1e-9 * (1 + |x|).
double default_tolerance(const Vector& x);

struct Singleton {
  Vector point;
};

struct Ball {
  Vector center;
  double radius;
};

/// {x : lower <= x <= upper}; bounds may be infinite and may coincide.
struct AxisBox {
  Vector lower;
  Vector upper;
};

/// {x : <normal, x> <= offset}.
struct Halfspace {
  Vector normal;
  double offset;
};

class ConvexSet {
 public:
  using Shape = std::variant<Singleton, Ball, AxisBox, Halfspace>;
  enum class Kind { kSingleton, kBall, kBox, kHalfspace };

  // Factories validate the shape invariants and throw std::invalid_argument.
  static ConvexSet singleton(Vector point);
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet box(Vector lower, Vector upper);
  static ConvexSet halfspace(Vector normal, double offset);
  static ConvexSet whole_space(int dimension);
  /// Axis-aligned cube [c - h, c + h] in every coordinate.
  static ConvexSet square(const Vector& center, double half_side);

  int dimension() const;
  Kind kind() const { return static_cast<Kind>(shape_.index()); }
  const Shape& shape() const { return shape_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&shape_);
  }

  /// Exact (bitwise-value) equality of kind and parameters.
  friend bool operator==(const ConvexSet& a, const ConvexSet& b);

 private:
  explicit ConvexSet(Shape shape) : shape_(std::move(shape)) {}

  Shape shape_;
};

/// Element of the subdifferential of d(.;Q). Outside Q the gradient is unique
/// and has unit norm; on Q the subdifferential is N(x;Q) intersected with the
/// unit ball, which is described by `set` rather than enumerated.
struct DistanceSubgradient {
  enum class Kind { kExterior, kOnSet };

  Kind kind;
  Vector gradient;  // empty unless kExterior
  const ConvexSet* set = nullptr;

  bool exterior() const { return kind == Kind::kExterior; }
};

bool contains(const ConvexSet& q, const Vector& x, double tol);
bool contains(const ConvexSet& q, const Vector& x);

Vector project(const ConvexSet& q, const Vector& x);

double distance(const ConvexSet& q, const Vector& x);

DistanceSubgradient distance_subgradient(const ConvexSet& q, const Vector& x,
                                         double tol);

/// Tests <v, p - x> <= tol * |v| for all p in q, in closed form per shape.
/// Requires contains(q, x, tol); throws PreconditionViolated otherwise.
bool normal_cone_contains(const ConvexSet& q, const Vector& x, const Vector& v,
                          double tol);

/// Radius r with q inside B(0; r), or nullopt when q is unbounded.
std::optional<double> bounding_radius(const ConvexSet& q);

bool is_bounded(const ConvexSet& q);

/// Corner points of a bounded box; degenerate coordinates are not doubled.
std::vector<Vector> box_vertices(const ConvexSet& q);

/// Support function sup{<v, p> : p in q}; +inf when unbounded along v.
double support(const ConvexSet& q, const Vector& v);

/// A fixed point of q: the point, the center, the clamped box midpoint, or
/// the projection of the origin.
Vector reference_point(const ConvexSet& q);

/// True when q contains exactly one point (points and fully degenerate boxes).
bool is_singleton(const ConvexSet& q);

/// Radius of the largest ball around x contained in q (0 on the boundary or
/// for sets without interior); negative distance when x lies outside.
double interior_depth(const ConvexSet& q, const Vector& x);

/// a is a subset of b. Decided exactly for every pair of supported shapes.
bool is_subset(const ConvexSet& a, const ConvexSet& b, double tol = 1e-9);

/// a and b share a point. Decided exactly for every pair of supported shapes.
bool intersects(const ConvexSet& a, const ConvexSet& b, double tol = 1e-9);

/// Axis-aligned bounding box of a bounded set; nullopt otherwise.
std::optional<AxisBox> bounding_box(const ConvexSet& q);

}  // namespace dcloc
