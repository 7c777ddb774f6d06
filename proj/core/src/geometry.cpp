#include "dcloc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dcloc/errors.hpp"

namespace dcloc {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void check_dim(const ConvexSet& q, const Vector& x) {
  if (x.size() != q.dimension()) {
    throw DimensionMismatch(q.dimension(), x.size());
  }
}

bool all_finite(const Vector& v) { return v.allFinite(); }

bool same(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

// max over p in q of |p - c|, or +inf for unbounded q.
double farthest_distance(const ConvexSet& q, const Vector& c) {
  return std::visit(
      Overloaded{
          [&](const Singleton& s) { return (s.point - c).norm(); },
          [&](const Ball& b) { return (b.center - c).norm() + b.radius; },
          [&](const AxisBox& b) {
            double sum = 0.0;
            for (Eigen::Index k = 0; k < c.size(); ++k) {
              if (!std::isfinite(b.lower[k]) || !std::isfinite(b.upper[k])) {
                return kInf;
              }
              double lo = b.lower[k] - c[k];
              double hi = b.upper[k] - c[k];
              sum += std::max(lo * lo, hi * hi);
            }
            return std::sqrt(sum);
          },
          [&](const Halfspace&) { return kInf; },
      },
      q.shape());
}

}  // namespace

double default_tolerance(const Vector& x) { return 1e-9 * (1.0 + x.norm()); }

ConvexSet ConvexSet::singleton(Vector point) {
  if (point.size() == 0 || !all_finite(point)) {
    throw std::invalid_argument("singleton: point must be finite and nonempty");
  }
  return ConvexSet(Singleton{std::move(point)});
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  if (center.size() == 0 || !all_finite(center)) {
    throw std::invalid_argument("ball: center must be finite and nonempty");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("ball: radius must be positive and finite");
  }
  return ConvexSet(Ball{std::move(center), radius});
}

ConvexSet ConvexSet::box(Vector lower, Vector upper) {
  if (lower.size() == 0 || lower.size() != upper.size()) {
    throw std::invalid_argument("box: bounds must have equal nonzero length");
  }
  for (Eigen::Index k = 0; k < lower.size(); ++k) {
    if (std::isnan(lower[k]) || std::isnan(upper[k]) || lower[k] > upper[k] ||
        lower[k] == kInf || upper[k] == -kInf) {
      throw std::invalid_argument("box: need lower <= upper with a finite "
                                  "point between them in every coordinate");
    }
  }
  return ConvexSet(AxisBox{std::move(lower), std::move(upper)});
}

ConvexSet ConvexSet::halfspace(Vector normal, double offset) {
  if (normal.size() == 0 || !all_finite(normal) || normal.isZero(0.0)) {
    throw std::invalid_argument("halfspace: normal must be finite and nonzero");
  }
  if (!std::isfinite(offset)) {
    throw std::invalid_argument("halfspace: offset must be finite");
  }
  return ConvexSet(Halfspace{std::move(normal), offset});
}

ConvexSet ConvexSet::whole_space(int dimension) {
  return box(Vector::Constant(dimension, -kInf), Vector::Constant(dimension, kInf));
}

ConvexSet ConvexSet::square(const Vector& center, double half_side) {
  if (!(half_side >= 0.0)) {
    throw std::invalid_argument("square: half side must be nonnegative");
  }
  return box(center.array() - half_side, center.array() + half_side);
}

int ConvexSet::dimension() const {
  return std::visit(
      Overloaded{
          [](const Singleton& s) { return static_cast<int>(s.point.size()); },
          [](const Ball& b) { return static_cast<int>(b.center.size()); },
          [](const AxisBox& b) { return static_cast<int>(b.lower.size()); },
          [](const Halfspace& h) { return static_cast<int>(h.normal.size()); },
      },
      shape_);
}

bool operator==(const ConvexSet& a, const ConvexSet& b) {
  if (a.kind() != b.kind()) return false;
  return std::visit(
      Overloaded{
          [&](const Singleton& s) { return same(s.point, b.as<Singleton>()->point); },
          [&](const Ball& x) {
            const Ball& y = *b.as<Ball>();
            return same(x.center, y.center) && x.radius == y.radius;
          },
          [&](const AxisBox& x) {
            const AxisBox& y = *b.as<AxisBox>();
            return same(x.lower, y.lower) && same(x.upper, y.upper);
          },
          [&](const Halfspace& x) {
            const Halfspace& y = *b.as<Halfspace>();
            return same(x.normal, y.normal) && x.offset == y.offset;
          },
      },
      a.shape());
}

Vector project(const ConvexSet& q, const Vector& x) {
  check_dim(q, x);
  return std::visit(
      Overloaded{
          [&](const Singleton& s) -> Vector { return s.point; },
          [&](const Ball& b) -> Vector {
            Vector d = x - b.center;
            double n = d.norm();
            if (n <= b.radius) return x;
            return b.center + (b.radius / n) * d;
          },
          [&](const AxisBox& b) -> Vector {
            return x.cwiseMax(b.lower).cwiseMin(b.upper);
          },
          [&](const Halfspace& h) -> Vector {
            double excess = h.normal.dot(x) - h.offset;
            if (excess <= 0.0) return x;
            return x - (excess / h.normal.squaredNorm()) * h.normal;
          },
      },
      q.shape());
}

double distance(const ConvexSet& q, const Vector& x) {
  check_dim(q, x);
  return std::visit(
      Overloaded{
          [&](const Singleton& s) { return (x - s.point).norm(); },
          [&](const Ball& b) {
            return std::max(0.0, (x - b.center).norm() - b.radius);
          },
          [&](const AxisBox& b) {
            return (x - x.cwiseMax(b.lower).cwiseMin(b.upper)).norm();
          },
          [&](const Halfspace& h) {
            return std::max(0.0, h.normal.dot(x) - h.offset) / h.normal.norm();
          },
      },
      q.shape());
}

bool contains(const ConvexSet& q, const Vector& x, double tol) {
  return distance(q, x) <= tol;
}

bool contains(const ConvexSet& q, const Vector& x) {
  return contains(q, x, default_tolerance(x));
}

DistanceSubgradient distance_subgradient(const ConvexSet& q, const Vector& x,
                                         double tol) {
  if (distance(q, x) > tol) {
    Vector g = x - project(q, x);
    g.normalize();
    return {DistanceSubgradient::Kind::kExterior, std::move(g), &q};
  }
  return {DistanceSubgradient::Kind::kOnSet, Vector(), &q};
}

bool normal_cone_contains(const ConvexSet& q, const Vector& x, const Vector& v,
                          double tol) {
  check_dim(q, x);
  check_dim(q, v);
  if (!contains(q, x, tol)) {
    throw PreconditionViolated("normal_cone_contains: x is not in the set");
  }
  double vn = v.norm();
  if (vn == 0.0) return true;
  const Vector u = v / vn;
  return std::visit(
      Overloaded{
          [&](const Singleton&) { return true; },
          [&](const Ball& b) {
            // sup over the ball of <u, p - x>
            return u.dot(b.center - x) + b.radius <= tol;
          },
          [&](const AxisBox& b) {
            for (Eigen::Index k = 0; k < u.size(); ++k) {
              if (std::abs(u[k]) <= tol) continue;
              if (u[k] > 0.0) {
                if (!(b.upper[k] - x[k] <= tol)) return false;
              } else {
                if (!(x[k] - b.lower[k] <= tol)) return false;
              }
            }
            return true;
          },
          [&](const Halfspace& h) {
            double an = h.normal.norm();
            Vector a = h.normal / an;
            bool active = h.offset / an - a.dot(x) <= tol;
            double along = u.dot(a);
            return active && along > 0.0 && (u - along * a).norm() <= tol;
          },
      },
      q.shape());
}

std::optional<double> bounding_radius(const ConvexSet& q) {
  double r = farthest_distance(q, Vector::Zero(q.dimension()));
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}

bool is_bounded(const ConvexSet& q) { return bounding_radius(q).has_value(); }

std::vector<Vector> box_vertices(const ConvexSet& q) {
  const AxisBox* b = q.as<AxisBox>();
  if (b == nullptr || !is_bounded(q)) {
    throw PreconditionViolated("box_vertices: need a bounded box");
  }
  std::vector<Eigen::Index> free;
  for (Eigen::Index k = 0; k < b->lower.size(); ++k) {
    if (b->lower[k] < b->upper[k]) free.push_back(k);
  }
  if (free.size() > 20) {
    throw PreconditionViolated("box_vertices: too many free coordinates");
  }
  std::vector<Vector> out;
  const std::size_t count = std::size_t{1} << free.size();
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Vector p = b->lower;
    for (std::size_t j = 0; j < free.size(); ++j) {
      if (mask & (std::size_t{1} << j)) p[free[j]] = b->upper[free[j]];
    }
    out.push_back(std::move(p));
  }
  return out;
}

double support(const ConvexSet& q, const Vector& v) {
  check_dim(q, v);
  return std::visit(
      Overloaded{
          [&](const Singleton& s) { return v.dot(s.point); },
          [&](const Ball& b) { return v.dot(b.center) + b.radius * v.norm(); },
          [&](const AxisBox& b) {
            double sum = 0.0;
            for (Eigen::Index k = 0; k < v.size(); ++k) {
              if (v[k] > 0.0) {
                sum += v[k] * b.upper[k];
              } else if (v[k] < 0.0) {
                sum += v[k] * b.lower[k];
              }
            }
            return sum;
          },
          [&](const Halfspace& h) {
            double vn = v.norm();
            if (vn == 0.0) return 0.0;
            double mu = v.dot(h.normal) / h.normal.squaredNorm();
            if (mu < 0.0 || (v - mu * h.normal).norm() > 1e-12 * vn) return kInf;
            return mu * h.offset;
          },
      },
      q.shape());
}

Vector reference_point(const ConvexSet& q) {
  return std::visit(
      Overloaded{
          [&](const Singleton& s) -> Vector { return s.point; },
          [&](const Ball& b) -> Vector { return b.center; },
          [&](const AxisBox& b) -> Vector {
            Vector p(b.lower.size());
            for (Eigen::Index k = 0; k < p.size(); ++k) {
              bool lo = std::isfinite(b.lower[k]);
              bool hi = std::isfinite(b.upper[k]);
              if (lo && hi) {
                p[k] = 0.5 * (b.lower[k] + b.upper[k]);
              } else if (lo) {
                p[k] = std::max(b.lower[k], 0.0);
              } else if (hi) {
                p[k] = std::min(b.upper[k], 0.0);
              } else {
                p[k] = 0.0;
              }
            }
            return p;
          },
          [&](const Halfspace&) -> Vector {
            return project(q, Vector::Zero(q.dimension()));
          },
      },
      q.shape());
}

bool is_singleton(const ConvexSet& q) {
  if (q.as<Singleton>()) return true;
  if (const AxisBox* b = q.as<AxisBox>()) {
    return (b->lower.array() == b->upper.array()).all();
  }
  return false;
}

double interior_depth(const ConvexSet& q, const Vector& x) {
  double d = distance(q, x);
  if (d > 0.0) return -d;
  return std::visit(
      Overloaded{
          [&](const Singleton&) { return 0.0; },
          [&](const Ball& b) { return b.radius - (x - b.center).norm(); },
          [&](const AxisBox& b) {
            double depth = kInf;
            for (Eigen::Index k = 0; k < x.size(); ++k) {
              depth = std::min({depth, x[k] - b.lower[k], b.upper[k] - x[k]});
            }
            return depth;
          },
          [&](const Halfspace& h) {
            return (h.offset - h.normal.dot(x)) / h.normal.norm();
          },
      },
      q.shape());
}

bool is_subset(const ConvexSet& a, const ConvexSet& b, double tol) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatch(b.dimension(), a.dimension());
  }
  const int n = a.dimension();
  return std::visit(
      Overloaded{
          [&](const Singleton& s) {
            return is_singleton(a) && (reference_point(a) - s.point).norm() <= tol;
          },
          [&](const Ball& ball) {
            return farthest_distance(a, ball.center) <= ball.radius + tol;
          },
          [&](const AxisBox& box) {
            for (int k = 0; k < n; ++k) {
              Vector e = Vector::Unit(n, k);
              if (std::isfinite(box.upper[k]) && !(support(a, e) <= box.upper[k] + tol)) {
                return false;
              }
              if (std::isfinite(box.lower[k]) && !(support(a, -e) <= -box.lower[k] + tol)) {
                return false;
              }
            }
            return true;
          },
          [&](const Halfspace& h) {
            return support(a, h.normal) <= h.offset + tol * h.normal.norm();
          },
      },
      b.shape());
}

bool intersects(const ConvexSet& a, const ConvexSet& b, double tol) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatch(a.dimension(), b.dimension());
  }
  if (const Singleton* s = a.as<Singleton>()) return contains(b, s->point, tol);
  if (const Singleton* s = b.as<Singleton>()) return contains(a, s->point, tol);
  if (const Ball* ball = a.as<Ball>()) {
    return distance(b, ball->center) <= ball->radius + tol;
  }
  if (const Ball* ball = b.as<Ball>()) {
    return distance(a, ball->center) <= ball->radius + tol;
  }
  if (const Halfspace* h = a.as<Halfspace>()) {
    return -support(b, -h->normal) <= h->offset + tol * h->normal.norm();
  }
  if (const Halfspace* h = b.as<Halfspace>()) {
    return -support(a, -h->normal) <= h->offset + tol * h->normal.norm();
  }
  const AxisBox& x = *a.as<AxisBox>();
  const AxisBox& y = *b.as<AxisBox>();
  for (Eigen::Index k = 0; k < x.lower.size(); ++k) {
    if (std::max(x.lower[k], y.lower[k]) > std::min(x.upper[k], y.upper[k]) + tol) {
      return false;
    }
  }
  return true;
}

std::optional<AxisBox> bounding_box(const ConvexSet& q) {
  if (!is_bounded(q)) return std::nullopt;
  return std::visit(
      Overloaded{
          [](const Singleton& s) { return AxisBox{s.point, s.point}; },
          [](const Ball& b) {
            return AxisBox{(b.center.array() - b.radius).matrix(),
                           (b.center.array() + b.radius).matrix()};
          },
          [](const AxisBox& b) { return b; },
          [](const Halfspace&) -> AxisBox {
            throw std::logic_error("unreachable: halfspaces are unbounded");
          },
      },
      q.shape());
}

}  // namespace dcloc
