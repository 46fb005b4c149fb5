#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tangency/rational.hpp"

namespace tangency {

struct Point {
  Rational x;
  Rational y;

  Point() = default;
  Point(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
  Point(long xn, long yn) : x(xn), y(yn) {}

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (const int c = cmp(a.x, b.x); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    const int c = cmp(a.y, b.y);
    if (c == 0) return std::strong_ordering::equal;
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
};

std::string to_string(const Point& p);

struct Vec {
  Rational x;
  Rational y;
};

inline Vec operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Rational cross(const Vec& u, const Vec& v) { return u.x * v.y - u.y * v.x; }
inline Rational dot(const Vec& u, const Vec& v) { return u.x * v.x + u.y * v.y; }

// Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear.
int orientation(const Point& a, const Point& b, const Point& c);

struct Segment {
  Point a;
  Point b;
};

// Result of intersecting two closed segments.
using SegmentHit = std::variant<std::monostate, Point, Segment>;

SegmentHit segment_intersection(const Segment& s1, const Segment& s2);

// Raised for inputs that break local classification: overlaps, evaluation
// outside a curve's domain, intersections at open-curve endpoints, collinear
// branches around a point.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CurveKind { Open, BiInfinite, Closed };
enum class Orientation { Unset, Cw, Ccw };

const char* to_string(CurveKind kind);
const char* to_string(Orientation o);

// Polyline geometry. Open and BiInfinite curves are x-monotone: vertex
// abscissas strictly increase. BiInfinite curves continue past the first and
// last vertex along rays with the given slopes. Closed curves are simple
// polygons given as a cyclic vertex list.
class Curve {
 public:
  static Curve open(std::vector<Point> vertices);
  static Curve bi_infinite(std::vector<Point> vertices, Rational left_slope, Rational right_slope);
  static Curve closed(std::vector<Point> vertices, Orientation orientation = Orientation::Unset);

  CurveKind kind() const { return kind_; }
  bool is_monotone() const { return kind_ != CurveKind::Closed; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const Rational& left_slope() const { return left_slope_; }
  const Rational& right_slope() const { return right_slope_; }
  Orientation orientation() const { return orientation_; }

  Curve with_orientation(Orientation o) const;

  // Monotone curves only. Slope of the piece ending at vertex i (i > 0, or
  // the left ray) and of the piece starting at vertex i.
  Rational slope_before(std::size_t i) const;
  Rational slope_after(std::size_t i) const;

  // Domain bounds; empty for the unbounded side of a BiInfinite curve.
  std::optional<Rational> domain_min() const;
  std::optional<Rational> domain_max() const;
  bool in_domain(const Rational& x) const;

  // Closed curves: twice the signed area (> 0 for counter-clockwise order).
  Rational twice_signed_area() const;
  // True when the oriented traversal runs against the stored vertex order.
  bool traversal_reversed() const;

  std::size_t edge_count() const;
  Segment edge(std::size_t i) const;

  friend bool operator==(const Curve& a, const Curve& b) = default;

 private:
  Curve() = default;
  CurveKind kind_ = CurveKind::Open;
  std::vector<Point> vertices_;
  Rational left_slope_;
  Rational right_slope_;
  Orientation orientation_ = Orientation::Unset;
};

// The unique y with (x, y) on a monotone curve.
Rational eval_at(const Curve& curve, const Rational& x);

enum class Side { None, Left, Right };
enum class Which { First, Second };

// Local type of an isolated common point of two curves.
//  - monotone pairs: `upper` names the curve locally above at a touching;
//  - closed pairs: `side_on_first` is the side of the first curve (relative
//    to its traversal direction) holding the second curve's branches, and
//    vice versa.
struct LocalClass {
  bool crossing = true;
  Which upper = Which::First;
  Side side_on_first = Side::None;
  Side side_on_second = Side::None;

  bool touching() const { return !crossing; }
};

LocalClass classify_local_monotone(const Curve& a, const Curve& b, const Point& p);
LocalClass classify_local_closed(const Curve& a, const Curve& b, const Point& p);

// Where a point sits on a closed curve: at vertex `index` (param == 0) or in
// the interior of edge `index` at fraction `param` in (0, 1).
struct CurveLocation {
  std::size_t index = 0;
  Rational param;
};

std::optional<CurveLocation> locate_on_closed(const Curve& curve, const Point& p);

// The two local branch directions of a curve through p (p must lie on it).
std::pair<Vec, Vec> branch_directions(const Curve& curve, const Point& p);

}  // namespace tangency
