#include "tangency/geometry.hpp"

#include <algorithm>
#include <array>

namespace tangency {

std::string to_string(const Point& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

int orientation(const Point& a, const Point& b, const Point& c) { return sign(cross(b - a, c - a)); }

namespace {

bool on_segment_collinear(const Point& p, const Segment& s) {
  const Point& lo = std::min(s.a, s.b);
  const Point& hi = std::max(s.a, s.b);
  return lo <= p && p <= hi;
}

}  // namespace

SegmentHit segment_intersection(const Segment& s1, const Segment& s2) {
  const int o1 = orientation(s1.a, s1.b, s2.a);
  const int o2 = orientation(s1.a, s1.b, s2.b);
  const int o3 = orientation(s2.a, s2.b, s1.a);
  const int o4 = orientation(s2.a, s2.b, s1.b);

  if (o1 == 0 && o2 == 0) {
    // Collinear: compare along the lexicographic order of the common line.
    const Point lo = std::max(std::min(s1.a, s1.b), std::min(s2.a, s2.b));
    const Point hi = std::min(std::max(s1.a, s1.b), std::max(s2.a, s2.b));
    if (hi < lo) return std::monostate{};
    if (lo == hi) return lo;
    return Segment{lo, hi};
  }
  if (o1 * o2 > 0 || o3 * o4 > 0) return std::monostate{};

  if (o1 == 0) return on_segment_collinear(s2.a, s1) ? SegmentHit{s2.a} : SegmentHit{};
  if (o2 == 0) return on_segment_collinear(s2.b, s1) ? SegmentHit{s2.b} : SegmentHit{};
  if (o3 == 0) return on_segment_collinear(s1.a, s2) ? SegmentHit{s1.a} : SegmentHit{};
  if (o4 == 0) return on_segment_collinear(s1.b, s2) ? SegmentHit{s1.b} : SegmentHit{};

  const Vec r = s1.b - s1.a;
  const Vec s = s2.b - s2.a;
  const Rational t = cross(s2.a - s1.a, s) / cross(r, s);
  return Point{s1.a.x + t * r.x, s1.a.y + t * r.y};
}

const char* to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::Open: return "open";
    case CurveKind::BiInfinite: return "biinfinite";
    case CurveKind::Closed: return "closed";
  }
  return "?";
}

const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::Unset: return "unset";
    case Orientation::Cw: return "cw";
    case Orientation::Ccw: return "ccw";
  }
  return "?";
}

namespace {

void require_increasing_x(const std::vector<Point>& vs) {
  for (std::size_t i = 1; i < vs.size(); ++i) {
    if (!(vs[i - 1].x < vs[i].x)) {
      throw GeometryError("monotone curve vertices must have strictly increasing x (vertex " +
                          std::to_string(i) + ")");
    }
  }
}

}  // namespace

Curve Curve::open(std::vector<Point> vertices) {
  if (vertices.size() < 2) throw GeometryError("open curve needs at least 2 vertices");
  require_increasing_x(vertices);
  Curve c;
  c.kind_ = CurveKind::Open;
  c.vertices_ = std::move(vertices);
  return c;
}

Curve Curve::bi_infinite(std::vector<Point> vertices, Rational left_slope, Rational right_slope) {
  if (vertices.empty()) throw GeometryError("bi-infinite curve needs at least 1 vertex");
  require_increasing_x(vertices);
  Curve c;
  c.kind_ = CurveKind::BiInfinite;
  c.vertices_ = std::move(vertices);
  c.left_slope_ = std::move(left_slope);
  c.right_slope_ = std::move(right_slope);
  return c;
}

Curve Curve::closed(std::vector<Point> vertices, Orientation orientation) {
  if (vertices.size() < 3) throw GeometryError("closed curve needs at least 3 vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] == vertices[(i + 1) % vertices.size()]) {
      throw GeometryError("closed curve has a repeated consecutive vertex");
    }
  }
  Curve c;
  c.kind_ = CurveKind::Closed;
  c.vertices_ = std::move(vertices);
  c.orientation_ = orientation;
  if (c.twice_signed_area() == 0) throw GeometryError("closed curve has zero area");
  return c;
}

Curve Curve::with_orientation(Orientation o) const {
  Curve c = *this;
  c.orientation_ = o;
  return c;
}

Rational Curve::slope_before(std::size_t i) const {
  if (i == 0) {
    if (kind_ != CurveKind::BiInfinite) throw GeometryError("no piece before the first vertex");
    return left_slope_;
  }
  const Vec d = vertices_[i] - vertices_[i - 1];
  return d.y / d.x;
}

Rational Curve::slope_after(std::size_t i) const {
  if (i + 1 == vertices_.size()) {
    if (kind_ != CurveKind::BiInfinite) throw GeometryError("no piece after the last vertex");
    return right_slope_;
  }
  const Vec d = vertices_[i + 1] - vertices_[i];
  return d.y / d.x;
}

std::optional<Rational> Curve::domain_min() const {
  if (kind_ == CurveKind::BiInfinite) return std::nullopt;
  if (kind_ == CurveKind::Open) return vertices_.front().x;
  return std::min_element(vertices_.begin(), vertices_.end())->x;
}

std::optional<Rational> Curve::domain_max() const {
  if (kind_ == CurveKind::BiInfinite) return std::nullopt;
  if (kind_ == CurveKind::Open) return vertices_.back().x;
  return std::max_element(vertices_.begin(), vertices_.end())->x;
}

bool Curve::in_domain(const Rational& x) const {
  const auto lo = domain_min();
  const auto hi = domain_max();
  return (!lo || *lo <= x) && (!hi || x <= *hi);
}

Rational Curve::twice_signed_area() const {
  Rational s = 0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = vertices_[i];
    const Point& q = vertices_[(i + 1) % n];
    s += p.x * q.y - q.x * p.y;
  }
  return s;
}

bool Curve::traversal_reversed() const {
  if (kind_ != CurveKind::Closed || orientation_ == Orientation::Unset) return false;
  const bool stored_ccw = twice_signed_area() > 0;
  return stored_ccw != (orientation_ == Orientation::Ccw);
}

std::size_t Curve::edge_count() const {
  if (kind_ == CurveKind::Closed) return vertices_.size();
  return vertices_.size() - 1;
}

Segment Curve::edge(std::size_t i) const {
  return Segment{vertices_[i], vertices_[(i + 1) % vertices_.size()]};
}

Rational eval_at(const Curve& curve, const Rational& x) {
  if (!curve.is_monotone()) throw GeometryError("eval_at needs a monotone curve");
  if (!curve.in_domain(x)) throw GeometryError("x = " + to_string(x) + " outside curve domain");
  const auto& vs = curve.vertices();
  const auto it = std::lower_bound(vs.begin(), vs.end(), x,
                                   [](const Point& p, const Rational& v) { return p.x < v; });
  if (it != vs.end() && it->x == x) return it->y;
  if (it == vs.begin()) return vs.front().y + curve.left_slope() * (x - vs.front().x);
  if (it == vs.end()) return vs.back().y + curve.right_slope() * (x - vs.back().x);
  const Point& p = *(it - 1);
  const Point& q = *it;
  return p.y + (q.y - p.y) * (x - p.x) / (q.x - p.x);
}

namespace {

// Nearest vertex abscissa strictly left (right) of x, if any.
std::optional<Rational> nearest_vertex_x(const Curve& c, const Rational& x, bool left) {
  const auto& vs = c.vertices();
  if (left) {
    auto it = std::lower_bound(vs.begin(), vs.end(), x,
                               [](const Point& p, const Rational& v) { return p.x < v; });
    if (it == vs.begin()) return std::nullopt;
    return (it - 1)->x;
  }
  auto it = std::upper_bound(vs.begin(), vs.end(), x,
                             [](const Rational& v, const Point& p) { return v < p.x; });
  if (it == vs.end()) return std::nullopt;
  return it->x;
}

Rational probe_abscissa(const Curve& a, const Curve& b, const Rational& x, bool left) {
  const auto ea = nearest_vertex_x(a, x, left);
  const auto eb = nearest_vertex_x(b, x, left);
  std::optional<Rational> event;
  if (ea && eb) event = left ? std::max(*ea, *eb) : std::min(*ea, *eb);
  else if (ea) event = ea;
  else if (eb) event = eb;
  if (!event) return left ? Rational(x - 1) : Rational(x + 1);
  return (x + *event) / 2;
}

}  // namespace

LocalClass classify_local_monotone(const Curve& a, const Curve& b, const Point& p) {
  if (!a.is_monotone() || !b.is_monotone()) throw GeometryError("classify_local_monotone needs monotone curves");
  for (const Curve* c : {&a, &b}) {
    if (c->kind() == CurveKind::Open && (p.x == c->vertices().front().x || p.x == c->vertices().back().x)) {
      throw GeometryError("common point " + to_string(p) + " at an open-curve endpoint");
    }
  }
  const Rational xl = probe_abscissa(a, b, p.x, true);
  const Rational xr = probe_abscissa(a, b, p.x, false);
  const int sl = sign(Rational(eval_at(a, xl) - eval_at(b, xl)));
  const int sr = sign(Rational(eval_at(a, xr) - eval_at(b, xr)));
  if (sl == 0 || sr == 0) throw GeometryError("curves overlap next to " + to_string(p));
  LocalClass out;
  out.crossing = sl != sr;
  if (!out.crossing) out.upper = sl > 0 ? Which::First : Which::Second;
  return out;
}

std::optional<CurveLocation> locate_on_closed(const Curve& curve, const Point& p) {
  const auto& vs = curve.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] == p) return CurveLocation{i, Rational(0)};
  }
  for (std::size_t i = 0; i < curve.edge_count(); ++i) {
    const Segment e = curve.edge(i);
    if (orientation(e.a, e.b, p) != 0) continue;
    if (!on_segment_collinear(p, e)) continue;
    const Vec d = e.b - e.a;
    return CurveLocation{i, dot(p - e.a, d) / dot(d, d)};
  }
  return std::nullopt;
}

std::pair<Vec, Vec> branch_directions(const Curve& curve, const Point& p) {
  if (curve.kind() != CurveKind::Closed) {
    // Monotone: toward decreasing x, then toward increasing x.
    const auto& vs = curve.vertices();
    auto it = std::lower_bound(vs.begin(), vs.end(), p.x,
                               [](const Point& v, const Rational& x) { return v.x < x; });
    const std::size_t i = static_cast<std::size_t>(it - vs.begin());
    Rational left_slope;
    Rational right_slope;
    if (it != vs.end() && it->x == p.x) {
      left_slope = curve.slope_before(i);
      right_slope = curve.slope_after(i);
    } else {
      left_slope = right_slope = (i == 0) ? curve.slope_before(0) : curve.slope_after(i - 1);
    }
    return {Vec{Rational(-1), Rational(-left_slope)}, Vec{Rational(1), right_slope}};
  }
  const auto loc = locate_on_closed(curve, p);
  if (!loc) throw GeometryError("point " + to_string(p) + " not on curve");
  const auto& vs = curve.vertices();
  const std::size_t n = vs.size();
  Vec back;
  Vec fwd;
  if (loc->param == 0) {
    back = vs[(loc->index + n - 1) % n] - p;
    fwd = vs[(loc->index + 1) % n] - p;
  } else {
    back = vs[loc->index] - p;
    fwd = vs[(loc->index + 1) % n] - p;
  }
  if (curve.traversal_reversed()) std::swap(back, fwd);
  return {back, fwd};
}

namespace {

// 0 for directions in [0, pi), 1 for [pi, 2pi).
int half_plane(const Vec& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

bool angle_less(const Vec& u, const Vec& v) {
  const int hu = half_plane(u);
  const int hv = half_plane(v);
  if (hu != hv) return hu < hv;
  return cross(u, v) > 0;
}

bool same_direction(const Vec& u, const Vec& v) {
  return half_plane(u) == half_plane(v) && cross(u, v) == 0;
}

// Angle of v measured counter-clockwise from ref, as a comparable key.
bool ccw_from_less(const Vec& ref, const Vec& u, const Vec& v) {
  // Rotate so ref points along +x: (x, y) -> (dot(ref, w), cross(ref, w)).
  const Vec ru{dot(ref, u), cross(ref, u)};
  const Vec rv{dot(ref, v), cross(ref, v)};
  return angle_less(ru, rv);
}

Side side_of(const Vec& back, const Vec& fwd, const Vec& v) {
  // Left of the traversal = strictly inside the counter-clockwise sweep from
  // the forward branch to the backward branch.
  return ccw_from_less(fwd, v, back) ? Side::Left : Side::Right;
}

}  // namespace

LocalClass classify_local_closed(const Curve& a, const Curve& b, const Point& p) {
  const auto [a_back, a_fwd] = branch_directions(a, p);
  const auto [b_back, b_fwd] = branch_directions(b, p);

  struct Tagged {
    Vec dir;
    int owner;
  };
  std::array<Tagged, 4> dirs{{{a_back, 0}, {a_fwd, 0}, {b_back, 1}, {b_fwd, 1}}};
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      if (same_direction(dirs[i].dir, dirs[j].dir)) {
        throw GeometryError("degenerate cyclic order of branches at " + to_string(p));
      }
    }
  }
  std::sort(dirs.begin(), dirs.end(), [](const Tagged& u, const Tagged& v) { return angle_less(u.dir, v.dir); });
  // Crossing iff the owners alternate around p.
  const bool alternating = dirs[0].owner != dirs[1].owner && dirs[1].owner != dirs[2].owner &&
                           dirs[2].owner != dirs[3].owner;
  LocalClass out;
  out.crossing = alternating;
  if (!out.crossing) {
    out.side_on_first = side_of(a_back, a_fwd, b_fwd);
    out.side_on_second = side_of(b_back, b_fwd, a_fwd);
  }
  return out;
}

}  // namespace tangency
