// All-pairs intersection oracle. Deliberately shares no code with
// build_arrangement beyond the Rational/Point/Curve carriers: pieces are
// solved as line equations, and local types come from one-sided slopes
// (monotone) or half-plane tests (closed) instead of probe evaluation and
// angular sorting.

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "tangency/arrangement.hpp"

namespace tangency {

namespace {

[[noreturn]] void degenerate(ViolationKind kind, std::vector<CurveId> curves, std::string details) {
  GeneralPositionReport r;
  r.ok = false;
  r.violations.push_back({kind, std::move(curves), std::move(details)});
  throw GeneralPositionError(std::move(r));
}

// y = slope * x + icpt over [lo, hi] (either end may be unbounded).
struct Piece {
  Rational slope;
  Rational icpt;
  std::optional<Rational> lo;
  std::optional<Rational> hi;
};

std::vector<Piece> monotone_pieces(const Curve& c) {
  std::vector<Piece> out;
  const auto& vs = c.vertices();
  auto line_through = [](const Point& p, const Rational& m) { return Piece{m, p.y - m * p.x, {}, {}}; };
  if (c.kind() == CurveKind::BiInfinite) {
    Piece left = line_through(vs.front(), c.left_slope());
    left.hi = vs.front().x;
    out.push_back(left);
  }
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    const Rational m = (vs[i + 1].y - vs[i].y) / (vs[i + 1].x - vs[i].x);
    Piece p = line_through(vs[i], m);
    p.lo = vs[i].x;
    p.hi = vs[i + 1].x;
    out.push_back(p);
  }
  if (c.kind() == CurveKind::BiInfinite) {
    Piece right = line_through(vs.back(), c.right_slope());
    right.lo = vs.back().x;
    out.push_back(right);
  }
  return out;
}

bool inside(const Piece& p, const Rational& x) { return (!p.lo || *p.lo <= x) && (!p.hi || x <= *p.hi); }

// Slopes of the curve immediately left and right of x.
std::pair<Rational, Rational> side_slopes(const std::vector<Piece>& pieces, const Rational& x) {
  std::optional<Rational> left;
  std::optional<Rational> right;
  for (const Piece& p : pieces) {
    if (!inside(p, x)) continue;
    if (!p.lo || *p.lo < x) left = p.slope;
    if (!p.hi || x < *p.hi) right = p.slope;
  }
  if (!left || !right) throw std::logic_error("oracle: slope lookup outside curve");
  return {*left, *right};
}

void monotone_oracle(const std::vector<CurveRecord>& curves, std::vector<OracleHit>& out) {
  std::vector<std::vector<Piece>> pieces;
  for (const auto& r : curves) pieces.push_back(monotone_pieces(r.geometry));

  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      const CurveId ci = static_cast<CurveId>(i);
      const CurveId cj = static_cast<CurveId>(j);
      std::set<Rational> xs;
      for (const Piece& p : pieces[i]) {
        for (const Piece& q : pieces[j]) {
          std::optional<Rational> lo = p.lo;
          if (q.lo && (!lo || *lo < *q.lo)) lo = q.lo;
          std::optional<Rational> hi = p.hi;
          if (q.hi && (!hi || *q.hi < *hi)) hi = q.hi;
          if (lo && hi && *hi < *lo) continue;
          if (p.slope == q.slope) {
            if (p.icpt != q.icpt) continue;
            if (!lo || !hi || *lo < *hi) degenerate(ViolationKind::InfiniteOverlap, {ci, cj}, "oracle: shared piece");
            xs.insert(*lo);
            continue;
          }
          Rational x = (q.icpt - p.icpt) / (p.slope - q.slope);
          if ((!lo || *lo <= x) && (!hi || x <= *hi)) xs.insert(std::move(x));
        }
      }
      std::vector<OracleHit> pair_hits;
      for (const Rational& x : xs) {
        for (const CurveRecord* r : {&curves[i], &curves[j]}) {
          const auto& vs = r->geometry.vertices();
          if (r->geometry.kind() == CurveKind::Open && (x == vs.front().x || x == vs.back().x)) {
            degenerate(ViolationKind::VertexDegeneracy, {ci, cj}, "oracle: meeting at an open endpoint");
          }
        }
        const auto [la, ra] = side_slopes(pieces[i], x);
        const auto [lb, rb] = side_slopes(pieces[j], x);
        const int s_left = -sign(Rational(la - lb));
        const int s_right = sign(Rational(ra - rb));
        if (s_left == 0 || s_right == 0) degenerate(ViolationKind::InfiniteOverlap, {ci, cj}, "oracle: one-sided overlap");
        Rational y;
        for (const Piece& p : pieces[i]) {
          if (inside(p, x)) {
            y = p.slope * x + p.icpt;
            break;
          }
        }
        const bool touching = s_left == s_right;
        pair_hits.push_back({Point{x, y}, ci, cj, touching, touching ? (s_left > 0 ? ci : cj) : -1});
      }
      if (pair_hits.size() > 1) {
        for (auto& h : pair_hits) {
          if (h.touching) degenerate(ViolationKind::VertexDegeneracy, {ci, cj}, "oracle: tangency in a multi-point pair");
        }
      }
      out.insert(out.end(), pair_hits.begin(), pair_hits.end());
    }
  }
}

// a x + b y = c through the segment's endpoints.
struct LineEq {
  Rational a, b, c;
  Point p, q;
};

LineEq line_of(const Point& p, const Point& q) {
  LineEq l{q.y - p.y, p.x - q.x, 0, p, q};
  l.c = l.a * p.x + l.b * p.y;
  return l;
}

bool within_box(const LineEq& l, const Point& r) {
  return std::min(l.p.x, l.q.x) <= r.x && r.x <= std::max(l.p.x, l.q.x) && std::min(l.p.y, l.q.y) <= r.y &&
         r.y <= std::max(l.p.y, l.q.y);
}

// Neighbours of p along a polygon, in vertex order.
std::pair<Point, Point> polygon_neighbours(const Curve& c, const Point& p) {
  const auto& vs = c.vertices();
  const std::size_t n = vs.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (vs[i] == p) return {vs[(i + n - 1) % n], vs[(i + 1) % n]};
  }
  for (std::size_t i = 0; i < n; ++i) {
    const LineEq l = line_of(vs[i], vs[(i + 1) % n]);
    if (l.a * p.x + l.b * p.y == l.c && within_box(l, p)) return {vs[i], vs[(i + 1) % n]};
  }
  throw std::logic_error("oracle: point not on polygon");
}

Rational turn(const Point& o, const Point& u, const Point& v) {
  return (u.x - o.x) * (v.y - o.y) - (u.y - o.y) * (v.x - o.x);
}

// Whether neighbour point v lies on the left of the path prev -> p -> next.
bool left_of_path(const Point& prev, const Point& p, const Point& next, const Point& v, CurveId a, CurveId b) {
  const Rational left_in = turn(prev, p, v);   // > 0: v left of the incoming line
  const Rational left_out = turn(p, next, v);  // > 0: v left of the outgoing line
  auto ahead = [&](const Point& w) { return (v.x - p.x) * (w.x - p.x) + (v.y - p.y) * (w.y - p.y) > 0; };
  if ((left_in == 0 && ahead(prev)) || (left_out == 0 && ahead(next))) {
    degenerate(ViolationKind::VertexDegeneracy, {a, b}, "oracle: branches share a direction");
  }
  // v on the extension of one supporting line past p: the other line decides.
  if (left_in == 0) return left_out > 0;
  if (left_out == 0) return left_in > 0;
  const Rational bend = turn(prev, p, next);
  if (bend > 0) return left_in > 0 && left_out > 0;
  if (bend < 0) return left_in > 0 || left_out > 0;
  return left_out > 0;
}

void closed_oracle(const std::vector<CurveRecord>& curves, std::vector<OracleHit>& out) {
  std::vector<std::vector<LineEq>> edges;
  for (const auto& r : curves) {
    const auto& vs = r.geometry.vertices();
    std::vector<LineEq> es;
    for (std::size_t i = 0; i < vs.size(); ++i) es.push_back(line_of(vs[i], vs[(i + 1) % vs.size()]));
    edges.push_back(std::move(es));
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      const CurveId ci = static_cast<CurveId>(i);
      const CurveId cj = static_cast<CurveId>(j);
      std::set<Point> pts;
      for (const LineEq& e : edges[i]) {
        for (const LineEq& f : edges[j]) {
          const Rational det = e.a * f.b - f.a * e.b;
          if (det != 0) {
            Point r{(e.c * f.b - f.c * e.b) / det, (e.a * f.c - f.a * e.c) / det};
            if (within_box(e, r) && within_box(f, r)) pts.insert(std::move(r));
            continue;
          }
          if (e.a * f.p.x + e.b * f.p.y != e.c) continue;  // parallel, distinct lines
          std::vector<Point> on;
          for (const Point& r : {f.p, f.q}) if (within_box(e, r)) on.push_back(r);
          for (const Point& r : {e.p, e.q}) if (within_box(f, r)) on.push_back(r);
          std::sort(on.begin(), on.end());
          on.erase(std::unique(on.begin(), on.end()), on.end());
          if (on.size() > 1) degenerate(ViolationKind::InfiniteOverlap, {ci, cj}, "oracle: collinear edges overlap");
          if (on.size() == 1) pts.insert(on.front());
        }
      }
      std::vector<OracleHit> pair_hits;
      for (const Point& p : pts) {
        const auto [pa, na] = polygon_neighbours(curves[i].geometry, p);
        const auto [pb, nb] = polygon_neighbours(curves[j].geometry, p);
        const bool l1 = left_of_path(pa, p, na, pb, ci, cj);
        const bool l2 = left_of_path(pa, p, na, nb, ci, cj);
        pair_hits.push_back({p, ci, cj, l1 == l2, -1});
      }
      if (pair_hits.size() > 1) {
        for (auto& h : pair_hits) {
          if (h.touching) degenerate(ViolationKind::VertexDegeneracy, {ci, cj}, "oracle: tangency in a multi-point pair");
        }
      }
      out.insert(out.end(), pair_hits.begin(), pair_hits.end());
    }
  }
}

}  // namespace

std::vector<OracleHit> brute_force_intersections(const std::vector<CurveRecord>& curves) {
  std::vector<OracleHit> out;
  if (curves.empty()) return out;
  const bool closed = !curves.front().geometry.is_monotone();
  for (const auto& r : curves) {
    if (r.geometry.is_monotone() == closed) throw std::invalid_argument("family mixes closed and x-monotone curves");
  }
  if (closed) closed_oracle(curves, out);
  else monotone_oracle(curves, out);

  std::sort(out.begin(), out.end(), [](const OracleHit& u, const OracleHit& v) {
    if (u.point != v.point) return u.point < v.point;
    return std::pair(u.curve_lo, u.curve_hi) < std::pair(v.curve_lo, v.curve_hi);
  });
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    if (out[k].point == out[k + 1].point) {
      degenerate(ViolationKind::TriplePoint, {out[k].curve_lo, out[k].curve_hi, out[k + 1].curve_lo, out[k + 1].curve_hi},
                 "oracle: three curves through " + to_string(out[k].point));
    }
  }
  return out;
}

}  // namespace tangency
