#include "tangency/arrangement.hpp"

#include <algorithm>
#include <set>

#include "tangency/parallel.hpp"

namespace tangency {

const char* to_string(CurveClass c) {
  switch (c) {
    case CurveClass::Unassigned: return "unassigned";
    case CurveClass::S1: return "S1";
    case CurveClass::S2: return "S2";
  }
  return "?";
}

const char* to_string(PointCategory c) {
  switch (c) {
    case PointCategory::Touching: return "T";
    case PointCategory::X1: return "X1";
    case PointCategory::X2: return "X2";
    case PointCategory::XCross: return "X_cross";
    case PointCategory::XUnclassed: return "X_unclassed";
  }
  return "?";
}

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::TriplePoint: return "triple-point";
    case ViolationKind::InfiniteOverlap: return "infinite-overlap";
    case ViolationKind::VertexDegeneracy: return "vertex-degeneracy";
  }
  return "?";
}

namespace {

std::string describe(const GeneralPositionReport& report) {
  std::string msg = "general position violated:";
  for (const auto& v : report.violations) {
    msg += std::string(" [") + to_string(v.kind) + " curves";
    for (CurveId c : v.curves) msg += " " + std::to_string(c);
    msg += ": " + v.details + "]";
  }
  return msg;
}

}  // namespace

GeneralPositionError::GeneralPositionError(GeneralPositionReport report)
    : std::runtime_error(describe(report)), report_(std::move(report)) {}

namespace {

struct RawHit {
  Point p;
  CurveId lo;
  CurveId hi;
  LocalClass cls;
};

struct PairResult {
  std::vector<RawHit> hits;
  std::vector<Violation> violations;
};

bool is_open_endpoint(const Curve& c, const Rational& x) {
  return c.kind() == CurveKind::Open && (x == c.vertices().front().x || x == c.vertices().back().x);
}

void classify_and_push(const CurveRecord& a, const CurveRecord& b, const Point& p, bool monotone,
                       PairResult& out) {
  try {
    const LocalClass cls = monotone ? classify_local_monotone(a.geometry, b.geometry, p)
                                    : classify_local_closed(a.geometry, b.geometry, p);
    out.hits.push_back({p, a.id, b.id, cls});
  } catch (const GeometryError& e) {
    out.violations.push_back({ViolationKind::VertexDegeneracy, {a.id, b.id}, e.what()});
  }
}

void monotone_pair(const CurveRecord& A, const CurveRecord& B, PairResult& out) {
  const Curve& a = A.geometry;
  const Curve& b = B.geometry;
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  for (const Curve* c : {&a, &b}) {
    if (auto m = c->domain_min(); m && (!lo || *lo < *m)) lo = *m;
    if (auto m = c->domain_max(); m && (!hi || *m < *hi)) hi = *m;
  }
  if (lo && hi && *hi < *lo) return;

  std::vector<Rational> xs;
  xs.reserve(a.vertices().size() + b.vertices().size());
  for (const Curve* c : {&a, &b}) {
    for (const Point& v : c->vertices()) {
      if ((!lo || *lo <= v.x) && (!hi || v.x <= *hi)) xs.push_back(v.x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<Rational> ds;
  ds.reserve(xs.size());
  for (const Rational& x : xs) ds.emplace_back(eval_at(a, x) - eval_at(b, x));

  std::vector<Rational> zeros;
  auto overlap = [&](const std::string& where) {
    out.violations.push_back({ViolationKind::InfiniteOverlap, {A.id, B.id}, "curves overlap " + where});
  };

  if (!lo) {
    const Rational sl = a.left_slope() - b.left_slope();
    if (sl == 0) {
      if (ds.front() == 0) return overlap("along their left rays");
    } else {
      Rational root = xs.front() - ds.front() / sl;
      if (root < xs.front()) zeros.push_back(std::move(root));
    }
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ds[i] == 0) zeros.push_back(xs[i]);
    if (i + 1 == xs.size()) break;
    const int s0 = sign(ds[i]);
    const int s1 = sign(ds[i + 1]);
    if (s0 == 0 && s1 == 0) return overlap("on [" + to_string(xs[i]) + ", " + to_string(xs[i + 1]) + "]");
    if (s0 * s1 < 0) zeros.emplace_back(xs[i] - ds[i] * (xs[i + 1] - xs[i]) / (ds[i + 1] - ds[i]));
  }
  if (!hi) {
    const Rational sr = a.right_slope() - b.right_slope();
    if (sr == 0) {
      if (ds.back() == 0) return overlap("along their right rays");
    } else {
      Rational root = xs.back() - ds.back() / sr;
      if (xs.back() < root) zeros.push_back(std::move(root));
    }
  }

  for (const Rational& x : zeros) {
    const Point p{x, eval_at(a, x)};
    if (is_open_endpoint(a, x) || is_open_endpoint(b, x)) {
      out.violations.push_back(
          {ViolationKind::VertexDegeneracy, {A.id, B.id}, "intersection at open-curve endpoint " + to_string(p)});
      continue;
    }
    classify_and_push(A, B, p, true, out);
  }
}

struct Box {
  Rational xmin, xmax, ymin, ymax;
};

Box box_of(const Segment& s) {
  return {std::min(s.a.x, s.b.x), std::max(s.a.x, s.b.x), std::min(s.a.y, s.b.y), std::max(s.a.y, s.b.y)};
}

bool boxes_meet(const Box& u, const Box& v) {
  return !(u.xmax < v.xmin || v.xmax < u.xmin || u.ymax < v.ymin || v.ymax < u.ymin);
}

std::vector<Box> edge_boxes(const Curve& c) {
  std::vector<Box> out;
  out.reserve(c.edge_count());
  for (std::size_t i = 0; i < c.edge_count(); ++i) out.push_back(box_of(c.edge(i)));
  return out;
}

void closed_pair(const CurveRecord& A, const CurveRecord& B, const std::vector<Box>& boxes_a,
                 const std::vector<Box>& boxes_b, PairResult& out) {
  std::set<Point> found;
  for (std::size_t i = 0; i < boxes_a.size(); ++i) {
    for (std::size_t j = 0; j < boxes_b.size(); ++j) {
      if (!boxes_meet(boxes_a[i], boxes_b[j])) continue;
      const SegmentHit hit = segment_intersection(A.geometry.edge(i), B.geometry.edge(j));
      if (const auto* p = std::get_if<Point>(&hit)) {
        found.insert(*p);
      } else if (const auto* s = std::get_if<Segment>(&hit)) {
        out.violations.push_back({ViolationKind::InfiniteOverlap, {A.id, B.id},
                                  "edges overlap from " + to_string(s->a) + " to " + to_string(s->b)});
        return;
      }
    }
  }
  for (const Point& p : found) classify_and_push(A, B, p, false, out);
}

void check_simple(const CurveRecord& rec, const std::vector<Box>& boxes, std::vector<Violation>& out) {
  const Curve& c = rec.geometry;
  const std::size_t m = c.edge_count();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!boxes_meet(boxes[i], boxes[j])) continue;
      const bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
      const SegmentHit hit = segment_intersection(c.edge(i), c.edge(j));
      if (std::holds_alternative<std::monostate>(hit)) continue;
      if (adjacent && std::holds_alternative<Point>(hit)) continue;  // the shared vertex
      out.push_back({ViolationKind::VertexDegeneracy, {rec.id},
                     "closed curve is not simple (edges " + std::to_string(i) + " and " + std::to_string(j) + ")"});
      return;
    }
  }
}

struct Computed {
  std::vector<RawHit> hits;
  std::vector<Violation> violations;
  bool monotone = true;
};

Computed compute_all(const std::vector<CurveRecord>& curves) {
  Computed out;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (curves[i].id != static_cast<CurveId>(i)) {
      throw std::invalid_argument("curve ids must be dense and equal to their index");
    }
  }
  const bool any_closed = std::any_of(curves.begin(), curves.end(),
                                      [](const CurveRecord& r) { return !r.geometry.is_monotone(); });
  const bool any_monotone = std::any_of(curves.begin(), curves.end(),
                                        [](const CurveRecord& r) { return r.geometry.is_monotone(); });
  if (any_closed && any_monotone) {
    throw std::invalid_argument("family mixes closed and x-monotone curves");
  }
  out.monotone = !any_closed;

  std::vector<std::vector<Box>> boxes(curves.size());
  if (any_closed) {
    for (std::size_t i = 0; i < curves.size(); ++i) boxes[i] = edge_boxes(curves[i].geometry);
    std::vector<std::vector<Violation>> shape(curves.size());
    parallel_for(curves.size(), [&](std::size_t i) { check_simple(curves[i], boxes[i], shape[i]); });
    for (auto& v : shape) out.violations.insert(out.violations.end(), v.begin(), v.end());
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) pairs.emplace_back(i, j);
  }
  std::vector<PairResult> results(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    if (out.monotone) monotone_pair(curves[i], curves[j], results[k]);
    else closed_pair(curves[i], curves[j], boxes[i], boxes[j], results[k]);
  });
  for (auto& r : results) {
    std::move(r.hits.begin(), r.hits.end(), std::back_inserter(out.hits));
    std::move(r.violations.begin(), r.violations.end(), std::back_inserter(out.violations));
  }

  std::sort(out.hits.begin(), out.hits.end(), [](const RawHit& u, const RawHit& v) {
    if (u.p != v.p) return u.p < v.p;
    return std::pair(u.lo, u.hi) < std::pair(v.lo, v.hi);
  });

  // Triple points.
  for (std::size_t i = 0; i < out.hits.size();) {
    std::size_t j = i;
    std::set<CurveId> through;
    while (j < out.hits.size() && out.hits[j].p == out.hits[i].p) {
      through.insert(out.hits[j].lo);
      through.insert(out.hits[j].hi);
      ++j;
    }
    if (through.size() > 2) {
      out.violations.push_back({ViolationKind::TriplePoint, {through.begin(), through.end()},
                                "curves meet at " + to_string(out.hits[i].p)});
    }
    i = j;
  }

  // A non-crossing contact is only admissible as the pair's single common point.
  std::map<std::pair<CurveId, CurveId>, int> per_pair;
  for (const RawHit& h : out.hits) ++per_pair[{h.lo, h.hi}];
  for (const RawHit& h : out.hits) {
    if (h.cls.touching() && per_pair[{h.lo, h.hi}] > 1) {
      out.violations.push_back({ViolationKind::VertexDegeneracy, {h.lo, h.hi},
                                "tangency at " + to_string(h.p) + " between curves that meet more than once"});
    }
  }
  return out;
}

bool matches(const IntersectionPoint& p, CountKind kind) {
  switch (kind) {
    case CountKind::Touching: return p.is_touching();
    case CountKind::Crossing: return p.is_crossing();
    case CountKind::SameClassCrossing: return p.in_x();
  }
  return false;
}

}  // namespace

GeneralPositionReport validate_general_position(const std::vector<CurveRecord>& curves) {
  GeneralPositionReport report;
  report.violations = compute_all(curves).violations;
  report.ok = report.violations.empty();
  return report;
}

Arrangement build_arrangement(const std::vector<CurveRecord>& curves) {
  Computed computed = compute_all(curves);
  if (!computed.violations.empty()) {
    GeneralPositionReport report;
    report.ok = false;
    report.violations = std::move(computed.violations);
    throw GeneralPositionError(std::move(report));
  }
  std::map<std::pair<CurveId, CurveId>, int> per_pair;
  for (const RawHit& h : computed.hits) ++per_pair[{h.lo, h.hi}];

  Arrangement arr;
  arr.monotone_ = computed.monotone;
  arr.curves_ = curves;
  arr.points_.reserve(computed.hits.size());
  for (const RawHit& h : computed.hits) {
    IntersectionPoint ip;
    ip.id = static_cast<PointId>(arr.points_.size());
    ip.point = h.p;
    ip.curve_lo = h.lo;
    ip.curve_hi = h.hi;
    const bool touching = h.cls.touching() && per_pair[{h.lo, h.hi}] == 1;
    if (touching) {
      ip.category = PointCategory::Touching;
      if (computed.monotone) ip.upper = h.cls.upper == Which::First ? h.lo : h.hi;
    } else {
      const CurveClass cl = curves[static_cast<std::size_t>(h.lo)].cls;
      const CurveClass ch = curves[static_cast<std::size_t>(h.hi)].cls;
      if (cl == CurveClass::Unassigned || ch == CurveClass::Unassigned) ip.category = PointCategory::XUnclassed;
      else if (cl != ch) ip.category = PointCategory::XCross;
      else ip.category = cl == CurveClass::S1 ? PointCategory::X1 : PointCategory::X2;
    }
    arr.points_.push_back(std::move(ip));
  }
  arr.index();
  return arr;
}

void Arrangement::index() {
  touchings_.clear();
  x1_.clear();
  x2_.clear();
  x_cross_.clear();
  touch_index_.clear();
  seqs_.assign(curves_.size(), {});

  for (auto& p : points_) {
    switch (p.category) {
      case PointCategory::Touching:
        touchings_.push_back(p.id);
        touch_index_[{p.curve_lo, p.curve_hi}] = p.id;
        break;
      case PointCategory::X1: x1_.push_back(p.id); break;
      case PointCategory::X2: x2_.push_back(p.id); break;
      case PointCategory::XCross: x_cross_.push_back(p.id); break;
      case PointCategory::XUnclassed: break;
    }
    seqs_[static_cast<std::size_t>(p.curve_lo)].push_back(p.id);
    seqs_[static_cast<std::size_t>(p.curve_hi)].push_back(p.id);
    if (!monotone_ && p.is_touching()) {
      const LocalClass cls = classify_local_closed(curve(p.curve_lo).geometry, curve(p.curve_hi).geometry, p.point);
      p.side_on_lo = cls.side_on_first;
      p.side_on_hi = cls.side_on_second;
    }
  }

  for (std::size_t c = 0; c < curves_.size(); ++c) {
    auto& seq = seqs_[c];
    if (monotone_) {
      std::sort(seq.begin(), seq.end(), [&](PointId u, PointId v) { return point(u).point.x < point(v).point.x; });
    } else {
      const Curve& geom = curves_[c].geometry;
      std::vector<std::pair<CurveLocation, PointId>> keyed;
      keyed.reserve(seq.size());
      for (PointId id : seq) {
        auto loc = locate_on_closed(geom, point(id).point);
        if (!loc) throw std::logic_error("intersection point not on its curve");
        keyed.emplace_back(std::move(*loc), id);
      }
      std::sort(keyed.begin(), keyed.end(), [](const auto& u, const auto& v) {
        if (u.first.index != v.first.index) return u.first.index < v.first.index;
        return u.first.param < v.first.param;
      });
      seq.clear();
      for (auto& [loc, id] : keyed) seq.push_back(id);
      if (geom.traversal_reversed()) std::reverse(seq.begin(), seq.end());
    }
    for (std::size_t i = 0; i < seq.size(); ++i) {
      auto& p = points_[static_cast<std::size_t>(seq[i])];
      (p.curve_lo == static_cast<CurveId>(c) ? p.pos_lo : p.pos_hi) = static_cast<int>(i);
    }
  }

  auto build_prefix = [&](CountKind kind) {
    std::vector<std::vector<int>> out(curves_.size());
    for (std::size_t c = 0; c < curves_.size(); ++c) {
      out[c].assign(seqs_[c].size() + 1, 0);
      for (std::size_t i = 0; i < seqs_[c].size(); ++i) {
        out[c][i + 1] = out[c][i] + (matches(point(seqs_[c][i]), kind) ? 1 : 0);
      }
    }
    return out;
  };
  prefix_t_ = build_prefix(CountKind::Touching);
  prefix_x_ = build_prefix(CountKind::Crossing);
  prefix_xs_ = build_prefix(CountKind::SameClassCrossing);
}

std::size_t Arrangement::same_class_crossing_count() const {
  return static_cast<std::size_t>(std::count_if(points_.begin(), points_.end(),
                                                [](const IntersectionPoint& p) { return p.in_x(); }));
}

int Arrangement::prefix(CurveId c, CountKind kind, int pos) const {
  const auto& table = kind == CountKind::Touching ? prefix_t_ : kind == CountKind::Crossing ? prefix_x_ : prefix_xs_;
  return table.at(static_cast<std::size_t>(c)).at(static_cast<std::size_t>(pos));
}

std::optional<PointId> Arrangement::touching_between(CurveId u, CurveId v) const {
  const auto it = touch_index_.find({std::min(u, v), std::max(u, v)});
  if (it == touch_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Arrangement::class_size(CurveClass c) const {
  return static_cast<std::size_t>(
      std::count_if(curves_.begin(), curves_.end(), [c](const CurveRecord& r) { return r.cls == c; }));
}

std::size_t Arrangement::n() const {
  const std::size_t s1 = class_size(CurveClass::S1);
  const std::size_t s2 = class_size(CurveClass::S2);
  if (s1 == 0 && s2 == 0) return curves_.size();
  return std::max(s1, s2);
}

Rational Arrangement::t_eff() const {
  const std::size_t n_ = n();
  if (n_ == 0) return Rational(0);
  Rational t(static_cast<long>(touchings_.size()), static_cast<long>(n_));
  t.canonicalize();
  return t;
}

Arrangement Arrangement::with_orientations(const std::vector<Orientation>& orientations) const {
  if (orientations.size() != curves_.size()) throw std::invalid_argument("one orientation per curve expected");
  Arrangement out = *this;
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    if (!curves_[i].geometry.is_monotone()) {
      out.curves_[i].geometry = curves_[i].geometry.with_orientation(orientations[i]);
    }
  }
  out.index();
  return out;
}

std::vector<OracleHit> classified_hits(const Arrangement& arr) {
  std::vector<OracleHit> out;
  out.reserve(arr.points().size());
  for (const auto& p : arr.points()) {
    out.push_back({p.point, p.curve_lo, p.curve_hi, p.is_touching(), p.is_touching() ? p.upper : -1});
  }
  std::sort(out.begin(), out.end(), [](const OracleHit& u, const OracleHit& v) {
    if (u.point != v.point) return u.point < v.point;
    return std::pair(u.curve_lo, u.curve_hi) < std::pair(v.curve_lo, v.curve_hi);
  });
  return out;
}

int count_between_monotone(const Arrangement& arr, CurveId curve, const Rational& x_lo, const Rational& x_hi,
                           CountKind kind) {
  if (!arr.curve(curve).geometry.is_monotone()) throw PreconditionError("count_between_monotone needs a monotone curve");
  if (!(x_lo < x_hi)) return 0;
  const auto& seq = arr.sequence(curve);
  const auto x_of = [&](PointId id) -> const Rational& { return arr.point(id).point.x; };
  const auto first = std::upper_bound(seq.begin(), seq.end(), x_lo,
                                      [&](const Rational& x, PointId id) { return x < x_of(id); });
  const auto last = std::lower_bound(seq.begin(), seq.end(), x_hi,
                                     [&](PointId id, const Rational& x) { return x_of(id) < x; });
  if (last <= first) return 0;
  return arr.prefix(curve, kind, static_cast<int>(last - seq.begin())) -
         arr.prefix(curve, kind, static_cast<int>(first - seq.begin()));
}

int count_on_arc_closed(const Arrangement& arr, CurveId curve, PointId from, PointId to, CountKind kind) {
  const Curve& geom = arr.curve(curve).geometry;
  if (geom.kind() != CurveKind::Closed) throw PreconditionError("count_on_arc_closed needs a closed curve");
  if (geom.orientation() == Orientation::Unset) throw PreconditionError("curve orientation is unset");
  const auto& pf = arr.point(from);
  const auto& pt = arr.point(to);
  if (!pf.on(curve) || !pt.on(curve)) throw std::invalid_argument("arc endpoints must lie on the curve");
  const int m = static_cast<int>(arr.sequence(curve).size());
  const int i = pf.position_on(curve);
  const int j = pt.position_on(curve);
  const auto pre = [&](int pos) { return arr.prefix(curve, kind, pos); };
  if (i < j) return pre(j) - pre(i + 1);
  if (i > j) return (pre(m) - pre(i + 1)) + pre(j);
  return pre(m) - (pre(i + 1) - pre(i));
}

std::optional<PointId> next_crossing_of_pair(const Arrangement& arr, CurveId a, CurveId c, PointId after,
                                             NextMode mode, CurveId along) {
  const auto is_pair_crossing = [&](PointId id) {
    const auto& p = arr.point(id);
    return p.is_crossing() && p.on(a) && p.on(c);
  };
  if (mode == NextMode::XOrder) {
    const Rational& x0 = arr.point(after).point.x;
    for (PointId id : arr.sequence(a)) {
      if (x0 < arr.point(id).point.x && is_pair_crossing(id)) return id;
    }
    return std::nullopt;
  }
  if (along != a && along != c) throw std::invalid_argument("along-curve mode needs one of the pair's curves");
  const auto& start = arr.point(after);
  if (!start.on(along)) throw std::invalid_argument("`after` does not lie on the traversed curve");
  const auto& seq = arr.sequence(along);
  const std::size_t m = seq.size();
  const std::size_t i0 = static_cast<std::size_t>(start.position_on(along));
  for (std::size_t step = 1; step < m; ++step) {
    const PointId id = seq[(i0 + step) % m];
    if (is_pair_crossing(id)) return id;
  }
  return std::nullopt;
}

Arrangement orient_closed_family(const Arrangement& arr) {
  std::vector<Orientation> orientations(arr.curves().size(), Orientation::Ccw);
  for (const auto& rec : arr.curves()) {
    if (rec.geometry.kind() != CurveKind::Closed) throw PreconditionError("orient_closed_family needs closed curves");
    bool left = false;
    bool right = false;
    for (PointId id : arr.sequence(rec.id)) {
      const auto& p = arr.point(id);
      if (!p.is_touching()) continue;
      const Side s = p.curve_lo == rec.id ? p.side_on_lo : p.side_on_hi;
      (s == Side::Left ? left : right) = true;
    }
    if (left && right) {
      throw OrientationError("curve " + std::to_string(rec.id) + " is touched from both sides");
    }
    if (!left && !right) continue;
    // Current traversal direction as a geometric orientation.
    const bool stored_ccw = rec.geometry.twice_signed_area() > 0;
    const bool traversal_ccw = rec.geometry.traversal_reversed() ? !stored_ccw : stored_ccw;
    const bool want_ccw = left ? traversal_ccw : !traversal_ccw;
    orientations[static_cast<std::size_t>(rec.id)] = want_ccw ? Orientation::Ccw : Orientation::Cw;
  }
  return arr.with_orientations(orientations);
}

}  // namespace tangency
