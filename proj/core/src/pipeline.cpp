#include "tangency/pipeline.hpp"

#include <algorithm>
#include <set>

#include "tangency/charging_monotone.hpp"
#include "tangency/transforms.hpp"

namespace tangency {

namespace {

// x-distance from `end` to the nearest point of `arr` on `source` lying on
// the segment [end, other], excluding `end` itself.
std::optional<Rational> nearest_event(const Point& end, const Point& other, const Arrangement& arr, CurveId source) {
  const Rational lo = std::min<Rational>(end.x, other.x);
  const Rational hi = std::max<Rational>(end.x, other.x);
  std::optional<Rational> best;
  for (PointId id : arr.sequence(source)) {
    const Point& p = arr.point(id).point;
    if (p == end || p.x < lo || p.x > hi || orientation(end, other, p) != 0) continue;
    Rational d = abs(p.x - end.x);
    if (!best || d < *best) best = std::move(d);
  }
  return best;
}

Point move_toward(const Point& from, const Point& to, const Rational& dx) {
  const Rational t = dx / abs(to.x - from.x);
  return {from.x + t * (to.x - from.x), from.y + t * (to.y - from.y)};
}

Rational trim_amount(const Point& end, const Point& other, const Arrangement& arr, CurveId source) {
  Rational tau = abs(other.x - end.x) / 3;
  if (auto d = nearest_event(end, other, arr, source)) tau = std::min<Rational>(tau, *d / 2);
  return tau;
}

}  // namespace

Curve trim_piece(const Curve& piece, const Arrangement& arr, CurveId source) {
  std::vector<Point> vs = piece.vertices();
  const std::size_t m = vs.size();
  const Rational left = trim_amount(vs[0], vs[1], arr, source);
  const Rational right = trim_amount(vs[m - 1], vs[m - 2], arr, source);
  const Point new_first = move_toward(vs[0], vs[1], left);
  const Point new_last = move_toward(vs[m - 1], vs[m - 2], right);
  vs.front() = new_first;
  vs.back() = new_last;
  return Curve::open(std::move(vs));
}

PipelineResult run_rt_pipeline(const std::vector<CurveRecord>& curves, const PipelineOptions& options) {
  for (const auto& rec : curves) {
    if (rec.geometry.kind() != CurveKind::Closed) {
      throw PreconditionError("pipeline-rt needs closed curves; curve " + std::to_string(rec.id) + " is not closed");
    }
  }
  const Arrangement arr = build_arrangement(curves);

  PipelineResult res;
  res.n = curves.size();
  res.total_intersections = arr.points().size();
  res.touchings = arr.touchings().size();

  std::set<std::pair<CurveId, CurveId>> met;
  for (const auto& p : arr.points()) met.insert({p.curve_lo, p.curve_hi});
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      if (!met.contains({curves[i].id, curves[j].id})) {
        throw PreconditionError("curves " + std::to_string(curves[i].id) + " and " + std::to_string(curves[j].id) +
                                " do not intersect");
      }
    }
  }

  const long n = static_cast<long>(res.n);
  res.bound = n * (n - 1) - static_cast<long>(res.touchings);
  res.report.rows.push_back(exact_row("rt_bound", -1, 0, Relation::Ge, static_cast<long>(res.total_intersections), res.bound));

  ShearResult sheared = auto_shear(curves);
  res.shear_eps = sheared.eps;
  const Arrangement sheared_arr = sheared.eps == 0 ? arr : build_arrangement(sheared.family);

  std::vector<MonotonePiece> pieces;
  for (const auto& rec : sheared.family) {
    DecompositionResult d = decompose_closed(rec.geometry, rec.id);
    res.cut_count += d.cut_count;
    res.max_pieces = std::max(res.max_pieces, static_cast<int>(d.pieces.size()));
    for (auto& piece : d.pieces) pieces.push_back(std::move(piece));
  }
  res.pieces = pieces.size();
  res.report.rows.push_back(exact_row("cut_count", -1, res.max_pieces, Relation::Le, res.cut_count,
                                      static_cast<long>(res.max_pieces) * n));

  const std::size_t threshold = options.touch_threshold.value_or(res.n);
  if (res.touchings < threshold) {
    res.report.summary.notices.push_back("|T| = " + std::to_string(res.touchings) + " is below the threshold " +
                                         std::to_string(threshold) + "; monotone charging not run");
    return res;
  }
  if (pieces.size() < 2) {
    res.report.summary.notices.push_back("fewer than two monotone pieces; monotone charging not run");
    return res;
  }

  std::vector<CurveRecord> family;
  for (const auto& piece : pieces) {
    family.push_back({static_cast<CurveId>(family.size()), CurveClass::Unassigned,
                      trim_piece(piece.curve, sheared_arr, piece.source)});
  }
  try {
    const Arrangement piece_arr = build_arrangement(family);
    const Bipartition split = random_bipartition(piece_arr, options.seed);
    const Arrangement classed = build_arrangement(with_classes(family, split.classes));
    const NormalizationResult norm = normalize_one_sided(classed);
    const Arrangement extended = build_arrangement(extend_biinfinite(norm.curves, CurveClass::S2));
    require_normalized(extended);
    const ChargingGraph graph = build_graph(extended, make_params(extended, options.alpha));
    res.report.append(run_monotone_audits(graph, extended));
    res.charged = true;
    res.report.summary.notices.push_back("pieces: " + std::to_string(family.size()) + ", bipartition attempts: " +
                                         std::to_string(split.attempts) + ", retained touchings: " +
                                         std::to_string(norm.retained_touchings) + " of " +
                                         std::to_string(classed.touchings().size()));
  } catch (const GeneralPositionError& e) {
    res.report.rows.push_back(skipped_row("monotone_chain", -1, 0, e.what()));
  }
  return res;
}

}  // namespace tangency
