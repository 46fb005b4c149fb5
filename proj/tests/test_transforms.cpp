#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "tangency/generators.hpp"
#include "tangency/transforms.hpp"

using namespace tangency;
using tangency::testing::P;
using tangency::testing::square;
using tangency::testing::v_instance;
using tangency::testing::v_instance_open;

namespace {

std::vector<OracleHit> crossings_of(const Arrangement& arr) {
  std::vector<OracleHit> out;
  for (const auto& h : classified_hits(arr)) {
    if (!h.touching) out.push_back(h);
  }
  return out;
}

std::vector<Point> touching_points(const Arrangement& arr) {
  std::vector<Point> out;
  for (PointId t : arr.touchings()) out.push_back(arr.point(t).point);
  return out;
}

// Five V curves resting on y = 0 from above and three peaks touching it from
// below: with y = 0 in S1 and the rest in S2, 3 touchings have S1 above and 5
// have S2 above.
std::vector<CurveRecord> three_above_five_below() {
  std::vector<CurveRecord> f;
  f.push_back({0, CurveClass::S1, Curve::bi_infinite({P(0, 0)}, 0, 0)});
  for (long x : {10, 20, 30, 40, 50}) {
    f.push_back({static_cast<CurveId>(f.size()), CurveClass::S2, Curve::bi_infinite({P(x, 0)}, -1, 1)});
  }
  for (long x : {65, 75, 85}) {
    f.push_back({static_cast<CurveId>(f.size()), CurveClass::S2, Curve::bi_infinite({P(x, 0)}, 1, -1)});
  }
  return f;
}

}  // namespace

TEST(Decompose, ConvexShapesGiveTwoPieces) {
  const Curve tri = Curve::closed({P(0, 0), P(5, 1), P(2, 4)});
  EXPECT_EQ(decompose_closed(tri).pieces.size(), 2u);
  const Curve hex = Curve::closed({P(10, 1), P(5, 9), P(-4, 8), P(-11, 0), P(-6, -9), P(4, -8)});
  const auto d = decompose_closed(hex);
  EXPECT_EQ(d.pieces.size(), 2u);
  EXPECT_EQ(d.cut_count, 2);
  for (const auto& piece : d.pieces) EXPECT_EQ(piece.curve.kind(), CurveKind::Open);
}

TEST(Decompose, NonConvexCountsExtrema) {
  const Curve e = Curve::closed({P(0, 0), P(10, -1), P(11, 1), P(3, 2), P(11, 3), P(4, 4), P(12, 5), P(10, 7), P(-1, 6)});
  const auto d = decompose_closed(e);
  EXPECT_EQ(d.pieces.size(), 6u);
  EXPECT_EQ(d.cut_count, 6);
  EXPECT_EQ(reassemble_pieces(d), e);
}

TEST(Decompose, ReassemblyIsExact) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (const auto& rec : gen_convex_family(5, seed)) {
      for (Orientation o : {Orientation::Unset, Orientation::Cw, Orientation::Ccw}) {
        const Curve c = rec.geometry.with_orientation(o);
        const auto d = decompose_closed(c, rec.id);
        EXPECT_EQ(reassemble_pieces(d), c);
        for (const auto& piece : d.pieces) EXPECT_EQ(piece.source, rec.id);
      }
    }
  }
}

TEST(Decompose, VerticalEdgeNeedsShear) {
  const Curve sq = square(0, 0, 4);
  EXPECT_THROW(decompose_closed(sq), GeometryError);
  const ShearResult s = auto_shear({{0, CurveClass::Unassigned, sq}});
  EXPECT_GT(s.eps, 0);
  EXPECT_EQ(decompose_closed(s.family[0].geometry).pieces.size(), 2u);

  const auto family = gen_convex_family(3, 2);
  const ShearResult none = auto_shear(family);
  EXPECT_EQ(none.eps, 0);
  for (std::size_t i = 0; i < family.size(); ++i) EXPECT_EQ(none.family[i].geometry, family[i].geometry);
}

TEST(Shear, PreservesArrangementStructure) {
  const auto family = gen_bipartite_closed_small(2);
  const ShearResult s = auto_shear(family);
  ASSERT_GT(s.eps, 0);
  const Arrangement before = build_arrangement(family);
  const Arrangement after = build_arrangement(s.family);
  EXPECT_EQ(before.points().size(), after.points().size());
  EXPECT_EQ(before.touchings().size(), after.touchings().size());
  EXPECT_EQ(before.x1().size(), after.x1().size());
  EXPECT_EQ(before.x2().size(), after.x2().size());
}

TEST(Extend, VInstanceKeepsTouchingsAndAddsRayCrossingsOnly) {
  const auto open = v_instance_open();
  const Arrangement before = build_arrangement(open);
  const auto ext = extend_biinfinite(open, CurveClass::S2);
  for (const auto& rec : ext) EXPECT_EQ(rec.geometry.kind(), CurveKind::BiInfinite);
  const Arrangement after = build_arrangement(ext);
  EXPECT_EQ(touching_points(before), touching_points(after));
  for (PointId t : after.touchings()) {
    EXPECT_EQ(after.curve(after.point(t).upper).cls, CurveClass::S1);
  }

  std::set<Point> old_points;
  for (const auto& p : before.points()) old_points.insert(p.point);
  for (const auto& p : after.points()) {
    if (old_points.contains(p.point)) continue;
    const bool on_ray = !open[static_cast<std::size_t>(p.curve_lo)].geometry.in_domain(p.point.x) ||
                        !open[static_cast<std::size_t>(p.curve_hi)].geometry.in_domain(p.point.x);
    EXPECT_TRUE(on_ray) << to_string(p.point);
  }
}

TEST(Extend, AtMostTwoNewCrossingsPerPair) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto family = gen_random_polylines(8, 12, seed);
    for (auto& rec : family) rec.cls = rec.id % 2 == 0 ? CurveClass::S1 : CurveClass::S2;
    const Arrangement before = build_arrangement(family);
    const Arrangement after = build_arrangement(extend_biinfinite(family));
    std::map<std::pair<CurveId, CurveId>, int> delta;
    for (const auto& p : after.points()) delta[{p.curve_lo, p.curve_hi}] += p.is_crossing();
    for (const auto& p : before.points()) delta[{p.curve_lo, p.curve_hi}] -= p.is_crossing();
    for (const auto& [pair, d] : delta) {
      EXPECT_GE(d, 0);
      EXPECT_LE(d, 2) << "pair " << pair.first << "," << pair.second << " seed " << seed;
    }
    EXPECT_EQ(touching_points(before), touching_points(after));
  }
}

TEST(Extend, BiInfiniteFamilyIsUnchanged) {
  const auto family = v_instance();
  const auto ext = extend_biinfinite(family);
  ASSERT_EQ(ext.size(), family.size());
  for (std::size_t i = 0; i < ext.size(); ++i) EXPECT_EQ(ext[i].geometry, family[i].geometry);
}

TEST(Extend, SlopeExceedsEverySegment) {
  const auto family = v_instance_open();
  EXPECT_EQ(extension_slope(family), 2);
}

TEST(Normalize, AlreadyOneSidedIsIdentity) {
  for (const auto& family : {v_instance(), gen_comb(6, 6, 3, 4)}) {
    const NormalizationResult r = normalize_one_sided(build_arrangement(family));
    EXPECT_FALSE(r.swapped);
    EXPECT_EQ(r.removed_touchings, 0);
    ASSERT_EQ(r.curves.size(), family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
      EXPECT_EQ(r.curves[i].geometry, family[i].geometry);
      EXPECT_EQ(r.curves[i].cls, family[i].cls);
    }
  }
}

TEST(Normalize, SwapsWhenTheOtherSideIsLarger) {
  const auto family = three_above_five_below();
  const Arrangement before = build_arrangement(family);
  ASSERT_EQ(before.touchings().size(), 8u);
  const NormalizationResult r = normalize_one_sided(before);
  EXPECT_TRUE(r.swapped);
  EXPECT_EQ(r.retained_touchings, 5);
  EXPECT_EQ(r.removed_touchings, 3);

  const Arrangement after = build_arrangement(r.curves);
  EXPECT_EQ(after.touchings().size(), 5u);
  for (PointId t : after.touchings()) {
    const auto& p = after.point(t);
    EXPECT_EQ(after.curve(p.upper).cls, CurveClass::S1);
    EXPECT_EQ(after.curve(p.other(p.upper)).cls, CurveClass::S2);
  }
  EXPECT_EQ(crossings_of(before), crossings_of(after));
}

TEST(Normalize, PreservesCrossingsOnRandomClassings) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto family = gen_comb(6, 6, 3, seed);
    // Scramble the classes so that some touchings go the wrong way.
    for (auto& rec : family) rec.cls = (rec.id * 7 + static_cast<int>(seed)) % 3 == 0 ? CurveClass::S1 : CurveClass::S2;
    const Arrangement before = build_arrangement(family);
    int cross_class = 0;
    for (PointId t : before.touchings()) {
      const auto& p = before.point(t);
      cross_class += before.curve(p.curve_lo).cls != before.curve(p.curve_hi).cls;
    }
    const NormalizationResult r = normalize_one_sided(before);
    const Arrangement after = build_arrangement(r.curves);
    EXPECT_EQ(crossings_of(before), crossings_of(after)) << "seed " << seed;
    EXPECT_GE(2 * r.retained_touchings, cross_class);
    EXPECT_EQ(static_cast<int>(after.touchings().size()), r.retained_touchings);
    for (PointId t : after.touchings()) EXPECT_EQ(after.curve(after.point(t).upper).cls, CurveClass::S1);
  }
}

TEST(Normalize, RejectsClosedOrUnclassified) {
  EXPECT_THROW(normalize_one_sided(build_arrangement(gen_bipartite_closed_small(1))), PreconditionError);
  EXPECT_THROW(normalize_one_sided(build_arrangement(gen_random_polylines(3, 4, 1))), PreconditionError);
}

TEST(Bipartition, SingleTouchingPairIsSeparated) {
  auto family = v_instance();
  family.pop_back();
  for (auto& rec : family) rec.cls = CurveClass::Unassigned;
  const Bipartition b = random_bipartition(build_arrangement(family), 5);
  EXPECT_EQ(b.cross_touchings, 1);
  EXPECT_NE(b.classes[0], b.classes[1]);
}

TEST(Bipartition, CombFamilyKeepsMoreThanHalf) {
  auto family = gen_comb(8, 8, 4, 1);
  for (auto& rec : family) rec.cls = CurveClass::Unassigned;
  const Arrangement arr = build_arrangement(family);
  ASSERT_EQ(arr.touchings().size(), 32u);
  const Bipartition b = random_bipartition(arr, 42);
  EXPECT_GE(b.cross_touchings, 17);
  EXPECT_EQ(std::count(b.classes.begin(), b.classes.end(), CurveClass::S1), 8);

  const Bipartition again = random_bipartition(arr, 42);
  EXPECT_EQ(b.classes, again.classes);
  EXPECT_EQ(b.attempts, again.attempts);

  const Arrangement classed = build_arrangement(with_classes(family, b.classes));
  int cross = 0;
  for (PointId t : classed.touchings()) {
    const auto& p = classed.point(t);
    cross += classed.curve(p.curve_lo).cls != classed.curve(p.curve_hi).cls;
  }
  EXPECT_EQ(cross, b.cross_touchings);
}

TEST(Bipartition, NeedsTwoCurves) {
  auto family = v_instance();
  family.erase(family.begin() + 1, family.end());
  EXPECT_THROW(random_bipartition(build_arrangement(family), 1), PreconditionError);
}
