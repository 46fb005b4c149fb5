#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <random>

#include "fixtures.hpp"
#include "tangency/arrangement.hpp"
#include "tangency/generators.hpp"

using namespace tangency;
using tangency::testing::P;
using tangency::testing::square;
using tangency::testing::v_instance;
using tangency::testing::v_instance_open;

TEST(Arrangement, VInstance) {
  for (const auto& family : {v_instance(), v_instance_open()}) {
    const Arrangement arr = build_arrangement(family);
    ASSERT_EQ(arr.points().size(), 3u);
    ASSERT_EQ(arr.touchings().size(), 2u);
    ASSERT_EQ(arr.x1().size(), 1u);
    EXPECT_TRUE(arr.x2().empty());
    EXPECT_TRUE(arr.x_cross().empty());

    const auto& q = arr.point(arr.x1()[0]);
    EXPECT_EQ(q.point, P(2, 2));
    EXPECT_EQ(q.curve_lo, 0);
    EXPECT_EQ(q.curve_hi, 2);
    const auto ab = arr.touching_between(0, 1);
    const auto cb = arr.touching_between(2, 1);
    ASSERT_TRUE(ab && cb);
    EXPECT_EQ(arr.point(*ab).point, P(0, 0));
    EXPECT_EQ(arr.point(*cb).point, P(4, 0));
    EXPECT_EQ(arr.point(*ab).upper, 0);
    EXPECT_EQ(arr.point(*cb).upper, 2);
    EXPECT_FALSE(arr.touching_between(0, 2));
    EXPECT_EQ(arr.n(), 2u);
    EXPECT_EQ(arr.t_eff(), 1);
    EXPECT_TRUE(validate_general_position(family).ok);
  }
}

TEST(Arrangement, SingleCurveAndTwoLines) {
  const Arrangement one = build_arrangement({{0, CurveClass::Unassigned, Curve::bi_infinite({P(0, 0)}, 1, 1)}});
  EXPECT_TRUE(one.points().empty());

  const Arrangement two = build_arrangement({{0, CurveClass::Unassigned, Curve::bi_infinite({P(0, 0)}, 1, 1)},
                                             {1, CurveClass::Unassigned, Curve::bi_infinite({P(0, 0)}, -1, -1)}});
  ASSERT_EQ(two.points().size(), 1u);
  EXPECT_EQ(two.points()[0].point, P(0, 0));
  EXPECT_EQ(two.points()[0].category, PointCategory::XUnclassed);
  EXPECT_TRUE(two.touchings().empty());
}

TEST(Oracle, VInstanceAndEmpty) {
  const auto family = v_instance();
  EXPECT_EQ(brute_force_intersections(family), classified_hits(build_arrangement(family)));
  EXPECT_EQ(brute_force_intersections(family).size(), 3u);
  EXPECT_TRUE(brute_force_intersections({}).empty());
}

TEST(Oracle, AgreesOnSeededFamilies) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto poly = gen_random_polylines(6 + static_cast<int>(seed % 5), 10 + static_cast<int>(seed % 20), seed);
    EXPECT_EQ(brute_force_intersections(poly), classified_hits(build_arrangement(poly))) << "polylines seed " << seed;
  }
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto comb = gen_comb(6, 6, 3, seed);
    EXPECT_EQ(brute_force_intersections(comb), classified_hits(build_arrangement(comb))) << "comb seed " << seed;
    const auto convex = gen_convex_family(4, seed);
    EXPECT_EQ(brute_force_intersections(convex), classified_hits(build_arrangement(convex))) << "convex seed " << seed;
  }
}

TEST(Oracle, RejectsMixedFamilies) {
  std::vector<CurveRecord> mixed = {{0, CurveClass::Unassigned, square(0, 0, 2)},
                                    {1, CurveClass::Unassigned, Curve::bi_infinite({P(0, 1)}, 0, 0)}};
  EXPECT_THROW(brute_force_intersections(mixed), std::invalid_argument);
  EXPECT_THROW(build_arrangement(mixed), std::invalid_argument);
}

TEST(GeneralPosition, Violations) {
  std::vector<CurveRecord> three = {
      {0, CurveClass::Unassigned, Curve::bi_infinite({P(0, 0)}, 1, 1)},
      {1, CurveClass::Unassigned, Curve::bi_infinite({P(0, 0)}, -1, -1)},
      {2, CurveClass::Unassigned, Curve::bi_infinite({P(0, 0)}, 2, 2)},
  };
  auto report = validate_general_position(three);
  ASSERT_FALSE(report.ok);
  EXPECT_EQ(report.violations[0].kind, ViolationKind::TriplePoint);
  EXPECT_THROW(build_arrangement(three), GeneralPositionError);

  const Curve poly = Curve::open({P(0, 0), P(1, 2), P(3, 1)});
  report = validate_general_position({{0, CurveClass::Unassigned, poly}, {1, CurveClass::Unassigned, poly}});
  ASSERT_FALSE(report.ok);
  EXPECT_EQ(report.violations[0].kind, ViolationKind::InfiniteOverlap);

  // Crossing exactly at an endpoint of an open curve.
  report = validate_general_position({{0, CurveClass::Unassigned, Curve::open({P(0, 0), P(2, 2)})},
                                      {1, CurveClass::Unassigned, Curve::open({P(-1, 2), P(1, 0), P(2, 0)})}});
  EXPECT_TRUE(report.ok);
  report = validate_general_position({{0, CurveClass::Unassigned, Curve::open({P(0, 0), P(2, 2)})},
                                      {1, CurveClass::Unassigned, Curve::open({P(-1, 1), P(1, -1)})}});
  ASSERT_FALSE(report.ok);
  EXPECT_EQ(report.violations[0].kind, ViolationKind::VertexDegeneracy);
}

TEST(CountBetween, Examples) {
  const Arrangement arr = build_arrangement(v_instance());
  EXPECT_EQ(count_between_monotone(arr, 0, Rational(0), Rational(2), CountKind::Touching), 0);
  EXPECT_EQ(count_between_monotone(arr, 0, Rational(-1), Rational(3), CountKind::Touching), 1);
  EXPECT_EQ(count_between_monotone(arr, 1, Rational(-1), Rational(5), CountKind::Touching), 2);
  EXPECT_EQ(count_between_monotone(arr, 0, Rational(1), Rational(1), CountKind::Crossing), 0);
  EXPECT_EQ(count_between_monotone(arr, 0, Rational(1), Rational(3), CountKind::SameClassCrossing), 1);

  // One comb touching all four lines at x close to 0, 1, 2, 3.
  const Arrangement comb = build_arrangement(gen_comb(4, 1, 4, 5));
  EXPECT_EQ(count_between_monotone(comb, 0, make_rational(-1, 2), make_rational(5, 2), CountKind::Touching), 3);
}

TEST(NextCrossing, Monotone) {
  const Arrangement arr = build_arrangement(v_instance());
  const PointId q = arr.x1()[0];
  EXPECT_FALSE(next_crossing_of_pair(arr, 0, 2, q, NextMode::XOrder));

  const Arrangement lines = build_arrangement({{0, CurveClass::Unassigned, Curve::bi_infinite({P(0, 0)}, 1, 1)},
                                               {1, CurveClass::Unassigned, Curve::bi_infinite({P(0, 0)}, -1, -1)},
                                               {2, CurveClass::Unassigned, Curve::bi_infinite({P(-5, -3)}, 0, 0)}});
  // Start from a point of line 0 left of its crossing with line 1.
  const auto left = std::find_if(lines.points().begin(), lines.points().end(),
                                 [](const IntersectionPoint& p) { return p.on(0) && p.on(2); });
  ASSERT_NE(left, lines.points().end());
  const auto next = next_crossing_of_pair(lines, 0, 1, left->id, NextMode::XOrder);
  ASSERT_TRUE(next);
  EXPECT_EQ(lines.point(*next).point, P(0, 0));
}

TEST(NextCrossing, ClosedIsCyclic) {
  Arrangement arr = build_arrangement({{0, CurveClass::S1, square(0, 0, 4)}, {1, CurveClass::S1, square(2, 1, 4)}});
  arr = orient_closed_family(arr);
  ASSERT_EQ(arr.points().size(), 2u);
  const PointId q = 0;
  const PointId q2 = 1;
  EXPECT_EQ(next_crossing_of_pair(arr, 0, 1, q, NextMode::AlongCurve, 1), q2);
  EXPECT_EQ(next_crossing_of_pair(arr, 0, 1, q2, NextMode::AlongCurve, 1), q);
}

TEST(Prefix, MatchesDirectRecount) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Arrangement arr = build_arrangement(gen_comb(8, 8, 4, seed));
    for (int trial = 0; trial < 1000; ++trial) {
      const CurveId c = static_cast<CurveId>(rng() % arr.curves().size());
      const auto& seq = arr.sequence(c);
      const int pos = static_cast<int>(rng() % (seq.size() + 1));
      int t = 0, x = 0, xs = 0;
      for (int i = 0; i < pos; ++i) {
        const auto& p = arr.point(seq[static_cast<std::size_t>(i)]);
        t += p.is_touching();
        x += p.is_crossing();
        xs += p.in_x();
      }
      ASSERT_EQ(arr.prefix(c, CountKind::Touching, pos), t);
      ASSERT_EQ(arr.prefix(c, CountKind::Crossing, pos), x);
      ASSERT_EQ(arr.prefix(c, CountKind::SameClassCrossing, pos), xs);
    }
    for (const auto& rec : arr.curves()) {
      const auto& seq = arr.sequence(rec.id);
      for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        EXPECT_LT(arr.point(seq[i]).point.x, arr.point(seq[i + 1]).point.x);
      }
    }
  }
}

TEST(Touchings, PairsShareExactlyOnePoint) {
  const Arrangement arr = build_arrangement(gen_comb(6, 6, 3, 9));
  for (PointId t : arr.touchings()) {
    const auto& p = arr.point(t);
    const auto shared = std::count_if(arr.points().begin(), arr.points().end(), [&](const IntersectionPoint& r) {
      return r.on(p.curve_lo) && r.on(p.curve_hi);
    });
    EXPECT_EQ(shared, 1);
  }
}

TEST(ClosedArcs, PartitionIdentity) {
  const Arrangement arr = orient_closed_family(build_arrangement(gen_bipartite_closed_small(2)));
  for (const auto& rec : arr.curves()) {
    const auto& seq = arr.sequence(rec.id);
    const int total = static_cast<int>(seq.size());
    for (PointId p : seq) {
      for (PointId q : seq) {
        if (p == q) continue;
        auto all = [&](PointId from, PointId to) {
          return count_on_arc_closed(arr, rec.id, from, to, CountKind::Touching) +
                 count_on_arc_closed(arr, rec.id, from, to, CountKind::Crossing);
        };
        EXPECT_EQ(all(p, q) + all(q, p) + 2, total);
      }
      EXPECT_EQ(count_on_arc_closed(arr, rec.id, p, p, CountKind::Touching) + arr.point(p).is_touching(),
                arr.prefix(rec.id, CountKind::Touching, total));
    }
  }
}

TEST(ClosedArcs, AdjacentTouchingsHaveEmptyArc) {
  const Arrangement arr = orient_closed_family(build_arrangement(gen_bipartite_closed_small(2)));
  std::vector<PointId> touches;
  for (PointId id : arr.sequence(0)) {
    if (arr.point(id).is_touching()) touches.push_back(id);
  }
  ASSERT_EQ(touches.size(), 2u);
  EXPECT_EQ(count_on_arc_closed(arr, 0, touches[0], touches[1], CountKind::Touching), 0);
  EXPECT_EQ(count_on_arc_closed(arr, 0, touches[1], touches[0], CountKind::Touching), 0);
}

TEST(Orientation, SmallInstancesPutTouchingsOnTheLeft) {
  for (int n : {1, 2}) {
    const Arrangement arr = orient_closed_family(build_arrangement(gen_bipartite_closed_small(n)));
    for (const auto& rec : arr.curves()) EXPECT_NE(rec.geometry.orientation(), Orientation::Unset);
    for (PointId t : arr.touchings()) {
      EXPECT_EQ(arr.point(t).side_on_lo, Side::Left);
      EXPECT_EQ(arr.point(t).side_on_hi, Side::Left);
    }
  }
}

TEST(Orientation, UntouchedCurveIsCounterClockwise) {
  const Arrangement arr = orient_closed_family(build_arrangement({{0, CurveClass::S1, square(0, 0, 4)},
                                                                 {1, CurveClass::S1, square(2, 1, 4)}}));
  for (const auto& rec : arr.curves()) EXPECT_EQ(rec.geometry.orientation(), Orientation::Ccw);
}

TEST(Orientation, TwoSidedTouchingIsRejected) {
  const std::vector<CurveRecord> family = {
      {0, CurveClass::S1, square(0, 0, 10)},
      {1, CurveClass::S2, Curve::closed({P(5, 10), P(8, 13), P(2, 13)})},
      {2, CurveClass::S2, Curve::closed({P(5, 0), P(7, 3), P(3, 3)})},
  };
  const Arrangement arr = build_arrangement(family);
  ASSERT_EQ(arr.touchings().size(), 2u);
  EXPECT_THROW(orient_closed_family(arr), OrientationError);
}

TEST(Determinism, ThreadCountDoesNotChangeTheArrangement) {
  const auto family = gen_random_polylines(10, 30, 17);
  setenv("TANGENCY_CHARGE_THREADS", "1", 1);
  const auto one = classified_hits(build_arrangement(family));
  setenv("TANGENCY_CHARGE_THREADS", "7", 1);
  const auto seven = classified_hits(build_arrangement(family));
  unsetenv("TANGENCY_CHARGE_THREADS");
  EXPECT_EQ(one, seven);
}
