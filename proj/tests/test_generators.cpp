#include <gtest/gtest.h>

#include "tangency/curve_io.hpp"
#include "tangency/generators.hpp"
#include "tangency/transforms.hpp"

using namespace tangency;

TEST(Comb, TouchingCountsAndSides) {
  for (std::uint64_t seed : {1u, 7u, 19u}) {
    const auto family = gen_comb(4, 4, 4, seed);
    ASSERT_EQ(family.size(), 8u);
    const Arrangement arr = build_arrangement(family);
    EXPECT_EQ(arr.touchings().size(), 16u);
    EXPECT_EQ(arr.class_size(CurveClass::S1), 4u);
    EXPECT_EQ(arr.class_size(CurveClass::S2), 4u);
    for (PointId t : arr.touchings()) {
      const auto& p = arr.point(t);
      EXPECT_EQ(arr.curve(p.upper).cls, CurveClass::S1);
    }
    EXPECT_TRUE(arr.x_cross().empty());
  }
}

TEST(Comb, SingleTouching) {
  const Arrangement arr = build_arrangement(gen_comb(1, 1, 1, 3));
  EXPECT_EQ(arr.touchings().size(), 1u);
  EXPECT_TRUE(arr.x1().empty());
  EXPECT_TRUE(arr.x2().empty());
}

TEST(Comb, LargeFamiliesHaveRichCrossings) {
  const Arrangement arr = build_arrangement(gen_comb(16, 16, 8, 2));
  EXPECT_EQ(arr.touchings().size(), 128u);
  EXPECT_EQ(arr.t_eff(), 8);
  EXPECT_GT(arr.x1().size(), 0u);
}

TEST(Comb, InvalidArguments) {
  EXPECT_THROW(gen_comb(3, 2, 4, 1), std::invalid_argument);
  EXPECT_THROW(gen_comb(0, 2, 0, 1), std::invalid_argument);
}

TEST(Generators, SameSeedSameOutput) {
  EXPECT_EQ(curves_to_json(gen_comb(6, 5, 3, 11)), curves_to_json(gen_comb(6, 5, 3, 11)));
  EXPECT_NE(curves_to_json(gen_comb(6, 5, 3, 11)), curves_to_json(gen_comb(6, 5, 3, 12)));
  EXPECT_EQ(curves_to_json(gen_convex_family(5, 4)), curves_to_json(gen_convex_family(5, 4)));
  EXPECT_EQ(curves_to_json(gen_random_polylines(5, 9, 4)), curves_to_json(gen_random_polylines(5, 9, 4)));
}

TEST(Generators, OutputsAreInGeneralPosition) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    EXPECT_TRUE(validate_general_position(gen_comb(8, 6, 5, seed)).ok);
    EXPECT_TRUE(validate_general_position(gen_convex_family(6, seed)).ok);
    EXPECT_TRUE(validate_general_position(gen_random_polylines(10, 20, seed)).ok);
  }
  EXPECT_TRUE(validate_general_position(gen_bipartite_closed_small(1)).ok);
  EXPECT_TRUE(validate_general_position(gen_bipartite_closed_small(2)).ok);
}

TEST(Convex, PairwiseIntersectingTwoPiecesEach) {
  const Arrangement two = build_arrangement(gen_convex_family(2, 1));
  EXPECT_GE(two.points().size(), 2u);

  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto family = gen_convex_family(8, seed);
    const Arrangement arr = build_arrangement(family);
    EXPECT_GE(static_cast<long>(arr.points().size()), 56 - static_cast<long>(arr.touchings().size()));
    const ShearResult s = auto_shear(family);
    for (const auto& rec : s.family) EXPECT_EQ(decompose_closed(rec.geometry).pieces.size(), 2u);
  }
}

TEST(BipartiteSmall, OnlyOneAndTwo) {
  EXPECT_THROW(gen_bipartite_closed_small(3), std::invalid_argument);
  const auto two = gen_bipartite_closed_small(2);
  ASSERT_EQ(two.size(), 4u);
  EXPECT_EQ(two[0].cls, CurveClass::S1);
  EXPECT_EQ(two[3].cls, CurveClass::S2);
}

TEST(RandomPolylines, Shape) {
  const auto family = gen_random_polylines(7, 13, 5);
  ASSERT_EQ(family.size(), 7u);
  for (const auto& rec : family) {
    EXPECT_EQ(rec.geometry.kind(), CurveKind::Open);
    EXPECT_EQ(rec.geometry.vertices().size(), 13u);
    EXPECT_EQ(rec.cls, CurveClass::Unassigned);
  }
}
