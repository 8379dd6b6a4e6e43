#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ribbon/error.hpp"
#include "ribbon/geometry.hpp"

using namespace ribbon;

namespace {

constexpr Orientation ccw = Orientation::CCW;
constexpr Orientation cw = Orientation::CW;

// Signed distance from c to the directed line through p with direction t;
// positive when c lies to the left.
double left_offset(Point2 c, Point2 p, Vec2 t) { return cross(t, c - p); }

}  // namespace

TEST(WrapAngle, RangeAndIdentity) {
  EXPECT_NEAR(wrap_angle(-kPi / 2), 1.5 * kPi, 1e-15);
  EXPECT_NEAR(wrap_angle(5 * kPi), kPi, 1e-12);
  EXPECT_EQ(wrap_angle(0.0), 0.0);
  for (double a = -20.0; a < 20.0; a += 0.37) {
    const double w = wrap_angle(a);
    EXPECT_GE(w, 0.0);
    EXPECT_LT(w, kTwoPi);
    EXPECT_NEAR(std::cos(w), std::cos(a), 1e-12);
    EXPECT_NEAR(std::sin(w), std::sin(a), 1e-12);
  }
}

TEST(CommonTangent, ExternalIsParallelToCentreLine) {
  const UnitCircle a{{0, 0}}, b{{5, 0}};
  const TangentLine t = common_tangent(a, ccw, b, ccw);
  EXPECT_EQ(t.kind, TangentKind::External);
  EXPECT_NEAR(t.length(), 5.0, 1e-12);
  EXPECT_NEAR(t.direction.x, 1.0, 1e-12);
  // CCW travel keeps the disk on the left.
  EXPECT_NEAR(t.from.y, -1.0, 1e-12);
  EXPECT_NEAR(t.to.y, -1.0, 1e-12);

  const TangentLine r = common_tangent(a, cw, b, cw);
  EXPECT_NEAR(r.from.y, 1.0, 1e-12);
}

TEST(CommonTangent, InternalLengthFollowsPythagoras) {
  for (double d : {2.0, 2.5, 3.0, 7.25}) {
    const UnitCircle a{{0, 0}}, b{{d, 0}};
    const TangentLine t = common_tangent(a, ccw, b, cw);
    EXPECT_EQ(t.kind, TangentKind::Internal);
    EXPECT_NEAR(t.length(), std::sqrt(d * d - 4.0), 1e-12) << d;
  }
}

TEST(CommonTangent, TouchesBothCirclesOnTheRequestedSides) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pos(-6.0, 6.0);
  int tried = 0;
  while (tried < 200) {
    const UnitCircle a{{pos(rng), pos(rng)}}, b{{pos(rng), pos(rng)}};
    if (distance(a.center, b.center) < 2.05) continue;
    ++tried;
    for (Orientation oa : {ccw, cw})
      for (Orientation ob : {ccw, cw}) {
        const TangentLine t = common_tangent(a, oa, b, ob);
        EXPECT_NEAR(norm(t.direction), 1.0, 1e-12);
        EXPECT_NEAR(distance(t.from, a.center), 1.0, 1e-12);
        EXPECT_NEAR(distance(t.to, b.center), 1.0, 1e-12);
        EXPECT_NEAR(dot(t.direction, t.from - a.center), 0.0, 1e-12);
        EXPECT_NEAR(dot(t.direction, t.to - b.center), 0.0, 1e-12);
        EXPECT_NEAR(dot(t.to - t.from, t.direction), t.length(), 1e-9);
        EXPECT_NEAR(left_offset(a.center, t.from, t.direction), sign(oa), 1e-12);
        EXPECT_NEAR(left_offset(b.center, t.to, t.direction), sign(ob), 1e-12);
      }
  }
}

TEST(CommonTangent, InternalThrowsWhenCirclesOverlap) {
  const UnitCircle a{{0, 0}}, b{{1.5, 0}};
  try {
    common_tangent(a, ccw, b, cw);
    FAIL() << "expected InternalTangentInfeasible";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InternalTangentInfeasible);
  }
  EXPECT_NO_THROW(common_tangent(a, ccw, b, ccw));
}

TEST(CommonTangent, TouchingCirclesDegenerateToContactPoint) {
  const UnitCircle a{{0, 0}}, b{{2, 0}};
  const TangentLine t = common_tangent(a, ccw, b, cw);
  EXPECT_NEAR(t.length(), 0.0, 1e-12);
  EXPECT_NEAR(t.from.x, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(t.direction.y), 1.0, 1e-12);
}

TEST(ArcBetween, SweepSignFollowsOrientation) {
  const UnitCircle c{{1, 1}};
  const Arc a = arc_between(c, ccw, 0.0, kPi / 2);
  EXPECT_NEAR(a.sweep, kPi / 2, 1e-15);
  const Arc b = arc_between(c, cw, 0.0, kPi / 2);
  EXPECT_NEAR(b.sweep, -1.5 * kPi, 1e-15);
  EXPECT_NEAR(b.length(), 1.5 * kPi, 1e-15);
  EXPECT_NEAR(distance(a.end_point(), Point2{1, 2}), 0.0, 1e-12);
  EXPECT_NEAR(distance(b.end_point(), Point2{1, 2}), 0.0, 1e-12);
}

TEST(Arc, TangentIsUnitAndMatchesFiniteDifference) {
  const Arc a{{0.5, -2}, 0.3, -2.2};
  const double h = 1e-6;
  for (double s = 0.1; s < a.length(); s += 0.4) {
    const Vec2 fd = (a.point_at(s + h) - a.point_at(s - h)) / (2 * h);
    EXPECT_NEAR(norm(a.tangent_at(s)), 1.0, 1e-12);
    EXPECT_NEAR(distance(fd, a.tangent_at(s)), 0.0, 1e-8);
  }
}

TEST(IntersectPieces, SegmentsCrossAtKnownPoint) {
  const Piece a = Segment({0, 0}, {4, 4});
  const Piece b = Segment({0, 4}, {4, 0});
  const auto x = intersect_pieces(a, b);
  ASSERT_EQ(x.points.size(), 1u);
  EXPECT_TRUE(x.points[0].transverse);
  EXPECT_NEAR(x.points[0].point.x, 2.0, 1e-12);
  EXPECT_NEAR(x.points[0].point.y, 2.0, 1e-12);
  EXPECT_NEAR(x.points[0].offset_a, 2.0 * std::sqrt(2.0), 1e-12);
}

TEST(IntersectPieces, DisjointAndCollinearSegments) {
  EXPECT_TRUE(intersect_pieces(Segment({0, 0}, {1, 0}), Segment({0, 1}, {1, 1})).empty());
  const auto x = intersect_pieces(Segment({0, 0}, {3, 0}), Segment({1, 0}, {5, 0}));
  ASSERT_EQ(x.overlaps.size(), 1u);
  EXPECT_NEAR(x.overlaps[0].a_end - x.overlaps[0].a_begin, 2.0, 1e-12);
}

TEST(IntersectPieces, ArcAndSegmentTangency) {
  const Piece arc = Arc{{0, 0}, 0.0, kPi};
  const Piece seg = Segment({-2, 1}, {2, 1});
  const auto x = intersect_pieces(arc, seg);
  ASSERT_EQ(x.points.size(), 1u);
  EXPECT_FALSE(x.points[0].transverse);
  EXPECT_NEAR(x.points[0].point.x, 0.0, 1e-9);
}

TEST(IntersectPieces, CirclesMeetAtClosedFormPoints) {
  // Unit circles at distance 1.2 meet at x = 0.6, y = +-0.8.
  const Piece a = Arc{{0, 0}, -kPi, 2 * kPi - 1e-3};
  const Piece b = Arc{{1.2, 0}, 0.0, 2 * kPi - 1e-3};
  const auto x = intersect_pieces(a, b);
  ASSERT_EQ(x.points.size(), 2u);
  for (const auto& p : x.points) {
    EXPECT_TRUE(p.transverse);
    EXPECT_NEAR(p.point.x, 0.6, 1e-12);
    EXPECT_NEAR(std::abs(p.point.y), 0.8, 1e-12);
  }
}

TEST(DistancePointPiece, SegmentAndArc) {
  const Piece seg = Segment({0, 0}, {2, 0});
  EXPECT_NEAR(distance_point_piece({1, 3}, seg), 3.0, 1e-15);
  EXPECT_NEAR(distance_point_piece({5, 4}, seg), 5.0, 1e-15);
  const Piece arc = Arc{{0, 0}, 0.0, kPi / 2};
  EXPECT_NEAR(distance_point_piece({2, 2}, arc), 2.0 * std::sqrt(2.0) - 1.0, 1e-12);
  EXPECT_NEAR(distance_point_piece({0, -3}, arc), std::sqrt(10.0), 1e-12);
  EXPECT_NEAR(closest_offset({3, 3}, arc), kPi / 4, 1e-12);
}

TEST(OffsetPiece, UnitArcsBecomeRadiusZeroAndTwo) {
  const Piece ccw_arc = Arc{{0, 0}, 0.0, 1.0};
  const auto inner = std::get<CircularArc>(offset_piece(ccw_arc, 1.0));
  const auto outer = std::get<CircularArc>(offset_piece(ccw_arc, -1.0));
  EXPECT_EQ(inner.radius, 0.0);
  EXPECT_EQ(outer.radius, 2.0);
  const Piece cw_arc = Arc{{0, 0}, 0.0, -1.0};
  EXPECT_EQ(std::get<CircularArc>(offset_piece(cw_arc, 1.0)).radius, 2.0);

  const Piece seg = Segment({0, 0}, {3, 0});
  const auto s = std::get<Segment>(offset_piece(seg, 1.0));
  EXPECT_NEAR(s.p.y, 1.0, 1e-15);
  EXPECT_NEAR(s.q.x, 3.0, 1e-15);
}
