#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "ribbon/catalog.hpp"
#include "ribbon/diagram.hpp"
#include "ribbon/error.hpp"

using namespace ribbon;

namespace {

constexpr Orientation ccw = Orientation::CCW;
constexpr Orientation cw = Orientation::CW;

Diagram one_loop(std::vector<Disk> disks, std::vector<ItineraryStop> stops) {
  Diagram d;
  d.config = DiskConfig(std::move(disks));
  d.loops.push_back({std::move(stops)});
  return d;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::ParseError;
}

std::vector<std::string> fixed_names() {
  std::vector<std::string> out;
  for (const auto& n : catalog_names()) out.push_back(n);
  for (const char* n : {"family1(2)", "family1(3)", "family2(2)", "family2(3)"}) out.push_back(n);
  return out;
}

}  // namespace

TEST(Validate, RejectsBrokenDiagrams) {
  EXPECT_EQ(code_of([] { validate(one_loop({{"A", {0, 0}}, {"A", {3, 0}}}, {{"A", ccw}})); }),
            ErrorCode::ValidationError);
  EXPECT_EQ(code_of([] { validate(one_loop({{"A", {0, 0}}, {"B", {1.5, 0}}}, {{"A", ccw}, {"B", ccw}})); }),
            ErrorCode::ValidationError);
  EXPECT_EQ(code_of([] { validate(one_loop({{"A", {0, 0}}}, {{"D9", ccw}})); }), ErrorCode::UnknownDisk);
  EXPECT_EQ(code_of([] { validate(one_loop({{"A", {0, 0}}}, {})); }), ErrorCode::ValidationError);
  EXPECT_EQ(code_of([] { validate(one_loop({{"A", {0, 0}}, {"B", {4, 0}}}, {{"A", ccw}})); }),
            ErrorCode::ValidationError);
  EXPECT_NO_THROW(validate(one_loop({{"A", {0, 0}}, {"B", {2, 0}}}, {{"A", ccw}, {"B", ccw}})));
}

TEST(Realize, SingleDiskIsFullCircle) {
  const auto d = one_loop({{"A", {3, -1}}}, {{"A", cw}});
  const CsCurve c = realize(d.config, d.loops[0]);
  EXPECT_NEAR(c.length(), kTwoPi, 1e-12);
  EXPECT_EQ(turning_number(c), -1);
}

TEST(Realize, StadiumLengthIsTwiceDistancePlusTwoPi) {
  for (double dist : {2.0, 2.7, 5.0, 11.3}) {
    const auto d = one_loop({{"A", {0, 0}}, {"B", {dist, 0}}}, {{"A", ccw}, {"B", ccw}});
    EXPECT_NEAR(total_length(d), 2 * dist + kTwoPi, 1e-12) << dist;
  }
}

// Oracle for the figure-eight around two disks: two internal tangents of
// length sqrt(d^2-4) and two arcs of pi + 2 asin(2/d).
TEST(Realize, FigureEightMatchesClosedForm) {
  for (double dist : {2.0, 2.3, 3.0, 6.0}) {
    const auto d = one_loop({{"A", {0, 0}}, {"B", {dist, 0}}}, {{"A", ccw}, {"B", cw}});
    const double expect = 2 * std::sqrt(dist * dist - 4) + 2 * (kPi + 2 * std::asin(2 / dist));
    EXPECT_NEAR(total_length(d), expect, 1e-12) << dist;
    EXPECT_EQ(turning_number(realize_all(d)[0]), 0);
  }
}

// Taut loop around the convex hull: perimeter plus 2pi.
TEST(Realize, ConvexLoopLengthIsPerimeterPlusTwoPi) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> r(3.0, 6.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 5;
    std::vector<Disk> disks;
    std::vector<ItineraryStop> stops;
    double perimeter = 0.0;
    for (int k = 0; k < n; ++k) {
      const double a = kTwoPi * k / n;
      disks.push_back({"D" + std::to_string(k), r(rng) * unit_at(a)});
      stops.push_back({disks.back().id, ccw});
    }
    for (int k = 0; k < n; ++k) perimeter += distance(disks[k].center, disks[(k + 1) % n].center);
    auto d = one_loop(disks, stops);
    if (!d.config.feasible()) continue;
    // Only star-shaped inputs that are actually convex give the oracle.
    bool convex = true;
    for (int k = 0; k < n; ++k) {
      const Vec2 e1 = disks[(k + 1) % n].center - disks[k].center;
      const Vec2 e2 = disks[(k + 2) % n].center - disks[(k + 1) % n].center;
      convex = convex && cross(e1, e2) > 0;
    }
    if (!convex) continue;
    EXPECT_NEAR(total_length(d), perimeter + kTwoPi, 1e-10);
  }
}

TEST(Realize, TwistBetweenTouchingDisks) {
  const auto d = one_loop({{"A", {0, 0}}, {"B", {2, 0}}}, {{"A", ccw}, {"B", cw}});
  EXPECT_NEAR(total_length(d), 2 * kTwoPi, 1e-12);
}

TEST(Realize, OverlappingInternalTangentThrows) {
  DiskConfig cfg({{"A", {0, 0}}, {"B", {1.0, 0}}});
  LoopItinerary loop{{{"A", ccw}, {"B", cw}}};
  EXPECT_EQ(code_of([&] { realize(cfg, loop); }), ErrorCode::InfeasibleItinerary);
}

TEST(Realize, JointsAreC1AndSweepIsWholeTurns) {
  for (const auto& name : fixed_names()) {
    const auto e = catalog_get(name);
    for (const auto& c : realize_all(e.diagram)) {
      EXPECT_LT(max_joint_mismatch(c), 1e-9) << name;
      const double turns = signed_sweep(c) / kTwoPi;
      EXPECT_NEAR(turns, std::round(turns), 1e-6) << name;
    }
  }
}

TEST(Realize, TurningNumbers) {
  auto turning = [](const char* n) { return turning_number(realize_all(catalog_get(n).diagram)[0]); };
  EXPECT_EQ(turning("unknot"), 1);
  EXPECT_EQ(turning("twisted-unknot"), 0);
  EXPECT_EQ(turning("trefoil"), 2);
}

TEST(Realize, LengthAndTurningInvariantUnderRigidMotion) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ang(-kPi, kPi), sh(-50, 50);
  for (const auto& name : fixed_names()) {
    const Diagram d = catalog_get(name).diagram;
    const double len = total_length(d);
    const auto base = realize_all(d);
    for (int k = 0; k < 5; ++k) {
      const Diagram m = transformed(d, ang(rng), {sh(rng), sh(rng)});
      EXPECT_NEAR(total_length(m), len, 1e-9) << name;
      const auto moved = realize_all(m);
      for (std::size_t i = 0; i < base.size(); ++i)
        EXPECT_EQ(turning_number(moved[i]), turning_number(base[i])) << name;
    }
  }
}

TEST(CurveWalker, PointsStayOnCurveAndWrap) {
  const auto d = catalog_get("trefoil").diagram;
  const CsCurve c = realize_all(d)[0];
  const CurveWalker w(c);
  EXPECT_NEAR(w.length(), c.length(), 1e-12);
  EXPECT_NEAR(distance(w.point(0.0), w.point(w.length())), 0.0, 1e-9);
  const double h = 1e-6;
  for (double s = 0.05; s < w.length(); s += 0.61) {
    const Vec2 fd = (w.point(s + h) - w.point(s - h)) / (2 * h);
    EXPECT_NEAR(distance(fd, w.tangent(s)), 0.0, 1e-6) << s;
  }
}

TEST(Crossings, CatalogCounts) {
  auto kinds = [](const char* n) {
    std::map<CrossingKind, int> m;
    for (const auto& x : self_crossings(catalog_get(n).diagram)) m[x.kind]++;
    return m;
  };
  EXPECT_TRUE(kinds("unknot").empty());
  EXPECT_EQ(kinds("trefoil")[CrossingKind::Transverse], 3);
  EXPECT_EQ(kinds("hopf")[CrossingKind::TangentialCrossing], 2);
  EXPECT_EQ(kinds("twisted-unknot")[CrossingKind::TangentialCrossing], 1);
  const auto w = kinds("whitehead");
  EXPECT_EQ(w.at(CrossingKind::Transverse) + w.at(CrossingKind::TangentialCrossing), 5);
}

TEST(Crossings, TrefoilCrossingsSitOnTheCentralDisk) {
  // Each lobe meets its neighbours where the lobe tangents pass D0.
  for (const auto& x : self_crossings(catalog_get("trefoil").diagram)) {
    EXPECT_EQ(x.branches.size(), 2u);
    EXPECT_LT(norm(x.point), 2.0);
  }
}

TEST(Transformed, RotatesAboutOrigin) {
  const auto d = one_loop({{"A", {1, 0}}}, {{"A", ccw}});
  const Diagram m = transformed(d, kPi / 2, {1, 1});
  EXPECT_NEAR(m.config[0].center.x, 1.0, 1e-15);
  EXPECT_NEAR(m.config[0].center.y, 2.0, 1e-15);
}
