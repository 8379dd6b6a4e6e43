#pragma once

#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

namespace ribbon {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tangential-contact tolerance (radians) and point coincidence tolerance
// (plane units) used throughout the kernel.
inline constexpr double kTangentialAngleTol = 1e-8;
inline constexpr double kPointTol = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

using Point2 = Vec2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }
// Counter-clockwise quarter turn.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 rotate(Vec2 a, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}
inline Vec2 unit_at(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

// Reduce an angle into [0, 2pi).
double wrap_angle(double angle);

enum class Orientation : int { CCW = 1, CW = -1 };

constexpr int sign(Orientation o) { return static_cast<int>(o); }
constexpr Orientation opposite(Orientation o) {
  return o == Orientation::CCW ? Orientation::CW : Orientation::CCW;
}

struct UnitCircle {
  Point2 center;
};

// Arc of a unit circle. Angles are measured CCW from +x; the sign of
// `sweep` carries the winding sense.
struct Arc {
  Point2 center;
  double start_angle = 0.0;
  double sweep = 0.0;

  double length() const { return std::abs(sweep); }
  int direction() const { return sweep < 0.0 ? -1 : 1; }
  double end_angle() const { return start_angle + sweep; }
  // Position and unit tangent at arc-length offset `s` from the start.
  Point2 point_at(double s) const;
  Vec2 tangent_at(double s) const;
  Point2 start_point() const { return point_at(0.0); }
  Point2 end_point() const { return point_at(length()); }
};

// Straight piece. `direction` is kept explicitly so that zero-length
// segments (touching internal tangents) still carry a unit direction.
struct Segment {
  Point2 p;
  Point2 q;
  Vec2 direction{1.0, 0.0};

  Segment() = default;
  Segment(Point2 p_, Point2 q_);
  Segment(Point2 p_, Point2 q_, Vec2 dir) : p(p_), q(q_), direction(dir) {}

  double length() const { return distance(p, q); }
  Point2 point_at(double s) const { return p + s * direction; }
  Vec2 tangent_at(double) const { return direction; }
  Point2 start_point() const { return p; }
  Point2 end_point() const { return q; }
};

using Piece = std::variant<Arc, Segment>;

double piece_length(const Piece& piece);
Point2 piece_point(const Piece& piece, double s);
Vec2 piece_tangent(const Piece& piece, double s);
Point2 piece_start(const Piece& piece);
Point2 piece_end(const Piece& piece);

enum class TangentKind { External, Internal };

struct TangentLine {
  Point2 from;  // tangency on the first circle
  Point2 to;    // tangency on the second circle
  TangentKind kind = TangentKind::External;
  Vec2 direction;  // unit direction of travel from `from` to `to`

  double length() const { return distance(from, to); }
  Segment segment() const { return {from, to, direction}; }
};

// Directed tangent leaving `a` in sense `oa` and arriving on `b` in sense
// `ob`. Internal tangents between circles closer than 2 - feasibility_tol
// throw InternalTangentInfeasible; within the tolerance they degenerate to
// the contact point.
TangentLine common_tangent(const UnitCircle& a, Orientation oa, const UnitCircle& b,
                           Orientation ob, double feasibility_tol = kPointTol);

// Arc from `from_angle` to `to_angle` travelling in sense `o`; |sweep| < 2pi.
Arc arc_between(const UnitCircle& c, Orientation o, double from_angle, double to_angle);

double distance_point_piece(Point2 p, const Piece& piece);

// Closest point of the piece to p, as an arc-length offset along the piece.
double closest_offset(Point2 p, const Piece& piece);

struct PieceContact {
  Point2 point;
  bool transverse = true;
  double offset_a = 0.0;  // arc-length offset along the first piece
  double offset_b = 0.0;  // arc-length offset along the second piece
};

// Shared sub-arc or sub-segment of positive length.
struct PieceOverlap {
  double a_begin = 0.0, a_end = 0.0;
  double b_begin = 0.0, b_end = 0.0;
  Point2 start;
  Point2 end;
};

struct PieceIntersection {
  std::vector<PieceContact> points;
  std::vector<PieceOverlap> overlaps;

  bool empty() const { return points.empty() && overlaps.empty(); }
};

PieceIntersection intersect_pieces(const Piece& a, const Piece& b,
                                   double tangential_tol = kTangentialAngleTol,
                                   double point_tol = kPointTol);

// Circular arc of arbitrary radius; produced by offsetting unit arcs.
struct CircularArc {
  Point2 center;
  double radius = 1.0;
  double start_angle = 0.0;
  double sweep = 0.0;

  Point2 point_at_angle(double a) const { return center + radius * unit_at(a); }
};

using OffsetPiece = std::variant<CircularArc, Segment>;

// Parallel curve of a piece at signed distance `d` along its left normal.
// Arcs offset towards their centre by 1 collapse to radius 0.
OffsetPiece offset_piece(const Piece& piece, double d);

}  // namespace ribbon
