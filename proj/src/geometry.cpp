#include "ribbon/geometry.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "ribbon/error.hpp"

namespace ribbon {

double wrap_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

Point2 Arc::point_at(double s) const {
  return center + unit_at(start_angle + direction() * s);
}

Vec2 Arc::tangent_at(double s) const {
  return direction() * perp(unit_at(start_angle + direction() * s));
}

Segment::Segment(Point2 p_, Point2 q_) : p(p_), q(q_) {
  const double len = distance(p, q);
  if (len > 0.0) direction = (q - p) / len;
}

double piece_length(const Piece& piece) {
  return std::visit([](const auto& x) { return x.length(); }, piece);
}
Point2 piece_point(const Piece& piece, double s) {
  return std::visit([s](const auto& x) { return x.point_at(s); }, piece);
}
Vec2 piece_tangent(const Piece& piece, double s) {
  return std::visit([s](const auto& x) { return x.tangent_at(s); }, piece);
}
Point2 piece_start(const Piece& piece) {
  return std::visit([](const auto& x) { return x.start_point(); }, piece);
}
Point2 piece_end(const Piece& piece) {
  return std::visit([](const auto& x) { return x.end_point(); }, piece);
}

TangentLine common_tangent(const UnitCircle& a, Orientation oa, const UnitCircle& b,
                           Orientation ob, double feasibility_tol) {
  const Vec2 v = b.center - a.center;
  const double d = norm(v);
  if (d <= kPointTol) throw Error(ErrorCode::CentersCoincide, "tangent between coincident circles");
  const Vec2 u = v / d;

  TangentLine t;
  if (oa == ob) {
    t.kind = TangentKind::External;
    t.direction = u;
  } else {
    if (d < 2.0 - feasibility_tol)
      throw Error(ErrorCode::InternalTangentInfeasible,
                  "internal tangent needs centre distance >= 2, got " + std::to_string(d));
    t.kind = TangentKind::Internal;
    // Distances within a few ulps of 2 count as touching.
    const double excess = d * d - 4.0;
    const double run = excess < 4e-12 ? 0.0 : std::sqrt(excess);
    t.direction = rotate(u, std::atan2(2.0 * sign(oa), run));
  }
  // The centre lies to the left of the travel direction for CCW motion.
  t.from = a.center - sign(oa) * perp(t.direction);
  t.to = b.center - sign(ob) * perp(t.direction);
  if (t.kind == TangentKind::Internal && dot(t.to - t.from, t.direction) <= 0.0) {
    const Point2 mid = 0.5 * (t.from + t.to);
    t.from = mid;
    t.to = mid;
  }
  return t;
}

Arc arc_between(const UnitCircle& c, Orientation o, double from_angle, double to_angle) {
  const double magnitude = wrap_angle(sign(o) * (to_angle - from_angle));
  return Arc{c.center, from_angle, sign(o) * magnitude};
}

namespace {

// Arc-length offset of the point at polar angle `theta` on the arc, if the
// angle lies within the swept range (with tolerance `tol` in radians).
std::optional<double> arc_offset_of_angle(const Arc& arc, double theta, double tol) {
  double f = wrap_angle(arc.direction() * (theta - arc.start_angle));
  const double len = arc.length();
  if (f <= len + tol) return std::min(f, len);
  if (f >= kTwoPi - tol) return 0.0;
  return std::nullopt;
}

std::optional<double> offset_on_piece(const Piece& piece, Point2 x, double tol) {
  if (const auto* s = std::get_if<Segment>(&piece)) {
    const double len = s->length();
    const double f = dot(x - s->p, s->direction);
    if (f < -tol || f > len + tol) return std::nullopt;
    if (distance(s->point_at(std::clamp(f, 0.0, len)), x) > tol * 10.0) return std::nullopt;
    return std::clamp(f, 0.0, len);
  }
  const auto& a = std::get<Arc>(piece);
  if (std::abs(distance(a.center, x) - 1.0) > tol * 10.0) return std::nullopt;
  return arc_offset_of_angle(a, angle_of(x - a.center), tol);
}

bool is_point_like(const Piece& p, double tol) { return piece_length(p) <= tol; }

bool tangents_transverse(Vec2 ta, Vec2 tb, double tangential_tol) {
  const double angle = std::atan2(std::abs(cross(ta, tb)), std::abs(dot(ta, tb)));
  return angle > tangential_tol;
}

void push_contact(PieceIntersection& out, const Piece& a, const Piece& b, Point2 x,
                  double tangential_tol, double point_tol, std::optional<bool> forced = {}) {
  const auto fa = offset_on_piece(a, x, point_tol);
  const auto fb = offset_on_piece(b, x, point_tol);
  if (!fa || !fb) return;
  for (const auto& c : out.points)
    if (distance(c.point, x) <= point_tol * 10.0) return;
  PieceContact c;
  c.point = x;
  c.offset_a = *fa;
  c.offset_b = *fb;
  c.transverse = forced ? *forced
                        : tangents_transverse(piece_tangent(a, *fa), piece_tangent(b, *fb),
                                              tangential_tol);
  out.points.push_back(c);
}

// Angular sub-range [lo, hi] (offsets along `a`) of arc `a` covered by `b`
// when both lie on the same circle.
void same_circle(PieceIntersection& out, const Arc& a, const Arc& b, double tangential_tol,
                 double point_tol) {
  // Work in a's CCW angular frame relative to its start.
  auto interval_of = [](const Arc& arc) {
    const double lo = arc.sweep >= 0 ? arc.start_angle : arc.start_angle + arc.sweep;
    return std::array<double, 2>{lo, lo + arc.length()};
  };
  const auto ia = interval_of(a);
  const auto ib = interval_of(b);
  const double base = ia[0];
  const double alen = ia[1] - ia[0];
  const double blo = wrap_angle(ib[0] - base);
  const double blen = ib[1] - ib[0];
  // b may wrap past 2pi relative to a's frame, so test both copies.
  for (double shift : {-kTwoPi, 0.0}) {
    const double lo = std::max(0.0, blo + shift);
    const double hi = std::min(alen, blo + shift + blen);
    if (hi < lo - point_tol) continue;
    auto to_offset_a = [&](double rel) { return a.sweep >= 0 ? rel : alen - rel; };
    auto angle_at = [&](double rel) { return base + rel; };
    if (hi - lo <= point_tol) {
      const Point2 x = a.center + unit_at(angle_at(0.5 * (lo + hi)));
      push_contact(out, Piece{a}, Piece{b}, x, tangential_tol, point_tol, false);
      continue;
    }
    PieceOverlap ov;
    ov.a_begin = std::min(to_offset_a(lo), to_offset_a(hi));
    ov.a_end = std::max(to_offset_a(lo), to_offset_a(hi));
    ov.start = a.point_at(ov.a_begin);
    ov.end = a.point_at(ov.a_end);
    const auto b0 = arc_offset_of_angle(b, angle_of(ov.start - b.center), point_tol);
    const auto b1 = arc_offset_of_angle(b, angle_of(ov.end - b.center), point_tol);
    ov.b_begin = b0.value_or(0.0);
    ov.b_end = b1.value_or(b.length());
    out.overlaps.push_back(ov);
  }
}

}  // namespace

double closest_offset(Point2 p, const Piece& piece) {
  if (const auto* s = std::get_if<Segment>(&piece))
    return std::clamp(dot(p - s->p, s->direction), 0.0, s->length());
  const auto& a = std::get<Arc>(piece);
  const Vec2 r = p - a.center;
  if (norm(r) > 0.0) {
    if (auto f = arc_offset_of_angle(a, angle_of(r), 0.0)) return *f;
  }
  // Otherwise the nearest point is one of the end points.
  return distance(p, a.start_point()) <= distance(p, a.end_point()) ? 0.0 : a.length();
}

double distance_point_piece(Point2 p, const Piece& piece) {
  if (const auto* a = std::get_if<Arc>(&piece)) {
    const Vec2 r = p - a->center;
    const double rn = norm(r);
    if (rn > 0.0 && arc_offset_of_angle(*a, angle_of(r), 0.0)) return std::abs(rn - 1.0);
    if (rn == 0.0 && a->length() > 0.0) return 1.0;
  }
  return distance(p, piece_point(piece, closest_offset(p, piece)));
}

PieceIntersection intersect_pieces(const Piece& a, const Piece& b, double tangential_tol,
                                   double point_tol) {
  PieceIntersection out;

  // Degenerate pieces behave as single points.
  if (is_point_like(a, point_tol) || is_point_like(b, point_tol)) {
    const bool a_point = is_point_like(a, point_tol);
    const Point2 x = a_point ? piece_start(a) : piece_start(b);
    push_contact(out, a, b, x, tangential_tol, point_tol);
    return out;
  }

  const auto* sa = std::get_if<Segment>(&a);
  const auto* sb = std::get_if<Segment>(&b);

  if (sa && sb) {
    const double den = cross(sa->direction, sb->direction);
    if (std::abs(den) > tangential_tol) {
      const double t = cross(sb->p - sa->p, sb->direction) / den;
      push_contact(out, a, b, sa->point_at(t), tangential_tol, point_tol);
      return out;
    }
    if (std::abs(cross(sa->direction, sb->p - sa->p)) > point_tol) return out;
    // Collinear: compare projections onto a's direction.
    const double b0 = dot(sb->p - sa->p, sa->direction);
    const double b1 = dot(sb->q - sa->p, sa->direction);
    const double lo = std::max(0.0, std::min(b0, b1));
    const double hi = std::min(sa->length(), std::max(b0, b1));
    if (hi < lo - point_tol) return out;
    if (hi - lo <= point_tol) {
      push_contact(out, a, b, sa->point_at(0.5 * (lo + hi)), tangential_tol, point_tol, false);
      return out;
    }
    PieceOverlap ov;
    ov.a_begin = lo;
    ov.a_end = hi;
    ov.start = sa->point_at(lo);
    ov.end = sa->point_at(hi);
    const double f0 = dot(ov.start - sb->p, sb->direction);
    const double f1 = dot(ov.end - sb->p, sb->direction);
    ov.b_begin = std::clamp(std::min(f0, f1), 0.0, sb->length());
    ov.b_end = std::clamp(std::max(f0, f1), 0.0, sb->length());
    out.overlaps.push_back(ov);
    return out;
  }

  if (sa || sb) {
    const Segment& s = sa ? *sa : *sb;
    const Arc& arc = sa ? std::get<Arc>(b) : std::get<Arc>(a);
    const Vec2 w = s.p - arc.center;
    const double foot = -dot(w, s.direction);
    const Point2 closest = s.point_at(foot);
    const double h = distance(closest, arc.center);
    if (std::abs(h - 1.0) <= point_tol) {
      push_contact(out, a, b, closest, tangential_tol, point_tol, false);
    } else if (h < 1.0) {
      const double half = std::sqrt(1.0 - h * h);
      push_contact(out, a, b, s.point_at(foot - half), tangential_tol, point_tol);
      push_contact(out, a, b, s.point_at(foot + half), tangential_tol, point_tol);
    }
    return out;
  }

  const auto& aa = std::get<Arc>(a);
  const auto& ab = std::get<Arc>(b);
  const Vec2 v = ab.center - aa.center;
  const double d = norm(v);
  if (d <= point_tol) {
    same_circle(out, aa, ab, tangential_tol, point_tol);
    return out;
  }
  if (std::abs(d - 2.0) <= point_tol) {
    push_contact(out, a, b, aa.center + 0.5 * v, tangential_tol, point_tol, false);
  } else if (d < 2.0) {
    const Point2 mid = aa.center + 0.5 * v;
    const double h = std::sqrt(1.0 - 0.25 * d * d);
    const Vec2 n = perp(v / d);
    push_contact(out, a, b, mid + h * n, tangential_tol, point_tol);
    push_contact(out, a, b, mid - h * n, tangential_tol, point_tol);
  }
  return out;
}

OffsetPiece offset_piece(const Piece& piece, double d) {
  if (const auto* s = std::get_if<Segment>(&piece)) {
    const Vec2 shift = d * perp(s->direction);
    return Segment{s->p + shift, s->q + shift, s->direction};
  }
  const auto& a = std::get<Arc>(piece);
  // The left normal of a CCW arc points at its centre.
  const double radius = std::max(0.0, 1.0 - d * a.direction());
  return CircularArc{a.center, radius, a.start_angle, a.sweep};
}

}  // namespace ribbon
