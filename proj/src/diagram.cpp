#include "ribbon/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "ribbon/error.hpp"

namespace ribbon {

DiskConfig::DiskConfig(std::vector<Disk> disks) : disks_(std::move(disks)) {}

std::optional<std::size_t> DiskConfig::find(const std::string& id) const {
  for (std::size_t i = 0; i < disks_.size(); ++i)
    if (disks_[i].id == id) return i;
  return std::nullopt;
}

std::size_t DiskConfig::index_of(const std::string& id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorCode::UnknownDisk, "no disk named '" + id + "'");
}

std::vector<Point2> DiskConfig::centers() const {
  std::vector<Point2> out;
  out.reserve(disks_.size());
  for (const auto& d : disks_) out.push_back(d.center);
  return out;
}

void DiskConfig::set_centers(const std::vector<Point2>& centers) {
  for (std::size_t i = 0; i < disks_.size() && i < centers.size(); ++i)
    disks_[i].center = centers[i];
}

double DiskConfig::min_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < disks_.size(); ++i)
    for (std::size_t j = i + 1; j < disks_.size(); ++j)
      best = std::min(best, distance(disks_[i].center, disks_[j].center));
  return best;
}

bool DiskConfig::feasible(double tol) const { return min_separation() >= 2.0 - tol; }

void validate(const Diagram& d) {
  const auto& disks = d.config.disks();
  std::set<std::string> ids;
  for (const auto& disk : disks) {
    if (!std::isfinite(disk.center.x) || !std::isfinite(disk.center.y))
      throw Error(ErrorCode::ValidationError, "disk '" + disk.id + "' has a non-finite centre");
    if (!ids.insert(disk.id).second)
      throw Error(ErrorCode::ValidationError, "duplicate disk id '" + disk.id + "'");
  }
  for (std::size_t i = 0; i < disks.size(); ++i)
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      const double dist = distance(disks[i].center, disks[j].center);
      if (dist < 2.0 - kFeasibilityTol)
        throw Error(ErrorCode::ValidationError,
                    "disks '" + disks[i].id + "' and '" + disks[j].id +
                        "' are closer than 2 (distance " + std::to_string(dist) + ")");
    }
  if (d.loops.empty()) throw Error(ErrorCode::ValidationError, "diagram has no loops");
  std::set<std::string> used;
  for (const auto& loop : d.loops) {
    if (loop.stops.empty()) throw Error(ErrorCode::ValidationError, "empty loop itinerary");
    for (const auto& stop : loop.stops) {
      if (!ids.count(stop.disk))
        throw Error(ErrorCode::UnknownDisk, "loop references unknown disk '" + stop.disk + "'");
      used.insert(stop.disk);
    }
  }
  for (const auto& disk : disks)
    if (!used.count(disk.id))
      throw Error(ErrorCode::ValidationError, "disk '" + disk.id + "' is not used by any loop");
}

double CsCurve::length() const { return curve_length(*this); }

CsCurve realize(const DiskConfig& config, const LoopItinerary& loop) {
  const std::size_t n = loop.stops.size();
  if (n == 0) throw Error(ErrorCode::InfeasibleItinerary, "empty itinerary");

  CsCurve curve;
  curve.stop_disks.reserve(n);
  for (const auto& stop : loop.stops) curve.stop_disks.push_back(config.index_of(stop.disk));

  if (n == 1) {
    const UnitCircle c{config[curve.stop_disks[0]].center};
    const int o = sign(loop.stops[0].orient);
    Arc full{c.center, 0.0, o * kTwoPi};
    curve.pieces.emplace_back(full);
    curve.pieces.emplace_back(Segment{full.start_point(), full.start_point(), full.tangent_at(0)});
    return curve;
  }

  std::vector<TangentLine> tangents;
  tangents.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = loop.stops[i];
    const auto& b = loop.stops[(i + 1) % n];
    try {
      tangents.push_back(common_tangent(UnitCircle{config[curve.stop_disks[i]].center}, a.orient,
                                        UnitCircle{config[curve.stop_disks[(i + 1) % n]].center},
                                        b.orient, kFeasibilityTol));
    } catch (const Error& e) {
      throw Error(ErrorCode::InfeasibleItinerary,
                  "stop " + a.disk + " -> " + b.disk + ": " + e.what());
    }
  }

  curve.pieces.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& stop = loop.stops[i];
    const Point2 center = config[curve.stop_disks[i]].center;
    const TangentLine& in = tangents[(i + n - 1) % n];
    const TangentLine& out = tangents[i];
    const double from = angle_of(in.to - center);
    const double to = angle_of(out.from - center);
    Arc arc = arc_between(UnitCircle{center}, stop.orient, from, to);
    if (arc.length() > kTwoPi - 1e-7) arc.sweep = 0.0;
    // A stop entered from and left towards the same stop wraps its disk
    // completely when the two tangents coincide (touching twist).
    const auto& prev = loop.stops[(i + n - 1) % n];
    const auto& next = loop.stops[(i + 1) % n];
    if (arc.length() < 1e-7 && prev == next) arc.sweep = sign(stop.orient) * kTwoPi;
    curve.pieces.emplace_back(arc);
    curve.pieces.emplace_back(out.segment());
  }
  return curve;
}

std::vector<CsCurve> realize_all(const Diagram& d) {
  std::vector<CsCurve> out;
  out.reserve(d.loops.size());
  for (const auto& loop : d.loops) out.push_back(realize(d.config, loop));
  return out;
}

double curve_length(const CsCurve& c) {
  double total = 0.0;
  for (const auto& p : c.pieces) total += piece_length(p);
  return total;
}

double total_length(const Diagram& d) {
  double total = 0.0;
  for (const auto& loop : d.loops) total += curve_length(realize(d.config, loop));
  return total;
}

double ribbonlength(const Diagram& d) { return total_length(d) / 2.0; }

double max_joint_mismatch(const CsCurve& c) {
  double worst = 0.0;
  const std::size_t n = c.pieces.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Piece& a = c.pieces[i];
    const Piece& b = c.pieces[(i + 1) % n];
    const Vec2 ta = piece_tangent(a, piece_length(a));
    const Vec2 tb = piece_tangent(b, 0.0);
    worst = std::max(worst, std::abs(std::atan2(cross(ta, tb), dot(ta, tb))));
    worst = std::max(worst, distance(piece_end(a), piece_start(b)));
  }
  return worst;
}

double signed_sweep(const CsCurve& c) {
  double total = 0.0;
  for (const auto& p : c.pieces)
    if (const auto* a = std::get_if<Arc>(&p)) total += a->sweep;
  return total;
}

int turning_number(const CsCurve& c) {
  const double turns = signed_sweep(c) / kTwoPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) * kTwoPi > 1e-6)
    throw Error(ErrorCode::NonIntegerTurning,
                "signed sweep is not a multiple of 2pi: " + std::to_string(turns) + " turns");
  return static_cast<int>(rounded);
}

CurveWalker::CurveWalker(const CsCurve& c) : curve_(&c) {
  starts_.reserve(c.pieces.size());
  for (const auto& p : c.pieces) {
    starts_.push_back(total_);
    total_ += piece_length(p);
  }
}

std::pair<std::size_t, double> CurveWalker::locate(double s) const {
  if (total_ <= 0.0) return {0, 0.0};
  s = std::fmod(s, total_);
  if (s < 0.0) s += total_;
  auto it = std::upper_bound(starts_.begin(), starts_.end(), s);
  std::size_t i = static_cast<std::size_t>(std::distance(starts_.begin(), it)) - 1;
  // Skip zero-length pieces so tangents come from a piece with extent.
  while (piece_length(curve_->pieces[i]) == 0.0 && i > 0 && starts_[i] == s) --i;
  return {i, std::min(s - starts_[i], piece_length(curve_->pieces[i]))};
}

Point2 CurveWalker::point(double s) const {
  auto [i, f] = locate(s);
  return piece_point(curve_->pieces[i], f);
}

Vec2 CurveWalker::tangent(double s) const {
  auto [i, f] = locate(s);
  return piece_tangent(curve_->pieces[i], f);
}

const char* to_string(CrossingKind k) {
  switch (k) {
    case CrossingKind::Transverse: return "transverse";
    case CrossingKind::TangentialCrossing: return "tangential-crossing";
    case CrossingKind::TangentialTouch: return "tangential-touch";
    case CrossingKind::Interval: return "interval";
    case CrossingKind::Multiple: return "multiple";
  }
  return "?";
}

namespace {

constexpr double kClusterTol = 1e-6;
constexpr double kSideProbe = 0.01;

bool adjacent(std::size_t i, std::size_t j, std::size_t n) {
  const std::size_t d = i > j ? i - j : j - i;
  return d <= 1 || d == n - 1;
}

double cyclic_gap(double a, double b, double period) {
  double d = std::fmod(std::abs(a - b), period);
  return std::min(d, period - d);
}

struct RawContact {
  Point2 point;
  Branch a, b;
};

// Signed offset of branch b from branch a at arc-length offset k*probe.
double side_of(const std::vector<CurveWalker>& walkers, const Branch& a, const Branch& b,
               double dir_b, double ka, double kb) {
  const auto& wa = walkers[a.loop];
  const auto& wb = walkers[b.loop];
  const Point2 pa = wa.point(a.param + ka);
  const Vec2 ta = wa.tangent(a.param + ka);
  const Point2 pb = wb.point(b.param + dir_b * kb);
  return cross(ta, pb - pa);
}

}  // namespace

std::vector<Crossing> self_crossings(const std::vector<CsCurve>& curves) {
  std::vector<CurveWalker> walkers;
  walkers.reserve(curves.size());
  for (const auto& c : curves) walkers.emplace_back(c);

  struct Ref {
    std::size_t loop, piece;
  };
  std::vector<Ref> refs;
  for (std::size_t l = 0; l < curves.size(); ++l)
    for (std::size_t p = 0; p < curves[l].pieces.size(); ++p) refs.push_back({l, p});

  std::vector<RawContact> raw;
  std::vector<Crossing> intervals;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    for (std::size_t j = i + 1; j < refs.size(); ++j) {
      const Ref ra = refs[i], rb = refs[j];
      if (ra.loop == rb.loop && adjacent(ra.piece, rb.piece, curves[ra.loop].pieces.size()))
        continue;
      const Piece& pa = curves[ra.loop].pieces[ra.piece];
      const Piece& pb = curves[rb.loop].pieces[rb.piece];
      const auto hit = intersect_pieces(pa, pb);
      const double sa = walkers[ra.loop].piece_start(ra.piece);
      const double sb = walkers[rb.loop].piece_start(rb.piece);
      for (const auto& c : hit.points)
        raw.push_back({c.point, {ra.loop, ra.piece, sa + c.offset_a},
                       {rb.loop, rb.piece, sb + c.offset_b}});
      for (const auto& ov : hit.overlaps) {
        Crossing x;
        x.kind = CrossingKind::Interval;
        x.point = 0.5 * (ov.start + ov.end);
        x.branches = {{ra.loop, ra.piece, sa + ov.a_begin}, {rb.loop, rb.piece, sb + ov.b_begin}};
        // Do the branches swap sides between entering and leaving the overlap?
        const Vec2 ta = piece_tangent(pa, ov.a_begin);
        const Vec2 tb = piece_tangent(pb, ov.b_begin);
        const double dir_b = dot(ta, tb) >= 0.0 ? 1.0 : -1.0;
        const double len = ov.a_end - ov.a_begin;
        Branch a0{ra.loop, ra.piece, sa + ov.a_begin};
        Branch b0{rb.loop, rb.piece,
                  dir_b > 0 ? sb + ov.b_begin : sb + ov.b_end};
        const double before = side_of(walkers, a0, b0, dir_b, -kSideProbe, -kSideProbe);
        const double after =
            side_of(walkers, a0, b0, dir_b, len + kSideProbe, len + kSideProbe);
        x.interval_crosses = before * after < 0.0;
        intervals.push_back(x);
      }
    }
  }

  // Group raw contacts by location.
  struct Cluster {
    Point2 point;
    std::vector<Branch> params;
  };
  std::vector<Cluster> clusters;
  for (const auto& r : raw) {
    auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
      return distance(c.point, r.point) < kClusterTol;
    });
    if (it == clusters.end()) {
      clusters.push_back({r.point, {r.a, r.b}});
    } else {
      it->params.push_back(r.a);
      it->params.push_back(r.b);
    }
  }

  std::vector<Crossing> out;
  for (const auto& cl : clusters) {
    // Distinct passes of the curves through the point.
    std::vector<Branch> passes;
    for (const auto& b : cl.params) {
      const double period = walkers[b.loop].length();
      const bool seen = std::any_of(passes.begin(), passes.end(), [&](const Branch& p) {
        return p.loop == b.loop && cyclic_gap(p.param, b.param, period) < kClusterTol;
      });
      if (!seen) passes.push_back(b);
    }
    if (passes.size() < 2) continue;
    Crossing x;
    x.point = cl.point;
    x.branches = passes;
    if (passes.size() > 2) {
      x.kind = CrossingKind::Multiple;
      out.push_back(x);
      continue;
    }
    const Branch& a = passes[0];
    const Branch& b = passes[1];
    const Vec2 ta = walkers[a.loop].tangent(a.param);
    const Vec2 tb = walkers[b.loop].tangent(b.param);
    const double angle = std::atan2(std::abs(cross(ta, tb)), std::abs(dot(ta, tb)));
    if (angle > kTangentialAngleTol) {
      x.kind = CrossingKind::Transverse;
      out.push_back(x);
      continue;
    }
    const double dir_b = dot(ta, tb) >= 0.0 ? 1.0 : -1.0;
    const double before = side_of(walkers, a, b, dir_b, -kSideProbe, -kSideProbe);
    const double after = side_of(walkers, a, b, dir_b, kSideProbe, kSideProbe);
    // End point of a shared interval; reported with the interval itself.
    if (std::abs(before) < 1e-12 || std::abs(after) < 1e-12) continue;
    x.kind = before * after < 0.0 ? CrossingKind::TangentialCrossing : CrossingKind::TangentialTouch;
    out.push_back(x);
  }
  out.insert(out.end(), intervals.begin(), intervals.end());
  return out;
}

std::vector<Crossing> self_crossings(const Diagram& d) { return self_crossings(realize_all(d)); }

Diagram transformed(const Diagram& d, double angle, Vec2 shift) {
  Diagram out = d;
  auto centers = out.config.centers();
  for (auto& c : centers) c = rotate(c, angle) + shift;
  out.config.set_centers(centers);
  return out;
}

}  // namespace ribbon
