#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ribbon/geometry.hpp"

namespace ribbon {

// Pairwise centre distances may fall short of 2 by at most this much.
inline constexpr double kFeasibilityTol = 1e-9;

struct Disk {
  std::string id;
  Point2 center;

  friend bool operator==(const Disk&, const Disk&) = default;
};

// Centres of the unit disks; the optimisation variable.
class DiskConfig {
 public:
  DiskConfig() = default;
  explicit DiskConfig(std::vector<Disk> disks);

  const std::vector<Disk>& disks() const { return disks_; }
  std::size_t size() const { return disks_.size(); }
  const Disk& operator[](std::size_t i) const { return disks_[i]; }

  std::optional<std::size_t> find(const std::string& id) const;
  // Throws UnknownDisk.
  std::size_t index_of(const std::string& id) const;

  void set_center(std::size_t i, Point2 c) { disks_[i].center = c; }
  std::vector<Point2> centers() const;
  void set_centers(const std::vector<Point2>& centers);

  // Smallest pairwise centre distance (infinity for fewer than two disks).
  double min_separation() const;
  bool feasible(double tol = kFeasibilityTol) const;

  friend bool operator==(const DiskConfig&, const DiskConfig&) = default;

 private:
  std::vector<Disk> disks_;
};

struct ItineraryStop {
  std::string disk;
  Orientation orient = Orientation::CCW;

  friend bool operator==(const ItineraryStop&, const ItineraryStop&) = default;
};

// Cyclic list of stops; consecutive stops are joined by common tangents.
struct LoopItinerary {
  std::vector<ItineraryStop> stops;

  friend bool operator==(const LoopItinerary&, const LoopItinerary&) = default;
};

// Closed C1 curve alternating arcs and segments. Piece 2i is the arc at
// stop i and piece 2i+1 the tangent segment to stop i+1; a single-stop
// loop is one full circle.
struct CsCurve {
  std::vector<Piece> pieces;
  std::vector<std::size_t> stop_disks;  // configuration index of each stop

  double length() const;
  std::size_t arc_piece(std::size_t stop) const { return 2 * stop; }
  std::size_t segment_piece(std::size_t stop) const { return 2 * stop + 1; }
};

struct Diagram {
  DiskConfig config;
  std::vector<LoopItinerary> loops;
  std::string name;

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

// Checks the structural invariants (unique ids, known disks, nonempty
// loops, every disk used, feasible separation). Throws ValidationError or
// UnknownDisk.
void validate(const Diagram& d);

CsCurve realize(const DiskConfig& config, const LoopItinerary& loop);
std::vector<CsCurve> realize_all(const Diagram& d);

double curve_length(const CsCurve& c);
double total_length(const Diagram& d);
double ribbonlength(const Diagram& d);

// Largest direction mismatch (radians) over all joints of a closed curve.
double max_joint_mismatch(const CsCurve& c);
double signed_sweep(const CsCurve& c);
// Throws NonIntegerTurning when the signed sweep is off a multiple of 2pi.
int turning_number(const CsCurve& c);

// Arc-length parametrisation of a closed curve.
class CurveWalker {
 public:
  explicit CurveWalker(const CsCurve& c);

  double length() const { return total_; }
  // Index of the piece containing arc-length s (taken modulo length) and the
  // offset within that piece.
  std::pair<std::size_t, double> locate(double s) const;
  Point2 point(double s) const;
  Vec2 tangent(double s) const;
  double piece_start(std::size_t i) const { return starts_[i]; }

 private:
  const CsCurve* curve_;
  std::vector<double> starts_;
  double total_ = 0.0;
};

enum class CrossingKind {
  Transverse,          // isolated transverse double point
  TangentialCrossing,  // tangential contact where the branches switch sides
  TangentialTouch,     // tangential contact without crossing
  Interval,            // shared sub-arc/sub-segment
  Multiple,            // three or more branches through one point
};

const char* to_string(CrossingKind k);

struct Branch {
  std::size_t loop = 0;
  std::size_t piece = 0;
  double param = 0.0;  // arc-length position along the loop
};

struct Crossing {
  Point2 point;
  CrossingKind kind = CrossingKind::Transverse;
  std::vector<Branch> branches;
  bool interval_crosses = false;  // for Interval: do the branches switch sides

  bool is_transverse() const { return kind == CrossingKind::Transverse; }
  // True for double points that separate the branches (counted crossings).
  bool separates() const {
    return kind == CrossingKind::Transverse || kind == CrossingKind::TangentialCrossing ||
           (kind == CrossingKind::Interval && interval_crosses);
  }
};

std::vector<Crossing> self_crossings(const Diagram& d);
std::vector<Crossing> self_crossings(const std::vector<CsCurve>& curves);

// Applies the rigid motion p -> R(angle) p + shift to every centre.
Diagram transformed(const Diagram& d, double angle, Vec2 shift);

}  // namespace ribbon
