#pragma once

#include <string>
#include <vector>

#include "ribbon/diagram.hpp"

namespace ribbon {

enum class ViolationKind {
  SeparationBound,
  NonOverlap,
  CrossingCondition,
  MissingRegionDisk,
  InfiniteDoubleSet,
};

const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind = ViolationKind::SeparationBound;
  Point2 location;
  double measurement = 0.0;
  std::string detail;
};

enum class CheckStatus { Ribbon, DiskOnly, Invalid };

const char* to_string(CheckStatus s);

// Sampling resolution along the core; 0 picks 1e-3 of the total length.
double default_sample_step(const Diagram& d);

// Tangent-disk test of the separation bound, plus close pairs of transverse
// crossings that bound a bigon.
std::vector<Violation> check_separation(const Diagram& d, double sample_step = 0.0,
                                        double clearance_tol = 1e-6);

// Ribbon overlap not accounted for by a crossing of the same two branches.
std::vector<Violation> check_non_overlap(const Diagram& d, double sample_step = 0.0);

struct CrossingCheck {
  std::vector<Crossing> crossings;
  int crossing_count = 0;     // isolated double points, tangential touches included
  int separating_count = 0;   // transverse plus tangential crossings
  int transverse_count = 0;
  int touch_count = 0;
  int interval_count = 0;
  std::vector<Violation> violations;
};

CrossingCheck check_crossings(const Diagram& d);

struct Region {
  int cells = 0;
  Point2 sample;                  // some grid point inside the region
  std::vector<std::string> disks; // disks whose centre lies inside
};

struct RegionCheck {
  int domain_count = 0;          // connected complementary domains, unbounded included
  int merged_touches = 0;        // domain merges across tangential touches
  int bounded_regions = 0;       // after merging
  int predicted_regions = 0;     // crossings + components
  int components = 0;
  bool consistent = false;       // bounded_regions == predicted_regions
  std::vector<Region> regions;
  std::vector<Violation> violations;
};

// Throws GridTooCoarse if some bounded region covers fewer than 10 cells.
RegionCheck check_region_disks(const Diagram& d, double grid_step = 0.05);

struct CheckSettings {
  double sample_step = 0.0;
  double grid_step = 0.05;
  double clearance_tol = 1e-6;
};

struct CheckReport {
  CheckStatus status = CheckStatus::Ribbon;
  std::vector<Violation> violations;
  int crossing_count = 0;
  int separating_count = 0;
  int bounded_region_estimate = 0;
  int predicted_regions = 0;
  int domain_count = 0;
  int merged_touches = 0;
};

CheckReport full_report(const Diagram& d, const CheckSettings& settings = {});

// Human-readable block and key=value lines.
std::string format_report(const CheckReport& r);
std::string format_report_kv(const CheckReport& r);

}  // namespace ribbon
