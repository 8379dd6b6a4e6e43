#pragma once

#include <vector>

#include "ribbon/geometry.hpp"

namespace ribbon {

struct BoundResult {
  double length_used = 0.0;
  double raw_bound = 0.0;
  int crossing_bound = 0;
};

// Upper bound on the crossing number of a ribbon diagram of core length
// `length`: floor(l/pi - (sqrt(1 + 4l/pi) - 1)/2). Throws NonpositiveLength.
BoundResult crossing_bound(double length);

// Length of the shortest convex loop enclosing unit disks at `centres`:
// hull perimeter plus 2pi. Throws InfeasibleCentres when two centres are
// closer than 2, ValidationError for an empty list.
double enclosure_lower_bound(const std::vector<Point2>& centres);

// Convex hull in counter-clockwise order, collinear points dropped.
std::vector<Point2> convex_hull(std::vector<Point2> pts);

int region_count_prediction(int crossings, int graph_components);

}  // namespace ribbon
