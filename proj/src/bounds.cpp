#include "ribbon/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "ribbon/diagram.hpp"
#include "ribbon/error.hpp"

namespace ribbon {

BoundResult crossing_bound(double length) {
  if (!(length > 0.0)) throw Error(ErrorCode::NonpositiveLength, "length must be positive");
  BoundResult r;
  r.length_used = length;
  const double t = length / kPi;
  r.raw_bound = t - 0.5 * (std::sqrt(1.0 + 4.0 * t) - 1.0);
  // 2pi lands on 1 up to rounding; don't let that floor to 0.
  r.crossing_bound = std::max(0, static_cast<int>(std::floor(r.raw_bound + 1e-12)));
  return r;
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 1e-12) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 1e-12) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double enclosure_lower_bound(const std::vector<Point2>& centres) {
  if (centres.empty()) throw Error(ErrorCode::ValidationError, "no centres given");
  for (std::size_t i = 0; i < centres.size(); ++i)
    for (std::size_t j = i + 1; j < centres.size(); ++j)
      if (distance(centres[i], centres[j]) < 2.0 - kFeasibilityTol)
        throw Error(ErrorCode::InfeasibleCentres, "two centres closer than 2");

  const auto hull = convex_hull(centres);
  double perimeter = 0.0;
  if (hull.size() == 2) {
    perimeter = 2.0 * distance(hull[0], hull[1]);
  } else if (hull.size() > 2) {
    for (std::size_t i = 0; i < hull.size(); ++i)
      perimeter += distance(hull[i], hull[(i + 1) % hull.size()]);
  }
  return perimeter + kTwoPi;
}

int region_count_prediction(int crossings, int graph_components) {
  return crossings >= 1 ? crossings + graph_components : graph_components;
}

}  // namespace ribbon
