#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ribbon/diagram.hpp"

namespace ribbon {

// d(length)/d(centre) for every disk, in configuration order.
using GradientVector = std::vector<Vec2>;

GradientVector length_gradient(const Diagram& d);

struct OptimizeSettings {
  double step_size = 0.05;
  long max_iterations = 100000;
  double grad_tolerance = 1e-9;
  // Disk ids held fixed; when empty the first disk is fixed.
  std::set<std::string> fixed_disks;
  // Contacts count as active within this distance of 2.
  double active_tolerance = 1e-7;
};

struct OptimizeResult {
  DiskConfig final_config;
  double final_length = 0.0;
  long iterations = 0;
  bool converged = false;
  std::vector<std::pair<std::string, std::string>> active_contacts;
  // Length after every accepted iterate, starting with the initial length.
  std::vector<double> length_history;
  // Smallest pairwise centre distance seen over all iterates.
  double min_separation_seen = 0.0;
  double kkt_residual = 0.0;
};

// Projected gradient descent with backtracking. Throws InfeasibleStart when
// the initial configuration violates the separation constraint. Running out
// of iterations returns the best configuration with converged = false.
OptimizeResult minimize(const Diagram& d, const OptimizeSettings& settings = {});

struct ContactMultiplier {
  std::string disk_a;
  std::string disk_b;
  double value = 0.0;
};

struct EquilibriumReport {
  bool is_critical = false;
  std::vector<ContactMultiplier> multipliers;
  double residual = 0.0;
};

// First-order optimality under the separation constraints: the gradient on
// every free disk must be a nonnegative combination of the outward contact
// normals (c_i - c_j)/2 of its active contacts. `tol` is both the contact
// activity threshold and the residual threshold.
EquilibriumReport certify_equilibrium(const Diagram& d, double tol = 1e-6,
                                      const std::set<std::string>& fixed_disks = {});

// Moves overlapping pairs apart along their centre line until every pair is
// at distance >= 2 (fixed disks stay put). Returns false if 100 sweeps do
// not suffice.
bool project_feasible(std::vector<Point2>& centers, const std::vector<bool>& fixed,
                      int max_sweeps = 100);

}  // namespace ribbon
