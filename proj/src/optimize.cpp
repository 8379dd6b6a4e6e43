#include "ribbon/optimize.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "ribbon/error.hpp"

namespace ribbon {

namespace {

std::vector<bool> fixed_mask(const DiskConfig& config, const std::set<std::string>& ids) {
  std::vector<bool> fixed(config.size(), false);
  if (ids.empty()) {
    if (!fixed.empty()) fixed[0] = true;
    return fixed;
  }
  for (const auto& id : ids) fixed[config.index_of(id)] = true;
  return fixed;
}

double length_at(const Diagram& d, const std::vector<Point2>& centers) {
  Diagram trial = d;
  trial.config.set_centers(centers);
  return total_length(trial);
}

struct Contact {
  std::size_t i, j;
};

std::vector<Contact> active_pairs(const std::vector<Point2>& c, double tol) {
  std::vector<Contact> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (distance(c[i], c[j]) <= 2.0 + tol) out.push_back({i, j});
  return out;
}

// Lawson-Hanson active set method for min |Ax - b| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const Eigen::Index n = A.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (n == 0) return x;
  std::vector<bool> passive(n, false);
  const double eps = 1e-13 * std::max(1.0, A.norm() * b.norm());

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index k = 0; k < n; ++k)
      if (passive[k]) cols.push_back(k);
    Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) Ap.col(k) = A.col(cols[k]);
    Eigen::VectorXd zp = Ap.completeOrthogonalDecomposition().solve(b);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < cols.size(); ++k) z[cols[k]] = zp[k];
    return z;
  };

  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    Eigen::VectorXd w = A.transpose() * (b - A * x);
    Eigen::Index best = -1;
    double wmax = eps;
    for (Eigen::Index k = 0; k < n; ++k)
      if (!passive[k] && w[k] > wmax) {
        wmax = w[k];
        best = k;
      }
    if (best < 0) break;
    passive[best] = true;

    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      Eigen::VectorXd z = solve_passive();
      bool all_positive = true;
      for (Eigen::Index k = 0; k < n; ++k)
        if (passive[k] && z[k] <= 0.0) all_positive = false;
      if (all_positive) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index k = 0; k < n; ++k)
        if (passive[k] && z[k] <= 0.0) alpha = std::min(alpha, x[k] / (x[k] - z[k]));
      x += alpha * (z - x);
      for (Eigen::Index k = 0; k < n; ++k)
        if (passive[k] && x[k] <= 1e-15) {
          passive[k] = false;
          x[k] = 0.0;
        }
    }
  }
  return x;
}

struct Kkt {
  std::vector<Contact> contacts;
  Eigen::VectorXd multipliers;
  double residual = 0.0;
};

Kkt kkt(const std::vector<Point2>& c, const GradientVector& g, const std::vector<bool>& fixed,
        double tol) {
  Kkt out;
  std::vector<Eigen::Index> row_of(c.size(), -1);
  Eigen::Index rows = 0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!fixed[i]) row_of[i] = 2 * rows++;

  for (const auto& p : active_pairs(c, tol))
    if (!fixed[p.i] || !fixed[p.j]) out.contacts.push_back(p);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * rows, static_cast<Eigen::Index>(out.contacts.size()));
  Eigen::VectorXd b(2 * rows);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (row_of[i] >= 0) {
      b[row_of[i]] = g[i].x;
      b[row_of[i] + 1] = g[i].y;
    }
  for (std::size_t k = 0; k < out.contacts.size(); ++k) {
    const auto [i, j] = out.contacts[k];
    const Vec2 n = normalized(c[i] - c[j]);
    if (row_of[i] >= 0) {
      A(row_of[i], k) = n.x;
      A(row_of[i] + 1, k) = n.y;
    }
    if (row_of[j] >= 0) {
      A(row_of[j], k) = -n.x;
      A(row_of[j] + 1, k) = -n.y;
    }
  }
  out.multipliers = nnls(A, b);
  out.residual = rows == 0 ? 0.0 : (b - A * out.multipliers).norm();
  return out;
}

}  // namespace

GradientVector length_gradient(const Diagram& d) {
  GradientVector g(d.config.size());
  for (const auto& loop : d.loops) {
    const CsCurve curve = realize(d.config, loop);
    const std::size_t m = curve.stop_disks.size();
    for (std::size_t s = 0; s < m; ++s) {
      const auto& seg = std::get<Segment>(curve.pieces[curve.segment_piece(s)]);
      g[curve.stop_disks[s]] -= seg.direction;
      g[curve.stop_disks[(s + 1) % m]] += seg.direction;
    }
  }
  return g;
}

bool project_feasible(std::vector<Point2>& centers, const std::vector<bool>& fixed,
                      int max_sweeps) {
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool moved = false;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      for (std::size_t j = i + 1; j < centers.size(); ++j) {
        Vec2 delta = centers[j] - centers[i];
        const double dist = norm(delta);
        if (dist >= 2.0) continue;
        if (fixed[i] && fixed[j]) continue;
        const Vec2 u = dist > 1e-15 ? delta / dist : Vec2{1.0, 0.0};
        const double gap = 2.0 - dist;
        if (fixed[i]) {
          centers[j] += gap * u;
        } else if (fixed[j]) {
          centers[i] -= gap * u;
        } else {
          centers[i] -= 0.5 * gap * u;
          centers[j] += 0.5 * gap * u;
        }
        moved = true;
      }
    }
    if (!moved) return true;
  }
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j)
      if (distance(centers[i], centers[j]) < 2.0 - kFeasibilityTol) return false;
  return true;
}

OptimizeResult minimize(const Diagram& d, const OptimizeSettings& settings) {
  if (!(settings.step_size > 0.0) || !(settings.grad_tolerance > 0.0))
    throw Error(ErrorCode::ValidationError, "step size and tolerance must be positive");
  if (!d.config.feasible())
    throw Error(ErrorCode::InfeasibleStart, "initial configuration has a pair closer than 2");

  const std::vector<bool> fixed = fixed_mask(d.config, settings.fixed_disks);
  Diagram cur = d;
  std::vector<Point2> x = cur.config.centers();
  double len = total_length(cur);

  OptimizeResult res;
  res.length_history.push_back(len);
  res.min_separation_seen = cur.config.min_separation();

  double alpha = settings.step_size;
  const double alpha_cap = 64.0 * settings.step_size;
  long it = 0;
  Kkt state;
  for (; it < settings.max_iterations; ++it) {
    const GradientVector g = length_gradient(cur);
    state = kkt(x, g, fixed, settings.active_tolerance);
    if (state.residual < settings.grad_tolerance) {
      res.converged = true;
      break;
    }

    bool accepted = false;
    for (; alpha >= 1e-14; alpha *= 0.5) {
      std::vector<Point2> trial = x;
      for (std::size_t i = 0; i < trial.size(); ++i)
        if (!fixed[i]) trial[i] -= alpha * g[i];
      if (!project_feasible(trial, fixed)) continue;
      const double trial_len = length_at(cur, trial);
      if (trial_len < len) {
        x = std::move(trial);
        len = trial_len;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    cur.config.set_centers(x);
    res.length_history.push_back(len);
    res.min_separation_seen = std::min(res.min_separation_seen, cur.config.min_separation());
    alpha = std::min(2.0 * alpha, alpha_cap);
  }
  if (it == settings.max_iterations) {
    state = kkt(x, length_gradient(cur), fixed, settings.active_tolerance);
    res.converged = state.residual < settings.grad_tolerance;
  }

  res.final_config = cur.config;
  res.final_length = len;
  res.iterations = it;
  res.kkt_residual = state.residual;
  for (const auto& p : active_pairs(x, settings.active_tolerance))
    res.active_contacts.emplace_back(cur.config[p.i].id, cur.config[p.j].id);
  return res;
}

EquilibriumReport certify_equilibrium(const Diagram& d, double tol,
                                      const std::set<std::string>& fixed_disks) {
  const auto fixed = fixed_mask(d.config, fixed_disks);
  const auto centers = d.config.centers();
  const Kkt state = kkt(centers, length_gradient(d), fixed, tol);

  EquilibriumReport rep;
  rep.residual = state.residual;
  rep.is_critical = state.residual < tol;
  for (std::size_t k = 0; k < state.contacts.size(); ++k)
    rep.multipliers.push_back({d.config[state.contacts[k].i].id,
                               d.config[state.contacts[k].j].id, state.multipliers[k]});
  return rep;
}

}  // namespace ribbon
