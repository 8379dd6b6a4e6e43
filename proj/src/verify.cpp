#include "ribbon/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "ribbon/bounds.hpp"
#include "ribbon/error.hpp"

namespace ribbon {

namespace {

// Arc-length window around a sample inside which the core is "adjacent".
// A curve of curvature at most 1 cannot enter a tangent unit disk within
// arc-length pi of the tangency point.
constexpr double kLocalWindow = kPi;
// Crossing branches are matched to nearby strand positions within this
// arc-length distance.
constexpr double kBranchWindow = 4.0;
constexpr double kOverlapSlack = 0.1;

double cyclic_dist(double a, double b, double period) {
  double d = std::fmod(std::abs(a - b), period);
  return std::min(d, period - d);
}

struct Loops {
  std::vector<CsCurve> curves;
  std::vector<CurveWalker> walkers;

  explicit Loops(const Diagram& d) : curves(realize_all(d)) {
    walkers.reserve(curves.size());
    for (const auto& c : curves) walkers.emplace_back(c);
  }
};

Piece clip(const Piece& piece, double from, double to) {
  if (const auto* a = std::get_if<Arc>(&piece)) {
    const double dir = a->direction();
    return Arc{a->center, a->start_angle + dir * from, dir * (to - from)};
  }
  const auto& s = std::get<Segment>(piece);
  return Segment{s.point_at(from), s.point_at(to), s.direction};
}

// Sub-ranges of [a, b] (loop parameters) that stay at least `w` away from
// `s` cyclically.
std::vector<std::pair<double, double>> outside_window(double a, double b, double s, double w,
                                                      double period) {
  if (period <= 2.0 * w) return {};
  std::vector<std::pair<double, double>> keep{{a, b}};
  for (double shift : {-period, 0.0, period}) {
    const double lo = s + shift - w, hi = s + shift + w;
    std::vector<std::pair<double, double>> next;
    for (auto [x, y] : keep) {
      if (hi <= x || lo >= y) {
        next.push_back({x, y});
        continue;
      }
      if (x < lo) next.push_back({x, lo});
      if (hi < y) next.push_back({hi, y});
    }
    keep = std::move(next);
  }
  return keep;
}

double crossing_angle(const Loops& L, const Crossing& x) {
  const auto& a = x.branches[0];
  const auto& b = x.branches[1];
  const Vec2 ta = L.walkers[a.loop].tangent(a.param);
  const Vec2 tb = L.walkers[b.loop].tangent(b.param);
  return std::atan2(std::abs(cross(ta, tb)), std::abs(dot(ta, tb)));
}

bool branch_near(const Loops& L, const Branch& br, std::size_t loop, double param, double w) {
  return br.loop == loop && cyclic_dist(br.param, param, L.walkers[loop].length()) <= w;
}

// Does crossing x have one branch near (la, sa) and the other near (lb, sb)?
bool matches(const Loops& L, const Crossing& x, std::size_t la, double sa, std::size_t lb,
             double sb, double w) {
  if (x.branches.size() != 2) return false;
  const auto& b0 = x.branches[0];
  const auto& b1 = x.branches[1];
  return (branch_near(L, b0, la, sa, w) && branch_near(L, b1, lb, sb, w)) ||
         (branch_near(L, b1, la, sa, w) && branch_near(L, b0, lb, sb, w));
}

// Keep the strongest violation among those closer than `radius`.
std::vector<Violation> thin(std::vector<Violation> v, double radius) {
  std::sort(v.begin(), v.end(),
            [](const Violation& a, const Violation& b) { return a.measurement < b.measurement; });
  std::vector<Violation> out;
  for (const auto& x : v) {
    const bool near = std::any_of(out.begin(), out.end(), [&](const Violation& y) {
      return y.kind == x.kind && distance(x.location, y.location) < radius;
    });
    if (!near) out.push_back(x);
  }
  return out;
}

struct Box {
  double x0, y0, x1, y1;
};

Box core_box(const Loops& L, double inflate) {
  Box b{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
        std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (const auto& c : L.curves)
    for (const auto& p : c.pieces) {
      std::vector<Point2> pts{piece_start(p), piece_end(p)};
      if (const auto* a = std::get_if<Arc>(&p)) {
        // Arcs may bulge past their end points; the full circle bounds them.
        pts.push_back(a->center + Vec2{1, 1});
        pts.push_back(a->center - Vec2{1, 1});
      }
      for (auto q : pts) {
        b.x0 = std::min(b.x0, q.x);
        b.y0 = std::min(b.y0, q.y);
        b.x1 = std::max(b.x1, q.x);
        b.y1 = std::max(b.y1, q.y);
      }
    }
  return {b.x0 - inflate, b.y0 - inflate, b.x1 + inflate, b.y1 + inflate};
}

struct Grid {
  Box box;
  double h;
  int nx, ny;

  Grid(Box b, double step) : box(b), h(step) {
    nx = static_cast<int>(std::ceil((b.x1 - b.x0) / h)) + 1;
    ny = static_cast<int>(std::ceil((b.y1 - b.y0) / h)) + 1;
  }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  Point2 center(int i, int j) const { return {box.x0 + (i + 0.5) * h, box.y0 + (j + 0.5) * h}; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  bool cell_of(Point2 p, int& i, int& j) const {
    i = static_cast<int>(std::floor((p.x - box.x0) / h));
    j = static_cast<int>(std::floor((p.y - box.y0) / h));
    return i >= 0 && j >= 0 && i < nx && j < ny;
  }
};

double core_distance(const Loops& L, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : L.curves)
    for (const auto& piece : c.pieces) best = std::min(best, distance_point_piece(p, piece));
  return best;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::SeparationBound: return "SeparationBound";
    case ViolationKind::NonOverlap: return "NonOverlap";
    case ViolationKind::CrossingCondition: return "CrossingCondition";
    case ViolationKind::MissingRegionDisk: return "MissingRegionDisk";
    case ViolationKind::InfiniteDoubleSet: return "InfiniteDoubleSet";
  }
  return "?";
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Ribbon: return "ribbon";
    case CheckStatus::DiskOnly: return "diskOnly";
    case CheckStatus::Invalid: return "invalid";
  }
  return "?";
}

double default_sample_step(const Diagram& d) { return 1e-3 * total_length(d); }

std::vector<Violation> check_separation(const Diagram& d, double sample_step,
                                        double clearance_tol) {
  const Loops L(d);
  const auto crossings = self_crossings(L.curves);
  if (sample_step <= 0.0) sample_step = default_sample_step(d);

  std::vector<Violation> found;
  for (std::size_t l = 0; l < L.curves.size(); ++l) {
    const auto& walker = L.walkers[l];
    const int n = std::max(1, static_cast<int>(std::ceil(walker.length() / sample_step)));
    for (int k = 0; k < n; ++k) {
      const double s = walker.length() * k / n;
      const Point2 p = walker.point(s);
      const Vec2 normal = perp(walker.tangent(s));
      for (double side : {1.0, -1.0}) {
        const Point2 q = p + side * normal;
        double clearance = std::numeric_limits<double>::infinity();
        std::size_t hit_loop = 0;
        double hit_param = 0.0;
        Point2 hit_point;
        for (std::size_t m = 0; m < L.curves.size(); ++m) {
          const auto& wm = L.walkers[m];
          for (std::size_t pi = 0; pi < L.curves[m].pieces.size(); ++pi) {
            const Piece& piece = L.curves[m].pieces[pi];
            const double a = wm.piece_start(pi);
            const double b = a + piece_length(piece);
            std::vector<std::pair<double, double>> ranges{{a, b}};
            if (m == l) ranges = outside_window(a, b, s, kLocalWindow, wm.length());
            for (auto [x, y] : ranges) {
              const Piece sub = clip(piece, x - a, y - a);
              const double dist = distance_point_piece(q, sub);
              if (dist < clearance) {
                clearance = dist;
                hit_loop = m;
                hit_param = x + closest_offset(q, sub);
                hit_point = wm.point(hit_param);
              }
            }
          }
        }
        if (clearance >= 1.0 - clearance_tol) continue;

        const bool excused = std::any_of(crossings.begin(), crossings.end(), [&](const Crossing& x) {
          return x.separates() && x.kind != CrossingKind::Interval && distance(x.point, p) < 2.0 &&
                 distance(x.point, hit_point) < 2.0 &&
                 matches(L, x, l, s, hit_loop, hit_param, kBranchWindow);
        });
        if (excused) continue;
        found.push_back({ViolationKind::SeparationBound, p, clearance,
                         "tangent disk of radius 1 meets the core"});
      }
    }
  }
  auto out = thin(std::move(found), 0.5);

  // Two transverse crossings joined by two strands (a bigon) must be at
  // least 2 apart.
  std::vector<std::size_t> vertex;
  for (std::size_t i = 0; i < crossings.size(); ++i)
    if (crossings[i].kind != CrossingKind::Interval) vertex.push_back(i);
  std::vector<std::vector<std::pair<double, std::size_t>>> passes(L.curves.size());
  for (std::size_t v : vertex)
    for (const auto& b : crossings[v].branches) passes[b.loop].push_back({b.param, v});
  std::map<std::pair<std::size_t, std::size_t>, int> edges;
  for (auto& list : passes) {
    std::sort(list.begin(), list.end());
    if (list.size() < 2) continue;
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::size_t u = list[i].second, w = list[(i + 1) % list.size()].second;
      if (u == w) continue;
      ++edges[{std::min(u, w), std::max(u, w)}];
    }
  }
  for (const auto& [key, count] : edges) {
    const auto& x0 = crossings[key.first];
    const auto& x1 = crossings[key.second];
    if (count < 2 || !x0.is_transverse() || !x1.is_transverse()) continue;
    const double gap = distance(x0.point, x1.point);
    if (gap < 2.0 - clearance_tol)
      out.push_back({ViolationKind::SeparationBound, 0.5 * (x0.point + x1.point), gap,
                     "crossings bounding a bigon are closer than 2"});
  }
  return out;
}

std::vector<Violation> check_non_overlap(const Diagram& d, double sample_step) {
  const Loops L(d);
  const auto crossings = self_crossings(L.curves);
  if (sample_step <= 0.0) sample_step = default_sample_step(d);
  const double h = std::clamp(sample_step, 0.01, 0.05);
  const Grid grid(core_box(L, 0.0), h);
  constexpr double eps = 1e-9;

  std::vector<double> bound(crossings.size(), 0.0);
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    if (crossings[i].branches.size() != 2) continue;
    const double theta = crossing_angle(L, crossings[i]);
    // Extent of the overlap rhombus of two width-2 strips crossing at theta,
    // measured along either strand.
    const double half = theta > 1e-6 ? 1.0 / std::tan(0.5 * theta) : kBranchWindow;
    bound[i] = std::min(half, kBranchWindow) + kOverlapSlack;
  }

  struct Foot {
    std::size_t loop;
    double param;
  };
  std::vector<double> flagged(grid.size(), -1.0);
  std::vector<Foot> feet;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Point2 x = grid.center(i, j);
      feet.clear();
      for (std::size_t l = 0; l < L.curves.size(); ++l) {
        const auto& w = L.walkers[l];
        for (std::size_t pi = 0; pi < L.curves[l].pieces.size(); ++pi) {
          const Piece& piece = L.curves[l].pieces[pi];
          if (const auto* s = std::get_if<Segment>(&piece)) {
            const double len = s->length();
            const double t = dot(x - s->p, s->direction);
            if (len <= 0.0 || t < 0.0 || t > len) continue;
            if (std::abs(cross(s->direction, x - s->p)) < 1.0 - eps)
              feet.push_back({l, w.piece_start(pi) + t});
          } else {
            const auto& a = std::get<Arc>(piece);
            const double r = distance(a.center, x);
            if (r < eps || r > 2.0 - eps) continue;
            const double off = wrap_angle(a.direction() * (angle_of(x - a.center) - a.start_angle));
            if (off <= a.length()) feet.push_back({l, w.piece_start(pi) + off});
          }
        }
      }
      if (feet.size() < 2) continue;

      // Group foot points into branches.
      std::vector<int> label(feet.size(), -1);
      int nb = 0;
      for (std::size_t a = 0; a < feet.size(); ++a) {
        if (label[a] >= 0) continue;
        label[a] = nb;
        std::deque<std::size_t> todo{a};
        while (!todo.empty()) {
          const std::size_t u = todo.front();
          todo.pop_front();
          for (std::size_t v = 0; v < feet.size(); ++v)
            if (label[v] < 0 && feet[v].loop == feet[u].loop &&
                cyclic_dist(feet[u].param, feet[v].param, L.walkers[feet[u].loop].length()) <
                    kLocalWindow) {
              label[v] = nb;
              todo.push_back(v);
            }
        }
        ++nb;
      }
      if (nb < 2) continue;

      double worst = -1.0;
      for (std::size_t a = 0; a < feet.size(); ++a)
        for (std::size_t b = a + 1; b < feet.size(); ++b) {
          if (label[a] == label[b]) continue;
          bool excused = false;
          for (std::size_t c = 0; c < crossings.size() && !excused; ++c)
            excused = matches(L, crossings[c], feet[a].loop, feet[a].param, feet[b].loop,
                              feet[b].param, bound[c]);
          if (excused) continue;
          const double gap = distance(L.walkers[feet[a].loop].point(feet[a].param),
                                      L.walkers[feet[b].loop].point(feet[b].param));
          if (worst < 0.0 || gap < worst) worst = gap;
        }
      flagged[grid.index(i, j)] = worst;
    }
  }

  std::vector<Violation> out;
  std::vector<char> seen(grid.size(), 0);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const std::size_t start = grid.index(i, j);
      if (flagged[start] < 0.0 || seen[start]) continue;
      std::deque<std::pair<int, int>> todo{{i, j}};
      seen[start] = 1;
      Vec2 sum;
      int cells = 0;
      double gap = std::numeric_limits<double>::infinity();
      while (!todo.empty()) {
        auto [ci, cj] = todo.front();
        todo.pop_front();
        sum += grid.center(ci, cj);
        ++cells;
        gap = std::min(gap, flagged[grid.index(ci, cj)]);
        for (int di = -1; di <= 1; ++di)
          for (int dj = -1; dj <= 1; ++dj) {
            const int ni = ci + di, nj = cj + dj;
            if (ni < 0 || nj < 0 || ni >= grid.nx || nj >= grid.ny) continue;
            const std::size_t k = grid.index(ni, nj);
            if (flagged[k] < 0.0 || seen[k]) continue;
            seen[k] = 1;
            todo.push_back({ni, nj});
          }
      }
      out.push_back({ViolationKind::NonOverlap, sum / cells, gap,
                     "ribbon branches overlap away from a crossing (" + std::to_string(cells) +
                         " cells)"});
    }
  return out;
}

CrossingCheck check_crossings(const Diagram& d) {
  CrossingCheck r;
  r.crossings = self_crossings(d);
  for (const auto& x : r.crossings) {
    switch (x.kind) {
      case CrossingKind::Transverse:
        ++r.transverse_count;
        ++r.separating_count;
        ++r.crossing_count;
        break;
      case CrossingKind::TangentialCrossing:
        ++r.separating_count;
        ++r.crossing_count;
        break;
      case CrossingKind::TangentialTouch:
        ++r.touch_count;
        ++r.crossing_count;
        break;
      case CrossingKind::Interval:
        ++r.interval_count;
        r.violations.push_back({ViolationKind::InfiniteDoubleSet, x.point, 0.0,
                                "branches share a sub-arc or sub-segment"});
        break;
      case CrossingKind::Multiple:
        ++r.crossing_count;
        r.violations.push_back({ViolationKind::CrossingCondition, x.point,
                                static_cast<double>(x.branches.size()),
                                "more than two branches through one point"});
        break;
    }
  }
  return r;
}

RegionCheck check_region_disks(const Diagram& d, double grid_step) {
  if (!(grid_step > 0.0)) throw Error(ErrorCode::ValidationError, "grid step must be positive");
  const Loops L(d);
  const auto crossings = self_crossings(L.curves);
  const Grid grid(core_box(L, 3.0), grid_step);
  const double block = 0.6 * grid_step;

  std::vector<char> blocked(grid.size(), 0);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      blocked[grid.index(i, j)] = core_distance(L, grid.center(i, j)) < block;

  std::vector<int> label(grid.size(), -1);
  std::vector<int> cells;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const std::size_t start = grid.index(i, j);
      if (blocked[start] || label[start] >= 0) continue;
      const int id = static_cast<int>(cells.size());
      cells.push_back(0);
      std::deque<std::pair<int, int>> todo{{i, j}};
      label[start] = id;
      while (!todo.empty()) {
        auto [ci, cj] = todo.front();
        todo.pop_front();
        ++cells[id];
        const int ni[4] = {ci + 1, ci - 1, ci, ci};
        const int nj[4] = {cj, cj, cj + 1, cj - 1};
        for (int k = 0; k < 4; ++k) {
          if (ni[k] < 0 || nj[k] < 0 || ni[k] >= grid.nx || nj[k] >= grid.ny) continue;
          const std::size_t idx = grid.index(ni[k], nj[k]);
          if (blocked[idx] || label[idx] >= 0) continue;
          label[idx] = id;
          todo.push_back({ni[k], nj[k]});
        }
      }
    }

  RegionCheck r;
  r.domain_count = static_cast<int>(cells.size());
  const int outer = label[0];

  // Domains meeting at a non-separating tangential contact are one region.
  UnionFind uf(cells.size());
  auto free_label = [&](Point2 p) {
    int i, j;
    if (!grid.cell_of(p, i, j)) return -1;
    return label[grid.index(i, j)];
  };
  for (const auto& x : crossings) {
    if (x.kind != CrossingKind::TangentialTouch) continue;
    const auto& b = x.branches[0];
    const Vec2 t = L.walkers[b.loop].tangent(b.param);
    std::vector<int> sides;
    for (double dir : {1.0, -1.0})
      for (double rad = 0.3; rad <= 1.0; rad += 0.5 * grid_step) {
        const int lab = free_label(x.point + dir * rad * t);
        if (lab >= 0) {
          sides.push_back(lab);
          break;
        }
      }
    if (sides.size() == 2 && uf.unite(sides[0], sides[1])) ++r.merged_touches;
  }

  std::map<int, Region> regions;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const int lab = label[grid.index(i, j)];
      if (lab < 0) continue;
      const int root = uf.find(lab);
      if (root == uf.find(outer)) continue;
      auto& reg = regions[root];
      if (reg.cells == 0) reg.sample = grid.center(i, j);
      ++reg.cells;
    }

  for (const auto& disk : d.config.disks()) {
    const double clearance = core_distance(L, disk.center);
    if (clearance < 1.0 - 1e-6)
      r.violations.push_back({ViolationKind::MissingRegionDisk, disk.center, clearance,
                              "disk " + disk.id + " is cut by the core"});
    const int lab = free_label(disk.center);
    if (lab < 0) {
      if (clearance >= 1.0 - 1e-6)
        throw Error(ErrorCode::GridTooCoarse, "centre of disk " + disk.id + " falls on a blocked cell");
      continue;
    }
    auto it = regions.find(uf.find(lab));
    if (it != regions.end()) it->second.disks.push_back(disk.id);
  }

  for (auto& [root, reg] : regions) {
    if (reg.cells < 10)
      throw Error(ErrorCode::GridTooCoarse,
                  "a region covers only " + std::to_string(reg.cells) + " grid cells");
    if (reg.disks.size() != 1)
      r.violations.push_back({ViolationKind::MissingRegionDisk, reg.sample,
                              static_cast<double>(reg.disks.size()),
                              "bounded region holds " + std::to_string(reg.disks.size()) +
                                  " disks"});
    r.regions.push_back(reg);
  }
  r.bounded_regions = static_cast<int>(regions.size());

  UnionFind comp(L.curves.size());
  int separating = 0;
  for (const auto& x : crossings) {
    if (x.separates() && x.kind != CrossingKind::Interval) ++separating;
    for (const auto& b : x.branches) comp.unite(static_cast<int>(x.branches[0].loop), static_cast<int>(b.loop));
  }
  for (std::size_t l = 0; l < L.curves.size(); ++l)
    if (comp.find(static_cast<int>(l)) == static_cast<int>(l)) ++r.components;
  r.predicted_regions = region_count_prediction(separating, r.components);
  r.consistent = r.bounded_regions == r.predicted_regions;
  return r;
}

CheckReport full_report(const Diagram& d, const CheckSettings& settings) {
  CheckReport rep;
  auto add = [&](const std::vector<Violation>& v) {
    rep.violations.insert(rep.violations.end(), v.begin(), v.end());
  };
  add(check_separation(d, settings.sample_step, settings.clearance_tol));
  add(check_non_overlap(d, settings.sample_step));
  const auto cc = check_crossings(d);
  add(cc.violations);
  rep.crossing_count = cc.crossing_count;
  rep.separating_count = cc.separating_count;
  const auto rc = check_region_disks(d, settings.grid_step);
  add(rc.violations);
  rep.bounded_region_estimate = rc.bounded_regions;
  rep.predicted_regions = rc.predicted_regions;
  rep.domain_count = rc.domain_count;
  rep.merged_touches = rc.merged_touches;

  const bool disk_only = std::all_of(rep.violations.begin(), rep.violations.end(), [](const Violation& v) {
    return v.kind == ViolationKind::SeparationBound || v.kind == ViolationKind::NonOverlap;
  });
  if (rep.violations.empty())
    rep.status = CheckStatus::Ribbon;
  else
    rep.status = disk_only ? CheckStatus::DiskOnly : CheckStatus::Invalid;
  return rep;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string format_report(const CheckReport& r) {
  std::ostringstream os;
  os << "status:          " << to_string(r.status) << "\n"
     << "crossings:       " << r.crossing_count << " (" << r.separating_count << " separating)\n"
     << "bounded regions: " << r.bounded_region_estimate << " (predicted " << r.predicted_regions
     << ", " << r.domain_count << " domains, " << r.merged_touches << " merged)\n";
  if (r.violations.empty()) {
    os << "violations:      none\n";
  } else {
    os << "violations:\n";
    for (const auto& v : r.violations)
      os << "  " << to_string(v.kind) << " at (" << fmt(v.location.x) << ", " << fmt(v.location.y)
         << "), measurement " << fmt(v.measurement) << ": " << v.detail << "\n";
  }
  return os.str();
}

std::string format_report_kv(const CheckReport& r) {
  std::ostringstream os;
  os << "status=" << to_string(r.status) << "\n"
     << "crossing_count=" << r.crossing_count << "\n"
     << "separating_count=" << r.separating_count << "\n"
     << "region_count=" << r.bounded_region_estimate << "\n"
     << "predicted_region_count=" << r.predicted_regions << "\n";
  for (const auto& v : r.violations)
    os << "violation=" << to_string(v.kind) << "@(" << fmt(v.location.x) << "," << fmt(v.location.y)
       << "):" << fmt(v.measurement) << "\n";
  return os.str();
}

}  // namespace ribbon
