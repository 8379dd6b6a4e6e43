// Acceptance run: one PASS/FAIL line per criterion, details for failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ribbon/bounds.hpp"
#include "ribbon/catalog.hpp"
#include "ribbon/io.hpp"
#include "ribbon/optimize.hpp"
#include "ribbon/render.hpp"
#include "ribbon/verify.hpp"

using namespace ribbon;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream notes;

  void fail(const std::string& why) {
    pass = false;
    notes << "\n    " << why;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

const double pi = kPi;

Outcome exact_lengths() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, double>> cases = {
      {"unknot", 2 * pi},          {"twisted-unknot", 4 * pi},   {"trefoil", 12 + 4 * pi},
      {"hopf", 8 + 4 * pi},        {"whitehead", 16 + 6 * pi},   {"figure8-diskmin", 12 + 5 * pi},
      {"family1(1)", 16 + 6 * pi}, {"family1(2)", 2 * (16 + 6 * pi)}, {"family1(3)", 3 * (16 + 6 * pi)},
      {"family2(1)", 8 + 4 * pi},  {"family2(2)", 2 * (8 + 4 * pi)},  {"family2(3)", 3 * (8 + 4 * pi)}};
  for (const auto& [name, want] : cases) {
    const double got = total_length(catalog_get(name).diagram);
    o.expect(std::abs(got - want) < 1e-9, name + ": length " + num(got) + ", expected " + num(want));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.expect(secs < 1.0, "took " + num(secs) + " s");
  return o;
}

Outcome ribbonlengths() {
  Outcome o;
  const std::vector<std::pair<std::string, double>> cases = {
      {"unknot", pi}, {"trefoil", 6 + 2 * pi}, {"hopf", 4 + 2 * pi}, {"whitehead", 8 + 3 * pi}};
  for (const auto& [name, want] : cases) {
    const double got = ribbonlength(catalog_get(name).diagram);
    o.expect(std::abs(got - want) < 1e-9, name + ": ribbonlength " + num(got) + ", expected " + num(want));
  }
  return o;
}

Outcome gradient_check() {
  Outcome o;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  const std::vector<std::string> names = {"twisted-unknot", "trefoil", "hopf", "whitehead",
                                          "olympic-rings", "family2(2)", "family1(1)"};
  const double h = 1e-6;
  int checked = 0;
  double worst = 0.0;
  for (int trial = 0; checked < 100 && trial < 1000; ++trial) {
    Diagram d = catalog_get(names[trial % names.size()]).diagram;
    // Spread the disks a little so no pair touches, then jitter.
    auto c = d.config.centers();
    const Point2 o0 = c[0];
    for (auto& p : c) p = o0 + 1.05 * (p - o0) + Vec2{jitter(rng), jitter(rng)};
    d.config.set_centers(c);
    if (!d.config.feasible()) continue;
    ++checked;
    const auto g = length_gradient(d);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (int axis = 0; axis < 2; ++axis) {
        Diagram p = d, m = d;
        const Vec2 e = axis == 0 ? Vec2{h, 0} : Vec2{0, h};
        p.config.set_center(i, c[i] + e);
        m.config.set_center(i, c[i] - e);
        const double fd = (total_length(p) - total_length(m)) / (2 * h);
        const double an = axis == 0 ? g[i].x : g[i].y;
        const double rel = std::abs(an - fd) / std::max(1.0, std::abs(fd));
        worst = std::max(worst, rel);
      }
  }
  o.expect(checked == 100, "only " + std::to_string(checked) + " perturbations were feasible");
  o.expect(worst < 1e-5, "worst relative error " + num(worst));
  return o;
}

Outcome optimization() {
  Outcome o;
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const char* name : {"twisted-unknot", "trefoil", "hopf"}) {
    const auto e = catalog_get(name);
    std::vector<bool> fixed(e.diagram.config.size(), false);
    fixed[0] = true;
    for (int k = 0; k < 20; ++k) {
      auto c = e.diagram.config.centers();
      for (std::size_t i = 1; i < c.size(); ++i) {
        Vec2 step;
        do step = {u(rng), u(rng)};
        while (norm(step) > 1.0);
        c[i] += 0.4 * step;
      }
      project_feasible(c, fixed);
      Diagram start = e.diagram;
      start.config.set_centers(c);
      const OptimizeResult r = minimize(start);
      const std::string tag = std::string(name) + " run " + std::to_string(k) + ": ";
      o.expect(std::abs(r.final_length - e.expected_length->value()) < 1e-6,
               tag + "final length " + num(r.final_length));
      bool monotone = true;
      for (std::size_t i = 1; i < r.length_history.size(); ++i)
        monotone = monotone && r.length_history[i] <= r.length_history[i - 1];
      o.expect(monotone, tag + "length increased");
      o.expect(r.min_separation_seen >= 2.0 - 1e-9, tag + "iterate infeasible");
    }
  }
  return o;
}

Outcome equilibrium() {
  Outcome o;
  for (const char* name : {"unknot", "twisted-unknot", "trefoil", "hopf", "figure8-diskmin", "whitehead",
                           "olympic-rings", "family1(1)", "family1(2)", "family1(3)", "family2(1)",
                           "family2(2)", "family2(3)"}) {
    const auto rep = certify_equilibrium(catalog_get(name).diagram);
    o.expect(rep.is_critical, std::string(name) + ": not critical, residual " + num(rep.residual));
  }
  Diagram d = catalog_get("hopf").diagram;
  d.config.set_center(d.config.index_of("D1"), {3, 0});
  const auto rep = certify_equilibrium(d);
  o.expect(!rep.is_critical, "detached hopf reported critical");
  o.expect(std::abs(rep.residual - 2.0) < 1e-6, "detached hopf residual " + num(rep.residual));
  return o;
}

Outcome truth_table() {
  Outcome o;
  const std::vector<std::pair<std::string, CheckStatus>> cases = {
      {"unknot", CheckStatus::Ribbon},          {"twisted-unknot", CheckStatus::Ribbon},
      {"trefoil", CheckStatus::Ribbon},         {"hopf", CheckStatus::Ribbon},
      {"family2(1)", CheckStatus::Ribbon},      {"family2(2)", CheckStatus::Ribbon},
      {"family2(3)", CheckStatus::Ribbon},      {"figure8-diskmin", CheckStatus::DiskOnly},
      {"trefoil-alt-h", CheckStatus::DiskOnly}, {"whitehead", CheckStatus::DiskOnly},
      {"family1(1)", CheckStatus::DiskOnly},    {"family1(2)", CheckStatus::DiskOnly}};
  for (const auto& [name, want] : cases) {
    try {
      const auto r = full_report(catalog_get(name).diagram);
      o.expect(r.status == want, name + ": " + to_string(r.status) + ", expected " + to_string(want));
    } catch (const std::exception& e) {
      o.fail(name + ": " + e.what());
    }
  }
  return o;
}

Outcome crossing_bounds() {
  Outcome o;
  const auto t = crossing_bound(12 + 4 * pi);
  o.expect(t.raw_bound >= 5.46 && t.raw_bound <= 5.48 && t.crossing_bound == 5,
           "trefoil length: raw " + num(t.raw_bound));
  const auto h = crossing_bound(8 + 4 * pi);
  o.expect(h.raw_bound >= 4.42 && h.raw_bound <= 4.44 && h.crossing_bound == 4,
           "hopf length: raw " + num(h.raw_bound));
  const auto u = crossing_bound(2 * pi);
  o.expect(std::abs(u.raw_bound - 1.0) < 1e-12, "unknot length: raw " + num(u.raw_bound));
  return o;
}

Outcome region_counts() {
  Outcome o;
  for (const auto& [name, want] : std::vector<std::pair<std::string, int>>{
           {"trefoil", 4}, {"hopf", 3}, {"figure8-diskmin", 5}}) {
    try {
      const auto r = check_region_disks(catalog_get(name).diagram);
      o.expect(r.bounded_regions == want && r.predicted_regions == want,
               name + ": " + std::to_string(r.bounded_regions) + " regions, predicted " +
                   std::to_string(r.predicted_regions));
    } catch (const std::exception& e) {
      o.fail(name + ": " + e.what());
    }
  }
  const auto r = check_region_disks(catalog_get("olympic-rings").diagram);
  o.expect(r.domain_count == 7 && r.merged_touches == 1,
           "olympic-rings: " + std::to_string(r.domain_count) + " domains, " +
               std::to_string(r.merged_touches) + " merges");
  o.expect(r.consistent, "olympic-rings: merged regions disagree with the prediction");
  return o;
}

Outcome structural_invariants() {
  Outcome o;
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> ang(-pi, pi), shift(-25, 25);
  auto names = catalog_names();
  for (const char* extra : {"family1(3)", "family2(3)"}) names.push_back(extra);
  for (const auto& name : names) {
    const Diagram d = catalog_get(name).diagram;
    const auto curves = realize_all(d);
    for (const auto& c : curves) {
      o.expect(max_joint_mismatch(c) < 1e-9, name + ": joint mismatch " + num(max_joint_mismatch(c)));
      const double turns = signed_sweep(c) / kTwoPi;
      o.expect(std::abs(turns - std::round(turns)) < 1e-6 / kTwoPi, name + ": sweep " + num(signed_sweep(c)));
    }
    const double len = total_length(d);
    for (int k = 0; k < 10; ++k) {
      const Diagram m = transformed(d, ang(rng), {shift(rng), shift(rng)});
      o.expect(std::abs(total_length(m) - len) < 1e-9, name + ": length changed under rigid motion");
      const auto moved = realize_all(m);
      for (std::size_t i = 0; i < curves.size(); ++i)
        o.expect(turning_number(moved[i]) == turning_number(curves[i]),
                 name + ": turning number changed under rigid motion");
    }
  }
  // Rotating outer disks about D0 within the minimiser families.
  const Diagram tref = catalog_get("trefoil").diagram;
  std::uniform_real_distribution<double> small(-0.25, 0.25);
  for (int k = 0; k < 20; ++k) {
    Diagram d = tref;
    for (const char* id : {"D1", "D2"}) {
      const auto i = d.config.index_of(id);
      d.config.set_center(i, rotate(d.config[i].center, small(rng)));
    }
    if (!d.config.feasible()) continue;
    o.expect(std::abs(total_length(d) - (12 + 4 * pi)) < 1e-9, "trefoil family length " + num(total_length(d)));
  }
  const Diagram hopf = catalog_get("hopf").diagram;
  for (double a = -2.0; a <= 2.0; a += 0.25) {
    Diagram d = hopf;
    const auto i = d.config.index_of("D1");
    d.config.set_center(i, rotate(d.config[i].center, a));
    o.expect(std::abs(total_length(d) - (8 + 4 * pi)) < 1e-9, "hopf family length at " + num(a));
  }
  return o;
}

Outcome round_trip() {
  Outcome o;
  auto names = catalog_names();
  for (const char* extra : {"family1(3)", "family2(3)"}) names.push_back(extra);
  RenderOptions opts;
  opts.draw_ribbon = opts.draw_disks = true;
  for (const auto& name : names) {
    const Diagram d = catalog_get(name).diagram;
    o.expect(parse_diagram(serialize_diagram(d)) == d, name + ": parse(serialize) differs");
    o.expect(render_svg(d, opts) == render_svg(d, opts), name + ": SVG differs between renders");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exact-length regression", exact_lengths},
      {"ribbonlength values", ribbonlengths},
      {"gradient vs finite differences", gradient_check},
      {"optimization convergence", optimization},
      {"equilibrium certification", equilibrium},
      {"checker truth table", truth_table},
      {"crossing bound", crossing_bounds},
      {"region counts", region_counts},
      {"structural invariants", structural_invariants},
      {"round-trip and determinism", round_trip},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
    std::printf("criterion %2zu %-32s %s%s\n", k + 1, criteria[k].first, o.pass ? "PASS" : "FAIL",
                o.notes.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
