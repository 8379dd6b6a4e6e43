#include "ribbon/catalog.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "ribbon/error.hpp"

namespace ribbon {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

constexpr Orientation ccw = Orientation::CCW;
constexpr Orientation cw = Orientation::CW;

std::string idx(const std::string& base, int k) { return base + "_" + std::to_string(k); }

CatalogEntry make(std::string name, std::vector<Disk> disks,
                  std::vector<std::vector<ItineraryStop>> loops, std::optional<ExactLength> len,
                  RibbonStatus status) {
  CatalogEntry e;
  e.name = name;
  e.diagram.name = std::move(name);
  e.diagram.config = DiskConfig(std::move(disks));
  for (auto& l : loops) e.diagram.loops.push_back({std::move(l)});
  e.expected_length = len;
  e.status = status;
  return e;
}

CatalogEntry unknot() {
  return make("unknot", {{"D0", {0, 0}}}, {{{"D0", ccw}}}, ExactLength{0, 2}, RibbonStatus::Ribbon);
}

CatalogEntry twisted_unknot() {
  return make("twisted-unknot", {{"D0", {0, 0}}, {"D1", {2, 0}}},
              {{{"D0", ccw}, {"D1", cw}}}, ExactLength{0, 4}, RibbonStatus::Ribbon);
}

// Outer disks at 90, 210 and 330 degrees around D0; the core visits D0
// between consecutive outer disks.
CatalogEntry trefoil() {
  return make("trefoil",
              {{"D0", {0, 0}}, {"D1", {0, 2}}, {"D2", {-kSqrt3, -1}}, {"D3", {kSqrt3, -1}}},
              {{{"D1", ccw}, {"D0", ccw}, {"D3", ccw}, {"D0", ccw}, {"D2", ccw}, {"D0", ccw}}},
              ExactLength{12, 4}, RibbonStatus::Ribbon);
}

// The other minimal-crossing trefoil shadow, with a bigon as the unbounded
// face. The two crossings on that bigon end up closer than 2.
CatalogEntry trefoil_alt_h() {
  return make("trefoil-alt-h",
              {{"D0", {0, 0}}, {"D1", {-kSqrt2, kSqrt2}}, {"D2", {kSqrt2, kSqrt2}}, {"D3", {0, -2}}},
              {{{"D0", cw}, {"D1", cw}, {"D0", cw}, {"D3", cw}, {"D2", cw}}}, std::nullopt,
              RibbonStatus::NotRibbon);
}

CatalogEntry hopf() {
  return make("hopf", {{"D0", {0, 0}}, {"D1", {2, 0}}, {"D2", {-2, 0}}},
              {{{"D0", ccw}, {"D1", ccw}}, {{"D0", ccw}, {"D2", ccw}}}, ExactLength{8, 4},
              RibbonStatus::Ribbon);
}

CatalogEntry figure8_diskmin() {
  return make("figure8-diskmin",
              {{"D0", {0, 0}},
               {"D1", {-kSqrt3, -1}},
               {"D2", {0, -2}},
               {"D3", {kSqrt3, -1}},
               {"D4", {0, 2}}},
              {{{"D1", cw}, {"D3", cw}, {"D4", ccw}, {"D0", cw}, {"D2", ccw}}},
              ExactLength{12, 5}, RibbonStatus::NotRibbon);
}

CatalogEntry figure8_conjectured() {
  return make("figure8-conjectured",
              {{"D0", {0, 0}},
               {"D1", {-kSqrt2, -kSqrt2}},
               {"D2", {0, -2 * kSqrt2}},
               {"D3", {kSqrt2, -kSqrt2}},
               {"D4", {0, 2}}},
              {{{"D1", cw}, {"D3", cw}, {"D4", ccw}, {"D0", cw}, {"D2", ccw}}},
              std::nullopt, RibbonStatus::Conjectured);
}

// Component A wraps D1,D0 and D2,D3 with a twist between D0 and D2;
// component B wraps the rhombus D0,D4,D2,D5.
std::vector<Disk> whitehead_disks(double dx, int k, bool suffix) {
  auto id = [&](const char* base) { return suffix ? idx(base, k) : std::string(base); };
  return {{id("D0"), {dx - 1, 0}},     {id("D1"), {dx - 3, 0}},      {id("D2"), {dx + 1, 0}},
          {id("D3"), {dx + 3, 0}},     {id("D4"), {dx, kSqrt3}}, {id("D5"), {dx, -kSqrt3}}};
}

CatalogEntry whitehead() {
  return make("whitehead", whitehead_disks(0.0, 0, false),
              {{{"D1", ccw}, {"D0", ccw}, {"D2", cw}, {"D3", cw}, {"D2", cw}, {"D0", ccw}},
               {{"D0", ccw}, {"D5", ccw}, {"D2", ccw}, {"D4", ccw}}},
              ExactLength{16, 6}, RibbonStatus::NotRibbon);
}

CatalogEntry olympic_rings() {
  return make("olympic-rings",
              {{"A", {-3, 0}}, {"AB", {-1, 0}}, {"BC", {1, 0}}, {"C", {3, 0}}, {"M", {0, kSqrt3}}},
              {{{"A", ccw}, {"AB", ccw}}, {{"AB", ccw}, {"BC", ccw}, {"M", ccw}}, {{"BC", ccw}, {"C", ccw}}},
              ExactLength{14, 6}, RibbonStatus::Ribbon);
}

int parse_family(const std::string& name, const std::string& prefix, bool& matched) {
  matched = false;
  if (name.rfind(prefix, 0) != 0) return 0;
  std::string rest = name.substr(prefix.size());
  if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') {
    rest = rest.substr(1, rest.size() - 2);
  } else if (!rest.empty() && rest.front() == ':') {
    rest = rest.substr(1);
  } else {
    return 0;
  }
  matched = true;
  int n = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
  if (ec != std::errc() || ptr != rest.data() + rest.size())
    throw Error(ErrorCode::InvalidFamilyParameter, "bad family parameter '" + rest + "'");
  return n;
}

}  // namespace

const char* to_string(RibbonStatus s) {
  switch (s) {
    case RibbonStatus::Ribbon: return "ribbon";
    case RibbonStatus::NotRibbon: return "notRibbon";
    case RibbonStatus::Conjectured: return "conjectured";
  }
  return "?";
}

// Whitehead copies 8 apart. The A components are merged into one loop
// through nugatory crossings between D3_k and D1_{k+1}.
CatalogEntry family1(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidFamilyParameter, "family1 needs n >= 1");
  std::vector<Disk> disks;
  for (int k = 0; k < n; ++k) {
    auto w = whitehead_disks(8.0 * k, k, true);
    disks.insert(disks.end(), w.begin(), w.end());
  }
  std::function<void(int, std::vector<ItineraryStop>&)> chain = [&](int k, auto& out) {
    out.push_back({idx("D1", k), ccw});
    out.push_back({idx("D0", k), ccw});
    out.push_back({idx("D2", k), cw});
    out.push_back({idx("D3", k), cw});
    if (k + 1 < n) {
      chain(k + 1, out);
      out.push_back({idx("D1", k + 1), ccw});
      out.push_back({idx("D3", k), cw});
    }
    out.push_back({idx("D2", k), cw});
    out.push_back({idx("D0", k), ccw});
  };
  std::vector<std::vector<ItineraryStop>> loops(1);
  chain(0, loops[0]);
  for (int k = 0; k < n; ++k)
    loops.push_back({{idx("D0", k), ccw}, {idx("D5", k), ccw}, {idx("D2", k), ccw}, {idx("D4", k), ccw}});
  return make("family1(" + std::to_string(n) + ")", std::move(disks), std::move(loops),
              ExactLength{16L * n, 6L * n}, RibbonStatus::NotRibbon);
}

// Hopf copies 6 apart, neighbouring copies joined through a twist contact.
CatalogEntry family2(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidFamilyParameter, "family2 needs n >= 1");
  std::vector<Disk> disks;
  for (int k = 0; k < n; ++k) {
    const double x = 6.0 * k;
    disks.push_back({idx("D0", k), {x, 0}});
    disks.push_back({idx("D1", k), {x + 2, 0}});
    disks.push_back({idx("D2", k), {x - 2, 0}});
  }
  std::vector<std::vector<ItineraryStop>> loops;
  loops.push_back({{idx("D0", 0), ccw}, {idx("D2", 0), ccw}});
  for (int k = 0; k + 1 < n; ++k)
    loops.push_back({{idx("D0", k), ccw},
                     {idx("D1", k), ccw},
                     {idx("D2", k + 1), cw},
                     {idx("D0", k + 1), cw},
                     {idx("D2", k + 1), cw},
                     {idx("D1", k), ccw}});
  loops.push_back({{idx("D0", n - 1), ccw}, {idx("D1", n - 1), ccw}});
  return make("family2(" + std::to_string(n) + ")", std::move(disks), std::move(loops),
              ExactLength{8L * n, 4L * n}, RibbonStatus::Ribbon);
}

CatalogEntry catalog_get(const std::string& name) {
  static const std::map<std::string, CatalogEntry (*)()> fixed = {
      {"unknot", unknot},
      {"twisted-unknot", twisted_unknot},
      {"trefoil", trefoil},
      {"trefoil-alt-h", trefoil_alt_h},
      {"hopf", hopf},
      {"figure8-diskmin", figure8_diskmin},
      {"figure8-conjectured", figure8_conjectured},
      {"whitehead", whitehead},
      {"olympic-rings", olympic_rings},
  };
  if (auto it = fixed.find(name); it != fixed.end()) return it->second();

  bool matched = false;
  int n = parse_family(name, "family1", matched);
  if (matched) return family1(n);
  n = parse_family(name, "family2", matched);
  if (matched) return family2(n);
  throw Error(ErrorCode::UnknownName, "no catalog entry named '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"unknot",          "twisted-unknot",      "trefoil",   "trefoil-alt-h",
          "hopf",            "figure8-diskmin",     "figure8-conjectured", "whitehead",
          "olympic-rings",   "family1(1)",          "family2(1)"};
}

}  // namespace ribbon
