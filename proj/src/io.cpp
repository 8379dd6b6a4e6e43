#include "ribbon/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ribbon/error.hpp"

namespace ribbon {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& msg) {
  throw Error(ErrorCode::ParseError, msg);
}

void only_fields(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) schema_error(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) schema_error("unknown field '" + key + "' in " + where);
  }
}

const json& required(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where + " is missing '" + key + "'");
  return *it;
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string shortest_double(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

Diagram parse_diagram(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " +
                                           std::to_string(col) + ": " + e.what());
  }

  only_fields(doc, {"name", "disks", "loops"}, "diagram");
  Diagram d;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) schema_error("'name' must be a string");
    d.name = it->get<std::string>();
  }

  const json& disks = required(doc, "disks", "diagram");
  if (!disks.is_array()) schema_error("'disks' must be an array");
  std::vector<Disk> list;
  for (std::size_t i = 0; i < disks.size(); ++i) {
    const std::string where = "disks[" + std::to_string(i) + "]";
    const json& e = disks[i];
    only_fields(e, {"id", "center"}, where);
    const json& id = required(e, "id", where);
    const json& c = required(e, "center", where);
    if (!id.is_string()) schema_error(where + ".id must be a string");
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
      schema_error(where + ".center must be [x, y]");
    list.push_back({id.get<std::string>(), {c[0].get<double>(), c[1].get<double>()}});
  }
  d.config = DiskConfig(std::move(list));

  const json& loops = required(doc, "loops", "diagram");
  if (!loops.is_array()) schema_error("'loops' must be an array");
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const std::string where = "loops[" + std::to_string(i) + "]";
    if (!loops[i].is_array()) schema_error(where + " must be an array");
    LoopItinerary loop;
    for (std::size_t k = 0; k < loops[i].size(); ++k) {
      const std::string w = where + "[" + std::to_string(k) + "]";
      const json& s = loops[i][k];
      only_fields(s, {"disk", "orient"}, w);
      const json& disk = required(s, "disk", w);
      const json& orient = required(s, "orient", w);
      if (!disk.is_string()) schema_error(w + ".disk must be a string");
      if (orient != "ccw" && orient != "cw") schema_error(w + ".orient must be \"ccw\" or \"cw\"");
      loop.stops.push_back({disk.get<std::string>(), orient == "ccw" ? Orientation::CCW : Orientation::CW});
    }
    d.loops.push_back(std::move(loop));
  }

  validate(d);
  return d;
}

// Written by hand so that coordinates keep full round-trip precision and the
// layout stays stable.
std::string serialize_diagram(const Diagram& d) {
  std::ostringstream out;
  out << "{\n";
  if (!d.name.empty()) out << "  \"name\": " << json(d.name).dump() << ",\n";
  out << "  \"disks\": [\n";
  for (std::size_t i = 0; i < d.config.size(); ++i) {
    const Disk& k = d.config[i];
    out << "    {\"id\": " << json(k.id).dump() << ", \"center\": [" << shortest_double(k.center.x)
        << ", " << shortest_double(k.center.y) << "]}" << (i + 1 < d.config.size() ? "," : "") << "\n";
  }
  out << "  ],\n  \"loops\": [\n";
  for (std::size_t i = 0; i < d.loops.size(); ++i) {
    out << "    [";
    const auto& stops = d.loops[i].stops;
    for (std::size_t k = 0; k < stops.size(); ++k) {
      out << (k ? ", " : "") << "{\"disk\": " << json(stops[k].disk).dump() << ", \"orient\": \""
          << (stops[k].orient == Orientation::CCW ? "ccw" : "cw") << "\"}";
    }
    out << "]" << (i + 1 < d.loops.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

Diagram read_diagram_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_diagram(buf.str());
}

void write_diagram_file(const std::string& path, const Diagram& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ValidationError, "cannot write '" + path + "'");
  out << serialize_diagram(d);
}

std::optional<ExactLength> detect_closed_form(double value, double tol, long limit) {
  std::optional<ExactLength> best;
  double best_err = tol;
  for (long b = -limit; b <= limit; ++b) {
    const double a = std::round(value - static_cast<double>(b) * kPi);
    if (std::abs(a) > static_cast<double>(limit)) continue;
    const double err = std::abs(value - (a + static_cast<double>(b) * kPi));
    if (err < best_err) {
      best_err = err;
      best = ExactLength{static_cast<long>(a), b};
    }
  }
  return best;
}

std::string format_closed_form(const ExactLength& e) {
  auto pi_term = [](long b) {
    const long m = std::abs(b);
    return (m == 1 ? std::string() : std::to_string(m)) + "π";
  };
  if (e.b == 0) return std::to_string(e.a);
  if (e.a == 0) return (e.b < 0 ? "-" : "") + pi_term(e.b);
  return std::to_string(e.a) + (e.b < 0 ? " - " : " + ") + pi_term(e.b);
}

std::string format_length(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  if (auto e = detect_closed_form(value)) return format_closed_form(*e) + " ≈ " + buf;
  return buf;
}

}  // namespace ribbon
