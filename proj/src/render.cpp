#include "ribbon/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "ribbon/error.hpp"

namespace ribbon {

namespace {

struct Frame {
  double min_x, max_y, scale;

  double sx(double x) const { return (x - min_x) * scale; }
  double sy(double y) const { return (max_y - y) * scale; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string pt(const Frame& f, Point2 p) { return num(f.sx(p.x)) + " " + num(f.sy(p.y)); }

// Arc path commands, split into quarter turns so the large-arc flag is never
// needed. The y flip turns a plane CCW arc into a screen CW one.
void arc_commands(std::ostringstream& out, const Frame& f, Point2 c, double r, double start,
                  double sweep) {
  const int parts = std::max(1, static_cast<int>(std::ceil(std::abs(sweep) / (kPi / 2) - 1e-9)));
  const char* flag = sweep > 0 ? "0" : "1";
  for (int k = 1; k <= parts; ++k) {
    const Point2 p = c + r * unit_at(start + sweep * k / parts);
    out << " A " << num(r * f.scale) << " " << num(r * f.scale) << " 0 0 " << flag << " " << pt(f, p);
  }
}

template <typename Pieces, typename Start, typename Emit>
std::string closed_path(const Pieces& pieces, Start start_of, Emit emit, const Frame& f) {
  std::ostringstream body;
  for (const auto& piece : pieces) emit(body, piece);
  if (pieces.empty() || body.str().empty()) return {};
  return "M " + pt(f, start_of(pieces.front())) + body.str() + " Z";
}

std::string core_path(const CsCurve& curve, const Frame& f) {
  return closed_path(
      curve.pieces, [](const Piece& p) { return piece_start(p); },
      [&](std::ostringstream& out, const Piece& p) {
        if (const auto* s = std::get_if<Segment>(&p)) {
          if (s->length() > kPointTol) out << " L " << pt(f, s->q);
        } else {
          const auto& a = std::get<Arc>(p);
          if (std::abs(a.sweep) > 1e-12) arc_commands(out, f, a.center, 1.0, a.start_angle, a.sweep);
        }
      },
      f);
}

std::string offset_path(const CsCurve& curve, double d, const Frame& f) {
  std::vector<OffsetPiece> pieces;
  for (const auto& p : curve.pieces) pieces.push_back(offset_piece(p, d));
  return closed_path(
      pieces,
      [](const OffsetPiece& p) {
        if (const auto* s = std::get_if<Segment>(&p)) return s->p;
        const auto& a = std::get<CircularArc>(p);
        return a.point_at_angle(a.start_angle);
      },
      [&](std::ostringstream& out, const OffsetPiece& p) {
        if (const auto* s = std::get_if<Segment>(&p)) {
          if (s->length() > kPointTol) out << " L " << pt(f, s->q);
          return;
        }
        const auto& a = std::get<CircularArc>(p);
        // Radius 0 arcs collapse to their centre.
        if (a.radius > 1e-12 && std::abs(a.sweep) > 1e-12)
          arc_commands(out, f, a.center, a.radius, a.start_angle, a.sweep);
      },
      f);
}

}  // namespace

std::string render_svg(const Diagram& d, const RenderOptions& opts, const CheckReport* report) {
  if (!(opts.scale > 0.0)) throw Error(ErrorCode::ValidationError, "scale must be positive");
  const auto curves = realize_all(d);

  const double margin = 2.5;
  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_x;
  for (const auto& disk : d.config.disks()) {
    min_x = std::min(min_x, disk.center.x);
    max_x = std::max(max_x, disk.center.x);
    min_y = std::min(min_y, disk.center.y);
    max_y = std::max(max_y, disk.center.y);
  }
  if (d.config.size() == 0) min_x = max_x = min_y = max_y = 0.0;
  min_x -= margin;
  min_y -= margin;
  max_x += margin;
  max_y += margin;
  const Frame f{min_x, max_y, opts.scale};
  const double width = (max_x - min_x) * opts.scale;
  const double height = (max_y - min_y) * opts.scale;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height)
      << "\">\n";
  if (!d.name.empty()) {
    std::string title;
    for (char c : d.name) {
      if (c == '<') title += "&lt;";
      else if (c == '>') title += "&gt;";
      else if (c == '&') title += "&amp;";
      else title += c;
    }
    out << "  <title>" << title << "</title>\n";
  }
  out << "  <rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" fill=\"white\"/>\n";

  if (opts.draw_disks) {
    out << "  <g id=\"disks\" fill=\"#dde6f0\" stroke=\"#7a8ca0\" stroke-width=\"1\">\n";
    for (const auto& disk : d.config.disks())
      out << "    <circle cx=\"" << num(f.sx(disk.center.x)) << "\" cy=\"" << num(f.sy(disk.center.y))
          << "\" r=\"" << num(opts.scale) << "\"/>\n";
    out << "  </g>\n";
  }

  if (opts.draw_ribbon) {
    out << "  <g id=\"ribbon\" fill=\"none\" stroke=\"#c0504d\" stroke-width=\"1\">\n";
    for (const auto& c : curves)
      for (double side : {1.0, -1.0})
        // A fully collapsed side (tight unknot interior) is left out.
        if (auto path = offset_path(c, side, f); !path.empty())
          out << "    <path d=\"" << path << "\"/>\n";
    out << "  </g>\n";
  }

  out << "  <g id=\"core\" fill=\"none\" stroke=\"black\" stroke-width=\"2\">\n";
  for (const auto& c : curves) out << "    <path d=\"" << core_path(c, f) << "\"/>\n";
  out << "  </g>\n";

  if (opts.highlight_violations && report && !report->violations.empty()) {
    out << "  <g id=\"violations\" fill=\"none\" stroke=\"#e36c09\" stroke-width=\"2\">\n";
    for (const auto& v : report->violations)
      out << "    <circle cx=\"" << num(f.sx(v.location.x)) << "\" cy=\"" << num(f.sy(v.location.y))
          << "\" r=\"6\"><title>" << to_string(v.kind) << "</title></circle>\n";
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace ribbon
