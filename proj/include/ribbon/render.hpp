#pragma once

#include <string>

#include "ribbon/diagram.hpp"
#include "ribbon/verify.hpp"

namespace ribbon {

struct RenderOptions {
  double scale = 40.0;  // pixels per plane unit
  bool draw_ribbon = false;
  bool draw_disks = false;
  bool highlight_violations = false;
};

// SVG 1.1 document. The core is drawn with line and arc path commands, the
// ribbon as the two offset curves at distance 1. Output depends only on the
// inputs.
std::string render_svg(const Diagram& d, const RenderOptions& opts = {},
                       const CheckReport* report = nullptr);

}  // namespace ribbon
