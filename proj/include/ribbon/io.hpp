#pragma once

#include <optional>
#include <string>

#include "ribbon/catalog.hpp"
#include "ribbon/diagram.hpp"

namespace ribbon {

// JSON diagram files:
//   {"name": "...", "disks": [{"id": "D0", "center": [x, y]}, ...],
//    "loops": [[{"disk": "D0", "orient": "ccw"}, ...], ...]}
// Unknown fields are rejected. Throws ParseError (with line and column for
// malformed JSON), ValidationError or UnknownDisk.
Diagram parse_diagram(const std::string& text);
std::string serialize_diagram(const Diagram& d);

Diagram read_diagram_file(const std::string& path);
void write_diagram_file(const std::string& path, const Diagram& d);

// Integers a, b with |a|, |b| <= limit and |value - (a + b*pi)| < tol.
std::optional<ExactLength> detect_closed_form(double value, double tol = 1e-9, long limit = 1000);

// "12 + 4π", "2π", "-3 + π", "0".
std::string format_closed_form(const ExactLength& e);

// "12 + 4π ≈ 24.566371", or just the decimal when no closed form is found.
std::string format_length(double value);

}  // namespace ribbon
