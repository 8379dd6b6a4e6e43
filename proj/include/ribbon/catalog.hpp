#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ribbon/diagram.hpp"

namespace ribbon {

enum class RibbonStatus { Ribbon, NotRibbon, Conjectured };

const char* to_string(RibbonStatus s);

// Length of the form a + b*pi with integer a, b.
struct ExactLength {
  long a = 0;
  long b = 0;

  double value() const { return static_cast<double>(a) + static_cast<double>(b) * kPi; }
  friend bool operator==(const ExactLength&, const ExactLength&) = default;
};

struct CatalogEntry {
  std::string name;
  Diagram diagram;
  // Absent for entries whose length is only known numerically.
  std::optional<ExactLength> expected_length;
  RibbonStatus status = RibbonStatus::Ribbon;
};

// Accepts the fixed names plus "family1(n)" / "family2(n)" (also "family1:n").
// Throws UnknownName or InvalidFamilyParameter.
CatalogEntry catalog_get(const std::string& name);

// Fixed entries, followed by the two families with n = 1.
std::vector<std::string> catalog_names();

CatalogEntry family1(int n);
CatalogEntry family2(int n);

}  // namespace ribbon
