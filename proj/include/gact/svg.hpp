#pragma once

#include "gact/complex.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gact {

struct SvgStyle {
  std::map<Simplex, int> group;  ///< fill class per maximal simplex; absent means unfilled
  std::vector<std::pair<Point, Point>> arrows;
  bool labels = true;
  std::string title;
};

/// Deterministic drawing of a complex of dimension at most 2 from its exact coordinates.
std::string export_svg(const ChromaticComplex& c, const SvgStyle& style = {});

}  // namespace gact
