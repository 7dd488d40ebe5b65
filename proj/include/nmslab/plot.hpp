#pragma once

#include <string>
#include <vector>

#include "nmslab/types.hpp"

namespace nmslab {

// A labeled polyline.
struct Series {
  std::string label;
  std::vector<Real> x;
  std::vector<Real> y;
};

// One axes panel with its own ranges, labels, and series.
struct Panel {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<Series> series;
};

// Deterministic SVG document (fixed palette and geometry, %.6g coordinates,
// no timestamps) with the panels stacked vertically, so regenerated plots
// are byte-diffable. Throws NumericalError on empty panels/series or on any
// NaN sample: bad data is never silently dropped.
std::string render_svg(const std::vector<Panel>& panels);

void write_svg(const std::string& path, const std::vector<Panel>& panels);

}  // namespace nmslab
