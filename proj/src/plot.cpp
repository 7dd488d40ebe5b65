#include "nmslab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "nmslab/errors.hpp"
#include "nmslab/io.hpp"

namespace nmslab {

namespace {

constexpr int kWidth = 800;
constexpr int kPanelHeight = 420;
constexpr int kMarginLeft = 90;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 48;
constexpr int kMarginBottom = 64;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Range {
  Real lo = 0, hi = 1;
  Real map(Real v, Real pix_lo, Real pix_hi) const {
    const Real f = (v - lo) / (hi - lo);
    return pix_lo + f * (pix_hi - pix_lo);
  }
};

Range span(const std::vector<Series>& series, bool use_x) {
  Real lo = std::numeric_limits<Real>::infinity();
  Real hi = -lo;
  for (const auto& s : series) {
    const auto& v = use_x ? s.x : s.y;
    for (Real val : v) {
      lo = std::min(lo, val);
      hi = std::max(hi, val);
    }
  }
  if (!(hi > lo)) {  // flat series: open a symmetric window
    const Real pad = std::max(std::abs(lo), Real(1)) * 1e-3;
    lo -= pad;
    hi += pad;
  }
  const Real margin = 0.05 * (hi - lo);
  return {lo - margin, hi + margin};
}

void render_panel(std::ostringstream& svg, const Panel& panel, int y_off) {
  if (panel.series.empty())
    throw NumericalError("plot panel has no series");
  for (const auto& s : panel.series) {
    if (s.x.size() != s.y.size() || s.x.empty())
      throw NumericalError("plot series empty or length-mismatched");
    for (size_t i = 0; i < s.x.size(); ++i)
      if (std::isnan(s.x[i]) || std::isnan(s.y[i]))
        throw NumericalError("NaN sample in plot series: " +
                             (s.label.empty() ? "(unnamed)" : s.label));
  }

  const Real px_lo = kMarginLeft;
  const Real px_hi = kWidth - kMarginRight;
  const Real py_lo = y_off + kPanelHeight - kMarginBottom;  // y axis points up
  const Real py_hi = y_off + kMarginTop;
  const Range rx = span(panel.series, true);
  const Range ry = span(panel.series, false);

  svg << "<rect x=\"" << px_lo << "\" y=\"" << py_hi << "\" width=\""
      << px_hi - px_lo << "\" height=\"" << py_lo - py_hi
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  svg << "<text x=\"" << (px_lo + px_hi) / 2 << "\" y=\"" << y_off + 24
      << "\" text-anchor=\"middle\" font-size=\"15\">" << panel.title
      << "</text>\n";

  for (int tick = 0; tick <= 4; ++tick) {
    const Real fx = rx.lo + (rx.hi - rx.lo) * tick / 4;
    const Real px = rx.map(fx, px_lo, px_hi);
    svg << "<line x1=\"" << num(px) << "\" y1=\"" << py_lo << "\" x2=\""
        << num(px) << "\" y2=\"" << py_lo + 6 << "\" stroke=\"#333333\"/>\n";
    svg << "<text x=\"" << num(px) << "\" y=\"" << py_lo + 22
        << "\" text-anchor=\"middle\" font-size=\"11\">" << num(fx)
        << "</text>\n";
    const Real fy = ry.lo + (ry.hi - ry.lo) * tick / 4;
    const Real py = ry.map(fy, py_lo, py_hi);
    svg << "<line x1=\"" << px_lo - 6 << "\" y1=\"" << num(py) << "\" x2=\""
        << px_lo << "\" y2=\"" << num(py) << "\" stroke=\"#333333\"/>\n";
    svg << "<text x=\"" << px_lo - 10 << "\" y=\"" << num(py + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << num(fy)
        << "</text>\n";
  }
  svg << "<text x=\"" << (px_lo + px_hi) / 2 << "\" y=\""
      << y_off + kPanelHeight - 16
      << "\" text-anchor=\"middle\" font-size=\"13\">" << panel.xlabel
      << "</text>\n";
  svg << "<text x=\"24\" y=\"" << (py_lo + py_hi) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 24 "
      << (py_lo + py_hi) / 2 << ")\">" << panel.ylabel << "</text>\n";

  int color = 0;
  int legend_y = y_off + kMarginTop + 16;
  for (const auto& s : panel.series) {
    const char* stroke = kPalette[color % 6];
    svg << "<polyline fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) {
      svg << num(rx.map(s.x[i], px_lo, px_hi)) << ","
          << num(ry.map(s.y[i], py_lo, py_hi));
      if (i + 1 < s.x.size()) svg << " ";
    }
    svg << "\"/>\n";
    if (!s.label.empty()) {
      svg << "<text x=\"" << px_hi - 12 << "\" y=\"" << legend_y
          << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << stroke
          << "\">" << s.label << "</text>\n";
      legend_y += 16;
    }
    ++color;
  }
}

}  // namespace

std::string render_svg(const std::vector<Panel>& panels) {
  if (panels.empty()) throw NumericalError("plot has no panels");
  std::ostringstream svg;
  const int height = kPanelHeight * static_cast<int>(panels.size());
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << kWidth << " "
      << height << "\" font-family=\"sans-serif\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (size_t i = 0; i < panels.size(); ++i)
    render_panel(svg, panels[i], static_cast<int>(i) * kPanelHeight);
  svg << "</svg>\n";
  return svg.str();
}

void write_svg(const std::string& path, const std::vector<Panel>& panels) {
  write_text(path, render_svg(panels));
}

}  // namespace nmslab
