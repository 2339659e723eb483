#include "physnn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "physnn/errors.hpp"

namespace physnn {

namespace {

const char* kPalette[] = {"#1f77b4", "#2ca02c", "#d62728", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Mapper {
  double lo = 0.0, hi = 1.0;
  double pix_lo = 0.0, pix_hi = 1.0;

  double operator()(double v) const {
    if (hi == lo) return 0.5 * (pix_lo + pix_hi);
    return pix_lo + (v - lo) / (hi - lo) * (pix_hi - pix_lo);
  }
};

/// Round tick positions: 5 evenly spaced values across the range.
std::vector<double> ticks(double lo, double hi) {
  std::vector<double> out;
  for (int i = 0; i <= 4; ++i) out.push_back(lo + (hi - lo) * i / 4.0);
  return out;
}

}  // namespace

SvgResult emit_svg(const std::vector<Series>& series, const PlotOptions& options) {
  if (series.empty()) throw ConfigError("svg: no series to plot");
  for (const auto& s : series) {
    if (s.xs.empty() || s.ys.empty()) {
      throw ConfigError("svg: series \"" + s.label + "\" is empty");
    }
    if (s.xs.size() != s.ys.size()) {
      throw ConfigError("svg: series \"" + s.label + "\" has mismatched x/y lengths");
    }
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) {
        throw ConfigError("svg: series \"" + s.label + "\" contains a non-finite value");
      }
    }
  }

  SvgResult result;

  // Optional log mapping: clamp nonpositive values to the smallest positive
  // datum so every point stays on the panel, and say so.
  std::vector<Series> drawn = series;
  if (options.log_y) {
    double min_pos = std::numeric_limits<double>::infinity();
    for (const auto& s : drawn) {
      for (const double y : s.ys) {
        if (y > 0.0) min_pos = std::min(min_pos, y);
      }
    }
    if (!std::isfinite(min_pos)) {
      throw ConfigError("svg: log scale requested but no series has a positive value");
    }
    long clamped = 0;
    for (auto& s : drawn) {
      for (double& y : s.ys) {
        if (y <= 0.0) {
          y = min_pos;
          ++clamped;
        }
        y = std::log10(y);
      }
    }
    if (clamped > 0) {
      result.warnings.push_back("log scale: " + std::to_string(clamped) +
                                " nonpositive value(s) clamped to " + num(min_pos));
    }
  }

  double x_lo = drawn[0].xs[0], x_hi = x_lo;
  double y_lo = drawn[0].ys[0], y_hi = y_lo;
  for (const auto& s : drawn) {
    for (const double x : s.xs) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
    }
    for (const double y : s.ys) {
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (x_hi == x_lo) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  if (y_hi == y_lo) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }

  const double left = 70, right = 20, top = 40, bottom = 50;
  const double w = options.width, h = options.height;
  const Mapper mx{x_lo, x_hi, left, w - right};
  const Mapper my{y_lo, y_hi, h - bottom, top};

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(w) +
         "\" height=\"" + num(h) + "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" fill=\"white\"/>\n";

  if (!options.title.empty()) {
    svg += "<text x=\"" + num(w / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
           escape(options.title) + "</text>\n";
  }

  // Axes.
  svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(h - bottom) + "\" x2=\"" + num(w - right) +
         "\" y2=\"" + num(h - bottom) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" +
         num(h - bottom) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (const double t : ticks(x_lo, x_hi)) {
    const double px = mx(t);
    svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(h - bottom) + "\" x2=\"" + num(px) +
           "\" y2=\"" + num(h - bottom + 5) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(px) + "\" y=\"" + num(h - bottom + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + num(t) +
           "</text>\n";
  }
  for (const double t : ticks(y_lo, y_hi)) {
    const double py = my(t);
    svg += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(py) + "\" x2=\"" + num(left) +
           "\" y2=\"" + num(py) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    const std::string label = options.log_y ? ("1e" + num(t)) : num(t);
    svg += "<text x=\"" + num(left - 8) + "\" y=\"" + num(py + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + label +
           "</text>\n";
  }
  if (!options.x_label.empty()) {
    svg += "<text x=\"" + num((left + w - right) / 2) + "\" y=\"" + num(h - 10) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           escape(options.x_label) + "</text>\n";
  }
  if (!options.y_label.empty()) {
    svg += "<text x=\"16\" y=\"" + num((top + h - bottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 " +
           num((top + h - bottom) / 2) + ")\">" + escape(options.y_label) + "</text>\n";
  }

  // Curves.
  for (std::size_t i = 0; i < drawn.size(); ++i) {
    const auto& s = drawn[i];
    const std::string color =
        s.color.empty() ? kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))] : s.color;
    svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t p = 0; p < s.xs.size(); ++p) {
      if (p > 0) svg += ' ';
      svg += num(mx(s.xs[p])) + "," + num(my(s.ys[p]));
    }
    svg += "\"/>\n";
  }

  // Legend: one swatch + one text entry per series.
  const double legend_x = left + 12;
  for (std::size_t i = 0; i < drawn.size(); ++i) {
    const auto& s = drawn[i];
    const std::string color =
        s.color.empty() ? kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))] : s.color;
    const double ly = top + 14 + 18 * static_cast<double>(i);
    svg += "<line x1=\"" + num(legend_x) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
           num(legend_x + 22) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text class=\"legend-entry\" x=\"" + num(legend_x + 28) + "\" y=\"" + num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(s.label) + "</text>\n";
  }

  svg += "</svg>\n";
  result.document = std::move(svg);
  return result;
}

}  // namespace physnn
