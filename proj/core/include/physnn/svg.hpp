#pragma once

#include <string>
#include <vector>

namespace physnn {

/// One labeled curve. An empty color picks the next palette entry.
struct Series {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
  std::string color;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  int width = 640;
  int height = 420;
};

/// A standalone SVG 1.1 document plus any degenerate-input notes (for
/// example, nonpositive values clamped before a log-scale mapping).
struct SvgResult {
  std::string document;
  std::vector<std::string> warnings;
};

/// Render the series as polylines with axes, tick labels, and one legend
/// entry per series. With log_y, nonpositive values are clamped to the
/// smallest positive datum across all series and a warning is recorded.
/// Throws ConfigError when there are no series, a series is empty or
/// ragged, a value is non-finite, or log_y finds no positive datum.
SvgResult emit_svg(const std::vector<Series>& series, const PlotOptions& options);

}  // namespace physnn
