#pragma once

#include <string>
#include <vector>

#include "layout.hpp"
#include "model.hpp"

namespace intercept {

enum class ChartType { Intercept, Slope, GroupedBar, StackedBar };

std::string_view to_string(ChartType chart);
ChartType chart_from_string(std::string_view name);

struct RenderStyle {
  double strokeWidth = 1.2;
  double residueStrokeWidth = 3.0;  // the bold portion
  std::string fontFamily = "Helvetica, Arial, sans-serif";
  double fontSize = 11.0;
  std::string background = "#ffffff";
  std::vector<std::string> highlightIds;
  // Baseline charts only; the intercept graph takes colors from the layout.
  std::string riseColor = "#1f77b4";
  std::string dropColor = "#d62728";
  // Color items by improved/worsened instead of by side.
  bool colorByImprovement = false;
};

void validate(const RenderStyle& style);

struct CanvasSize {
  double width = 800.0;
  double height = 800.0;
};

// All emitters produce standalone SVG 1.1 with numbers in fixed notation
// (6 decimals), so identical inputs give identical bytes.
std::string render_intercept_svg(const Layout& layout, const RenderStyle& style);
std::string render_slope_svg(const Dataset& dataset, CanvasSize size, const RenderStyle& style);
std::string render_grouped_bar_svg(const Dataset& dataset, CanvasSize size, const RenderStyle& style);
std::string render_stacked_bar_svg(const Dataset& dataset, CanvasSize size, const RenderStyle& style);

}  // namespace intercept
