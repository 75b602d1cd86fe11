#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "error.hpp"
#include "format.hpp"

namespace intercept {

std::string_view to_string(ChartType chart) {
  switch (chart) {
    case ChartType::Intercept: return "intercept";
    case ChartType::Slope: return "slope";
    case ChartType::GroupedBar: return "grouped-bar";
    case ChartType::StackedBar: return "stacked-bar";
  }
  return "intercept";
}

ChartType chart_from_string(std::string_view name) {
  if (name == "intercept") return ChartType::Intercept;
  if (name == "slope") return ChartType::Slope;
  if (name == "grouped-bar") return ChartType::GroupedBar;
  if (name == "stacked-bar") return ChartType::StackedBar;
  fail(ErrorKind::Argument, "unknown chart type '" + std::string(name) + "'");
}

void validate(const RenderStyle& style) {
  if (!(style.strokeWidth > 0.0)) fail(ErrorKind::Argument, "stroke width must be positive");
  if (!(style.residueStrokeWidth >= style.strokeWidth)) {
    fail(ErrorKind::Argument, "residue stroke width must be at least the stroke width");
  }
  if (!(style.fontSize > 0.0)) fail(ErrorKind::Argument, "font size must be positive");
}

namespace {

std::string num(double v) { return fixed(v, 6); }

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

class SvgDocument {
 public:
  SvgDocument(double width, double height, const RenderStyle& style) {
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) +
            "\" height=\"" + num(height) + "\" viewBox=\"0.000000 0.000000 " + num(width) + " " +
            num(height) + "\">\n";
    out_ += "<rect x=\"0.000000\" y=\"0.000000\" width=\"" + num(width) + "\" height=\"" +
            num(height) + "\" fill=\"" + escape(style.background) + "\"/>\n";
  }

  void raw(std::string_view text) { out_ += text; }

  void line(double x1, double y1, double x2, double y2, std::string_view attrs) {
    out_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
            num(y2) + "\" " + std::string(attrs) + "/>\n";
  }

  void rect(double x, double y, double w, double h, std::string_view attrs) {
    out_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
            num(h) + "\" " + std::string(attrs) + "/>\n";
  }

  void text(double x, double y, std::string_view anchor, std::string_view body,
            std::string_view attrs = {}) {
    out_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + std::string(anchor) + "\"";
    if (!attrs.empty()) out_ += " " + std::string(attrs);
    out_ += ">" + escape(body) + "</text>\n";
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  std::string out_;
};

std::string attr(std::string_view name, std::string_view value) {
  return std::string(name) + "=\"" + escape(value) + "\"";
}

std::string font_attrs(const RenderStyle& style) {
  return attr("font-family", style.fontFamily) + " " + attr("font-size", num(style.fontSize));
}

// Maps layout coordinates (origin at the center, y up) onto the canvas.
struct CanvasFrame {
  double cx;
  double cy;
  double x(const Point& p) const { return cx + p.x; }
  double y(const Point& p) const { return cy - p.y; }
};

std::string arc_path(const CanvasFrame& frame, double radius, double span, Side side) {
  const Point from = polar_point(radius, 0.0, side);
  const Point to = polar_point(radius, span, side);
  // Rise runs bottom -> right -> top, counterclockwise on screen.
  const char* sweep = side == Side::Rise ? "0" : "1";
  return "M " + num(frame.x(from)) + " " + num(frame.y(from)) + " A " + num(radius) + " " +
         num(radius) + " 0 0 " + sweep + " " + num(frame.x(to)) + " " + num(frame.y(to));
}

std::string item_color(const ItemLayout& item, const LayoutConfig& config, const RenderStyle& style) {
  if (style.colorByImprovement) return item.improved ? config.riseColor : config.dropColor;
  return item.side == Side::Rise ? config.riseColor : config.dropColor;
}

}  // namespace

std::string render_intercept_svg(const Layout& layout, const RenderStyle& style) {
  validate(style);
  validate(layout.config);
  const auto& config = layout.config;
  const CanvasFrame frame{config.canvasWidth / 2.0, config.canvasHeight / 2.0};
  SvgDocument svg(config.canvasWidth, config.canvasHeight, style);

  svg.raw("<g id=\"axes\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1.000000\">\n");
  for (const Side side : {Side::Rise, Side::Drop}) {
    const std::string sideName(to_string(side));
    svg.raw("<path class=\"outer-axis " + sideName + "\" d=\"" +
            arc_path(frame, config.R, layout.scale.span(), side) + "\"/>\n");
    const double r = config.radius(side);
    if (r > 0.0) {
      svg.raw("<path class=\"inner-axis " + sideName + "\" d=\"" +
              arc_path(frame, r, layout.scale.span(), side) + "\" stroke-dasharray=\"4 3\"/>\n");
    }
  }
  svg.line(frame.x(layout.M), frame.y(layout.M), frame.x(layout.N), frame.y(layout.N),
           "class=\"separator\"");
  svg.raw("</g>\n");

  svg.raw("<g id=\"ticks\" stroke=\"#888888\" stroke-width=\"1.000000\" " + font_attrs(style) + ">\n");
  for (const auto& tick : layout.ticks) {
    const std::string sideName(to_string(tick.side));
    const double angle = layout.scale.angle(tick.value);
    const Point out = polar_point(config.R + 6.0, angle, tick.side);
    svg.line(frame.x(tick.outer), frame.y(tick.outer), frame.x(out), frame.y(out),
             "class=\"tick outer " + sideName + "\"");
    const double r = config.radius(tick.side);
    if (r > 4.0) {
      const Point in = polar_point(r - 4.0, angle, tick.side);
      svg.line(frame.x(tick.inner), frame.y(tick.inner), frame.x(in), frame.y(in),
               "class=\"tick inner " + sideName + "\"");
    }
    const Point at = polar_point(config.R + 16.0, angle, tick.side);
    svg.text(frame.x(at), frame.y(at), tick.side == Side::Rise ? "start" : "end", tick.label,
             "class=\"tick-label\" stroke=\"none\" fill=\"#555555\"");
  }
  svg.raw("</g>\n");

  svg.raw("<g id=\"items\" fill=\"none\" stroke-linecap=\"round\">\n");
  for (const auto& item : layout.items) {
    const auto& g = item.geometry;
    const std::string color = item_color(item, config, style);
    const std::string sideName(to_string(item.side));
    svg.raw("<polyline class=\"item " + sideName + "\" " + attr("data-id", item.id) + " points=\"" +
            num(frame.x(g.A)) + "," + num(frame.y(g.A)) + " " + num(frame.x(g.B)) + "," +
            num(frame.y(g.B)) + "\" " + attr("stroke", color) + " stroke-width=\"" +
            num(style.strokeWidth) + "\"/>\n");
    if (g.residue) {
      // Relative move keeps the drawn length within rounding of one vector.
      svg.raw("<path class=\"residue " + sideName + "\" " + attr("data-id", item.id) + " d=\"M " +
              num(frame.x(g.A)) + " " + num(frame.y(g.A)) + " l " + num(g.P.x - g.A.x) + " " +
              num(g.A.y - g.P.y) + "\" " + attr("stroke", color) + " stroke-width=\"" +
              num(style.residueStrokeWidth) + "\"/>\n");
    }
  }
  svg.raw("</g>\n");

  svg.raw("<g id=\"labels\" " + font_attrs(style) + ">\n");
  for (const auto& item : layout.items) {
    if (!item.showLabel) continue;
    svg.text(frame.x(item.labelAnchor), frame.y(item.labelAnchor),
             item.side == Side::Rise ? "start" : "end", item.label,
             attr("data-id", item.id) + " " + attr("fill", config.residueHighlightColor));
  }
  svg.raw("</g>\n");

  if (!style.highlightIds.empty()) {
    const std::set<std::string> wanted(style.highlightIds.begin(), style.highlightIds.end());
    svg.raw("<g id=\"annotations\" " + font_attrs(style) + ">\n");
    for (const auto& item : layout.items) {
      if (!wanted.count(item.id)) continue;
      const Point tip = polar_point(config.R + 30.0, item.geometry.phiFinal, item.side);
      svg.line(frame.x(item.geometry.B), frame.y(item.geometry.B), frame.x(tip), frame.y(tip),
               attr("stroke", config.residueHighlightColor) + " stroke-width=\"1.000000\"");
      svg.text(frame.x(tip), frame.y(tip), item.side == Side::Rise ? "start" : "end", item.label,
               attr("data-id", item.id) + " font-weight=\"bold\" " +
                   attr("fill", config.residueHighlightColor));
    }
    svg.raw("</g>\n");
  }
  return svg.finish();
}

namespace {

struct Plot {
  double left;
  double right;
  double top;
  double bottom;
};

Plot plot_area(CanvasSize size) {
  if (!(size.width >= 200.0 && size.height >= 150.0) || !std::isfinite(size.width) ||
      !std::isfinite(size.height)) {
    fail(ErrorKind::Render, "canvas must be at least 200x150");
  }
  return {60.0, size.width - 30.0, 30.0, size.height - 40.0};
}

std::string baseline_color(const Dataset& dataset, const StateChangeItem& item, const RenderStyle& style) {
  if (style.colorByImprovement) return dataset.improved(item) ? style.riseColor : style.dropColor;
  return item.trend() == Trend::Drop ? style.dropColor : style.riseColor;
}

void require_nonnegative(const Dataset& dataset) {
  for (const auto& item : dataset.items) {
    if (item.initial < 0.0 || item.final < 0.0) {
      fail(ErrorKind::Render, "bar charts need nonnegative values; item '" + item.id + "' is negative");
    }
  }
}

double max_value(const Dataset& dataset) {
  double hi = 0.0;
  for (const auto& item : dataset.items) hi = std::max({hi, item.initial, item.final});
  return hi > 0.0 ? hi : 1.0;
}

void value_axis(SvgDocument& svg, const Plot& plot, double x, double lo, double hi,
                const RenderStyle& style) {
  svg.line(x, plot.top, x, plot.bottom, "stroke=\"#888888\" stroke-width=\"1.000000\"");
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", hi);
  svg.text(x - 6.0, plot.top + 4.0, "end", buffer, font_attrs(style) + " fill=\"#555555\"");
  std::snprintf(buffer, sizeof buffer, "%.6g", lo);
  svg.text(x - 6.0, plot.bottom, "end", buffer, font_attrs(style) + " fill=\"#555555\"");
}

}  // namespace

std::string render_slope_svg(const Dataset& dataset, CanvasSize size, const RenderStyle& style) {
  validate(style);
  validate(dataset);
  const Plot plot = plot_area(size);
  double lo = dataset.items.front().initial;
  double hi = lo;
  for (const auto& item : dataset.items) {
    lo = std::min({lo, item.initial, item.final});
    hi = std::max({hi, item.initial, item.final});
  }
  if (!(hi > lo)) fail(ErrorKind::Render, "degenerate value range");
  auto y = [&](double v) { return plot.bottom - (v - lo) / (hi - lo) * (plot.bottom - plot.top); };
  const double x0 = size.width * 0.3;
  const double x1 = size.width * 0.7;

  SvgDocument svg(size.width, size.height, style);
  svg.raw("<g id=\"axes\">\n");
  value_axis(svg, plot, x0, lo, hi, style);
  svg.line(x1, plot.top, x1, plot.bottom, "stroke=\"#888888\" stroke-width=\"1.000000\"");
  svg.text(x0, size.height - 14.0, "middle", "initial", font_attrs(style));
  svg.text(x1, size.height - 14.0, "middle", "final", font_attrs(style));
  svg.raw("</g>\n<g id=\"items\">\n");
  for (const auto& item : dataset.items) {
    svg.line(x0, y(item.initial), x1, y(item.final),
             "class=\"item " + std::string(to_string(item.trend())) + "\" " + attr("data-id", item.id) +
                 " " + attr("stroke", baseline_color(dataset, item, style)) + " stroke-width=\"" +
                 num(style.strokeWidth) + "\"");
  }
  svg.raw("</g>\n");
  return svg.finish();
}

std::string render_grouped_bar_svg(const Dataset& dataset, CanvasSize size, const RenderStyle& style) {
  validate(style);
  validate(dataset);
  require_nonnegative(dataset);
  const Plot plot = plot_area(size);
  const double hi = max_value(dataset);
  auto height = [&](double v) { return v / hi * (plot.bottom - plot.top); };
  const double group = (plot.right - plot.left) / static_cast<double>(dataset.items.size());
  const double bar = group * 0.4;

  SvgDocument svg(size.width, size.height, style);
  svg.raw("<g id=\"axes\">\n");
  value_axis(svg, plot, plot.left, 0.0, hi, style);
  svg.line(plot.left, plot.bottom, plot.right, plot.bottom, "stroke=\"#888888\" stroke-width=\"1.000000\"");
  svg.raw("</g>\n<g id=\"items\">\n");
  for (std::size_t i = 0; i < dataset.items.size(); ++i) {
    const auto& item = dataset.items[i];
    const double x = plot.left + group * static_cast<double>(i) + group * 0.1;
    const double hInitial = height(item.initial);
    const double hFinal = height(item.final);
    svg.rect(x, plot.bottom - hInitial, bar, hInitial,
             "class=\"bar initial\" " + attr("data-id", item.id) + " fill=\"#bdbdbd\"");
    svg.rect(x + bar, plot.bottom - hFinal, bar, hFinal,
             "class=\"bar final\" " + attr("data-id", item.id) + " " +
                 attr("fill", baseline_color(dataset, item, style)));
  }
  svg.raw("</g>\n");
  return svg.finish();
}

std::string render_stacked_bar_svg(const Dataset& dataset, CanvasSize size, const RenderStyle& style) {
  validate(style);
  validate(dataset);
  require_nonnegative(dataset);
  const Plot plot = plot_area(size);
  const double hi = max_value(dataset);
  auto height = [&](double v) { return v / hi * (plot.bottom - plot.top); };
  const double slot = (plot.right - plot.left) / static_cast<double>(dataset.items.size());
  const double bar = slot * 0.7;

  SvgDocument svg(size.width, size.height, style);
  svg.raw("<g id=\"axes\">\n");
  value_axis(svg, plot, plot.left, 0.0, hi, style);
  svg.line(plot.left, plot.bottom, plot.right, plot.bottom, "stroke=\"#888888\" stroke-width=\"1.000000\"");
  svg.raw("</g>\n<g id=\"items\">\n");
  for (std::size_t i = 0; i < dataset.items.size(); ++i) {
    const auto& item = dataset.items[i];
    const double x = plot.left + slot * static_cast<double>(i) + slot * 0.15;
    const double base = height(std::min(item.initial, item.final));
    svg.rect(x, plot.bottom - base, bar, base,
             "class=\"bar base\" " + attr("data-id", item.id) + " fill=\"#bdbdbd\"");
    if (item.trend() != Trend::Flat) {
      const double top = height(std::max(item.initial, item.final));
      svg.rect(x, plot.bottom - top, bar, top - base,
               "class=\"bar delta " + std::string(to_string(item.trend())) + "\" " +
                   attr("data-id", item.id) + " " + attr("fill", baseline_color(dataset, item, style)));
    }
  }
  svg.raw("</g>\n");
  return svg.finish();
}

}  // namespace intercept
