#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "model.hpp"

namespace intercept {

enum class LabelPolicy { None, ResidueOnly, All };

std::string_view to_string(LabelPolicy policy);
LabelPolicy label_policy_from_string(std::string_view name);

// Room kept between the outer axis and the canvas edge for labels.
inline constexpr double kLabelMargin = 40.0;

struct LayoutConfig {
  double R = 360.0;
  double rRise = 180.0;
  double rDrop = 180.0;
  double span = kPi;
  double canvasWidth = 800.0;
  double canvasHeight = 800.0;
  int tickCount = 8;
  std::string riseColor = "#1f77b4";
  std::string dropColor = "#d62728";
  std::string residueHighlightColor = "#222222";
  LabelPolicy labelPolicy = LabelPolicy::ResidueOnly;
  std::vector<std::string> warnings;

  double radius(Side side) const { return side == Side::Rise ? rRise : rDrop; }
};

// Throws Argument when a radius, span, canvas or tick count is out of range.
void validate(const LayoutConfig& config);

struct ItemLayout {
  std::string id;
  std::string label;
  Side side = Side::Rise;
  Trend trend = Trend::Flat;
  bool improved = false;
  double initial = 0.0;
  double final = 0.0;
  double delta = 0.0;
  std::optional<double> rawInitial;
  std::optional<double> rawFinal;
  ItemGeometry geometry;
  Point labelAnchor;
  bool showLabel = false;
};

struct Tick {
  double value = 0.0;
  std::string label;
  Side side = Side::Rise;
  Point inner;  // on the side's inner axis
  Point outer;  // on the outer axis
};

struct Layout {
  AxisScale scale{0.0, 1.0};
  LayoutConfig config;
  std::vector<ItemLayout> items;
  std::vector<Tick> ticks;
  Point M;  // top end of the separator
  Point N;  // bottom end, where vmin sits

  std::size_t residue_count(Side side) const;
  const ItemLayout* find(std::string_view id) const;
};

Side side_of(const StateChangeItem& item);

// Scale spanning the global min and max over both state columns.
AxisScale scale_for(const Dataset& dataset, double span);

Layout build_layout(const Dataset& dataset, const LayoutConfig& config);

// Sets the inner radius of each side given a k so that the k largest
// changes on that side are residue. A side left as nullopt keeps its
// radius. Clamps and ties are recorded in config.warnings.
LayoutConfig resolve_topk(const Dataset& dataset, const LayoutConfig& config,
                          std::optional<std::size_t> kRise,
                          std::optional<std::size_t> kDrop);

// count+1 evenly spaced values from vmin to vmax inclusive.
std::vector<double> ticks(const AxisScale& scale, int count);

}  // namespace intercept
