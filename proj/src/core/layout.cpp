#include "layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "error.hpp"

namespace intercept {

std::string_view to_string(LabelPolicy policy) {
  switch (policy) {
    case LabelPolicy::None: return "none";
    case LabelPolicy::ResidueOnly: return "residue";
    case LabelPolicy::All: return "all";
  }
  return "residue";
}

LabelPolicy label_policy_from_string(std::string_view name) {
  if (name == "none") return LabelPolicy::None;
  if (name == "residue" || name == "residue-only") return LabelPolicy::ResidueOnly;
  if (name == "all") return LabelPolicy::All;
  fail(ErrorKind::Argument, "unknown label policy '" + std::string(name) + "'");
}

void validate(const LayoutConfig& config) {
  if (!(config.R > 0.0) || !std::isfinite(config.R)) {
    fail(ErrorKind::Argument, "R must be positive");
  }
  if (!(config.rRise >= 0.0 && config.rRise <= config.R)) {
    fail(ErrorKind::Argument, "rRise out of range [0,R]");
  }
  if (!(config.rDrop >= 0.0 && config.rDrop <= config.R)) {
    fail(ErrorKind::Argument, "rDrop out of range [0,R]");
  }
  if (!(config.span > 0.0 && config.span <= kPi)) {
    fail(ErrorKind::Argument, "span out of range (0,pi]");
  }
  if (config.tickCount < 1) fail(ErrorKind::Argument, "tick count must be at least 1");
  const double room = std::min(config.canvasWidth, config.canvasHeight) / 2.0;
  if (!(room >= config.R + kLabelMargin)) {
    fail(ErrorKind::Argument, "canvas too small for R plus label margin");
  }
}

std::size_t Layout::residue_count(Side side) const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [&](const ItemLayout& item) {
    return item.side == side && item.geometry.residue;
  }));
}

const ItemLayout* Layout::find(std::string_view id) const {
  for (const auto& item : items) {
    if (item.id == id) return &item;
  }
  return nullptr;
}

Side side_of(const StateChangeItem& item) {
  return item.trend() == Trend::Drop ? Side::Drop : Side::Rise;
}

AxisScale scale_for(const Dataset& dataset, double span) {
  validate(dataset);
  double lo = dataset.items.front().initial;
  double hi = lo;
  for (const auto& item : dataset.items) {
    lo = std::min({lo, item.initial, item.final});
    hi = std::max({hi, item.initial, item.final});
  }
  if (!(hi > lo)) {
    fail(ErrorKind::Layout, "degenerate value range: every state equals " + std::to_string(lo));
  }
  return AxisScale(lo, hi, span);
}

std::vector<double> ticks(const AxisScale& scale, int count) {
  if (count < 1) fail(ErrorKind::Argument, "tick count must be at least 1");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count) + 1);
  const double width = scale.vmax() - scale.vmin();
  for (int i = 0; i <= count; ++i) {
    values.push_back(i == count ? scale.vmax() : scale.vmin() + width * i / count);
  }
  return values;
}

namespace {

std::string tick_label(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

bool canonical_less(const ItemLayout& a, const ItemLayout& b) {
  if (a.side != b.side) return a.side == Side::Rise;
  const double da = std::abs(a.delta);
  const double db = std::abs(b.delta);
  if (da != db) return da > db;
  return a.id < b.id;
}

}  // namespace

Layout build_layout(const Dataset& dataset, const LayoutConfig& config) {
  validate(config);
  const AxisScale scale = scale_for(dataset, config.span);

  Layout layout{scale, config, {}, {}, {0.0, config.R}, {0.0, -config.R}};
  layout.items.reserve(dataset.items.size());
  for (const auto& item : dataset.items) {
    ItemLayout out;
    out.id = item.id;
    out.label = item.label;
    out.side = side_of(item);
    out.trend = item.trend();
    out.improved = dataset.improved(item);
    out.initial = item.initial;
    out.final = item.final;
    out.delta = item.delta();
    out.rawInitial = item.rawInitial;
    out.rawFinal = item.rawFinal;
    out.geometry = item_geometry(item.initial, item.final, out.side,
                                 config.radius(out.side), config.R, scale, item.id);
    out.labelAnchor = polar_point(config.R + kLabelMargin / 4, out.geometry.phiFinal, out.side);
    switch (config.labelPolicy) {
      case LabelPolicy::None: out.showLabel = false; break;
      case LabelPolicy::ResidueOnly: out.showLabel = out.geometry.residue; break;
      case LabelPolicy::All: out.showLabel = true; break;
    }
    layout.items.push_back(std::move(out));
  }
  std::sort(layout.items.begin(), layout.items.end(), canonical_less);

  const auto values = ticks(scale, config.tickCount);
  for (const Side side : {Side::Rise, Side::Drop}) {
    for (const double value : values) {
      const double angle = scale.angle(value);
      layout.ticks.push_back({value, tick_label(value), side,
                              polar_point(config.radius(side), angle, side),
                              polar_point(config.R, angle, side)});
    }
  }
  return layout;
}

namespace {

double resolve_side(const Dataset& dataset, const AxisScale& scale, const LayoutConfig& config,
                    Side side, std::size_t k, std::vector<std::string>& warnings) {
  const std::string name(to_string(side));
  std::vector<const StateChangeItem*> members;
  std::vector<double> thetas;
  for (const auto& item : dataset.items) {
    if (side_of(item) != side) continue;
    members.push_back(&item);
    thetas.push_back(central_angle(item.initial, item.final, scale));
  }
  if (k < 1 || k > members.size()) {
    fail(ErrorKind::Argument, "k for the " + name + " side must lie in [1, " +
                                  std::to_string(members.size()) + "], got " + std::to_string(k));
  }
  const TopkRadius solved = topk_radius(thetas, k, config.R);
  if (!solved.exact) {
    std::vector<std::string> surplus;
    std::vector<std::size_t> order(members.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (thetas[a] != thetas[b]) return thetas[a] > thetas[b];
      return members[a]->id < members[b]->id;
    });
    for (std::size_t i = k; i < order.size(); ++i) {
      if (is_residue(0.0, config.R, thetas[order[i]])) surplus.push_back(members[order[i]]->id);
    }
    std::string message = name + ": k=" + std::to_string(k) +
                          " needs an obtuse central angle; inner radius clamped to 0 with " +
                          std::to_string(surplus.size()) + " surplus residue items";
    for (std::size_t i = 0; i < surplus.size(); ++i) message += (i == 0 ? ": " : ", ") + surplus[i];
    warnings.push_back(std::move(message));
  } else if (solved.residueCount > k) {
    warnings.push_back(name + ": " + std::to_string(solved.residueCount) +
                       " residue items for k=" + std::to_string(k) + " (ties at the k-th change)");
  }
  return solved.radius;
}

}  // namespace

LayoutConfig resolve_topk(const Dataset& dataset, const LayoutConfig& config,
                          std::optional<std::size_t> kRise, std::optional<std::size_t> kDrop) {
  validate(config);
  const AxisScale scale = scale_for(dataset, config.span);
  LayoutConfig resolved = config;
  if (kRise) resolved.rRise = resolve_side(dataset, scale, config, Side::Rise, *kRise, resolved.warnings);
  if (kDrop) resolved.rDrop = resolve_side(dataset, scale, config, Side::Drop, *kDrop, resolved.warnings);
  return resolved;
}

}  // namespace intercept
