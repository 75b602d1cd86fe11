#include "protocol.hpp"

#include <json.hpp>

#include "format.hpp"

namespace intercept {

namespace {

using nlohmann::ordered_json;

double real(double value) { return round_significant(value, 9); }

ordered_json point(const Point& p) { return ordered_json::array({real(p.x), real(p.y)}); }

ordered_json config_json(const LayoutConfig& config) {
  ordered_json out;
  out["R"] = real(config.R);
  out["rRise"] = real(config.rRise);
  out["rDrop"] = real(config.rDrop);
  out["span"] = real(config.span);
  out["canvasWidth"] = real(config.canvasWidth);
  out["canvasHeight"] = real(config.canvasHeight);
  out["tickCount"] = config.tickCount;
  out["riseColor"] = config.riseColor;
  out["dropColor"] = config.dropColor;
  out["residueHighlightColor"] = config.residueHighlightColor;
  out["labelPolicy"] = std::string(to_string(config.labelPolicy));
  out["warnings"] = config.warnings;
  return out;
}

}  // namespace

std::string layout_to_json(const Layout& layout, std::optional<std::uint64_t> version) {
  ordered_json doc;
  if (version) doc["version"] = *version;
  doc["scale"] = {{"vmin", real(layout.scale.vmin())},
                  {"vmax", real(layout.scale.vmax())},
                  {"span", real(layout.scale.span())}};
  doc["config"] = config_json(layout.config);
  doc["separator"] = {{"M", point(layout.M)}, {"N", point(layout.N)}};

  ordered_json ticks = ordered_json::array();
  for (const auto& tick : layout.ticks) {
    ordered_json t;
    t["value"] = real(tick.value);
    t["label"] = tick.label;
    t["side"] = std::string(to_string(tick.side));
    t["inner"] = point(tick.inner);
    t["outer"] = point(tick.outer);
    ticks.push_back(std::move(t));
  }
  doc["ticks"] = std::move(ticks);

  ordered_json items = ordered_json::array();
  for (const auto& item : layout.items) {
    const auto& g = item.geometry;
    ordered_json it;
    it["id"] = item.id;
    it["label"] = item.label;
    it["side"] = std::string(to_string(item.side));
    it["trend"] = std::string(to_string(item.trend));
    it["improved"] = item.improved;
    it["initial"] = real(item.initial);
    it["final"] = real(item.final);
    it["delta"] = real(item.delta);
    if (item.rawInitial) it["rawInitial"] = real(*item.rawInitial);
    if (item.rawFinal) it["rawFinal"] = real(*item.rawFinal);
    it["theta"] = real(g.theta);
    it["phiInitial"] = real(g.phiInitial);
    it["phiFinal"] = real(g.phiFinal);
    it["A"] = point(g.A);
    it["B"] = point(g.B);
    it["P"] = point(g.P);
    it["chord"] = real(g.chord);
    it["intercepted"] = real(g.intercepted);
    it["interceptParam"] = real(g.interceptParam);
    it["residue"] = g.residue;
    it["labelAnchor"] = point(item.labelAnchor);
    it["showLabel"] = item.showLabel;
    items.push_back(std::move(it));
  }
  doc["items"] = std::move(items);
  doc["residueCounts"] = {{"rise", layout.residue_count(Side::Rise)},
                          {"drop", layout.residue_count(Side::Drop)}};
  return doc.dump();
}

std::string report_to_json(const ComparisonReport& report) {
  ordered_json doc;
  doc["itemA"] = report.itemA;
  doc["itemB"] = report.itemB;
  doc["rawPct"] = real(report.rawPct);
  doc["slopePct"] = real(report.slopePct);
  doc["barDiffPct"] = real(report.barDiffPct);
  doc["interceptedPct"] = report.interceptedPct ? ordered_json(real(*report.interceptedPct)) : ordered_json();
  doc["radius"] = real(report.radius);
  return doc.dump();
}

std::string topk_to_json(const LayoutConfig& resolved, const Layout& layout) {
  ordered_json doc;
  doc["R"] = real(resolved.R);
  doc["rRise"] = real(resolved.rRise);
  doc["rDrop"] = real(resolved.rDrop);
  doc["rRiseFrac"] = real(resolved.rRise / resolved.R);
  doc["rDropFrac"] = real(resolved.rDrop / resolved.R);
  doc["residueRise"] = layout.residue_count(Side::Rise);
  doc["residueDrop"] = layout.residue_count(Side::Drop);
  doc["warnings"] = resolved.warnings;
  return doc.dump();
}

}  // namespace intercept
