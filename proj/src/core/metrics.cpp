#include "metrics.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace intercept {

double percentage_difference(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    fail(ErrorKind::Argument, "percentage difference needs finite nonnegative inputs");
  }
  const double larger = std::max(a, b);
  if (larger == 0.0) fail(ErrorKind::UndefinedMeasure, "percentage difference of two zeros");
  return 100.0 * std::abs(a - b) / larger;
}

BaselineEncodings baseline_encodings(const StateChangeItem& a, const StateChangeItem& b,
                                     const AxisScale& scale) {
  for (const auto* item : {&a, &b}) {
    scale.angle(item->initial, item->id);
    scale.angle(item->final, item->id);
  }
  const double da = std::abs(a.delta());
  const double db = std::abs(b.delta());
  if (da == 0.0 && db == 0.0) {
    fail(ErrorKind::UndefinedMeasure, "both items have zero change");
  }
  return {percentage_difference(da / kSlopeGap, db / kSlopeGap), percentage_difference(da, db)};
}

std::optional<double> intercepted_pct(double thetaA, double thetaB, double r, double R) {
  const double la = intercepted_length(r, R, thetaA).length;
  const double lb = intercepted_length(r, R, thetaB).length;
  if (la == 0.0 && lb == 0.0) return std::nullopt;
  return percentage_difference(la, lb);
}

double magnification_solve(double thetaSmall, double thetaLarge, double R, double targetPct) {
  if (!(R > 0.0) || !std::isfinite(R)) fail(ErrorKind::Argument, "R must be positive");
  if (!(thetaSmall > 0.0 && thetaSmall < thetaLarge && thetaLarge <= kPi)) {
    fail(ErrorKind::Argument, "need 0 < thetaSmall < thetaLarge <= pi");
  }
  if (!(targetPct > 0.0 && targetPct < 100.0)) {
    fail(ErrorKind::Argument, "target percentage must lie in (0, 100)");
  }
  auto meets = [&](double r) {
    const auto pct = intercepted_pct(thetaSmall, thetaLarge, r, R);
    return pct && *pct >= targetPct;
  };
  if (meets(R)) return R;

  // Below this radius the smaller change is no longer residue.
  const double lower = std::max(0.0, R * std::cos(thetaSmall));

  // Refines a bracket where `good` meets the target and `bad` does not.
  auto bisect = [&](double good, double bad) {
    for (int i = 0; i < 200 && bad - good > 0.0; ++i) {
      const double mid = good + (bad - good) / 2.0;
      if (mid <= good || mid >= bad) break;
      (meets(mid) ? good : bad) = mid;
    }
    return good;
  };

  std::optional<double> best;
  if (meets(lower)) best = bisect(lower, R);

  // The ratio is observed, not proven, to grow monotonically as r shrinks;
  // the scan catches a satisfying radius above the bisection result.
  const double step = (R - lower) / kMagnificationGrid;
  for (int i = kMagnificationGrid - 1; i >= 1; --i) {
    const double r = lower + step * i;
    if (best && r <= *best) break;
    if (meets(r)) {
      best = bisect(r, std::min(R, r + step));
      break;
    }
  }
  if (!best || !meets(*best)) {
    fail(ErrorKind::NotFound, "target percentage difference not achievable within [0, R]");
  }
  return *best;
}

namespace {

struct Pair {
  const StateChangeItem* a;
  const StateChangeItem* b;
};

Pair find_pair(const Dataset& dataset, std::string_view idA, std::string_view idB) {
  if (idA == idB) fail(ErrorKind::Argument, "comparison needs two distinct items");
  const auto* a = dataset.find(idA);
  if (!a) fail(ErrorKind::NotFound, "unknown item id '" + std::string(idA) + "'");
  const auto* b = dataset.find(idB);
  if (!b) fail(ErrorKind::NotFound, "unknown item id '" + std::string(idB) + "'");
  return {a, b};
}

}  // namespace

ComparisonReport compare(const Dataset& dataset, const LayoutConfig& config,
                         std::string_view idA, std::string_view idB) {
  validate(config);
  const auto [a, b] = find_pair(dataset, idA, idB);
  const AxisScale scale = scale_for(dataset, config.span);

  ComparisonReport report;
  report.itemA = a->id;
  report.itemB = b->id;
  report.rawPct = percentage_difference(std::abs(a->delta()), std::abs(b->delta()));
  const auto baselines = baseline_encodings(*a, *b, scale);
  report.slopePct = baselines.slopePct;
  report.barDiffPct = baselines.barDiffPct;

  const double ra = config.radius(side_of(*a));
  const double rb = config.radius(side_of(*b));
  const double la = intercepted_length(ra, config.R, central_angle(a->initial, a->final, scale)).length;
  const double lb = intercepted_length(rb, config.R, central_angle(b->initial, b->final, scale)).length;
  if (la > 0.0 || lb > 0.0) report.interceptedPct = percentage_difference(la, lb);
  report.radius = ra;
  return report;
}

ComparisonReport compare_at_target(const Dataset& dataset, const LayoutConfig& config,
                                   std::string_view idA, std::string_view idB,
                                   double targetPct) {
  validate(config);
  const auto [a, b] = find_pair(dataset, idA, idB);
  const AxisScale scale = scale_for(dataset, config.span);
  const double ta = central_angle(a->initial, a->final, scale);
  const double tb = central_angle(b->initial, b->final, scale);
  if (ta == tb) fail(ErrorKind::Argument, "items have equal changes; nothing to magnify");
  const double r = magnification_solve(std::min(ta, tb), std::max(ta, tb), config.R, targetPct);

  LayoutConfig solved = config;
  for (const auto* item : {a, b}) {
    (side_of(*item) == Side::Rise ? solved.rRise : solved.rDrop) = r;
  }
  return compare(dataset, solved, idA, idB);
}

}  // namespace intercept
