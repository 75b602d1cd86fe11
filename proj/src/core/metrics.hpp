#pragma once

#include <optional>
#include <string>

#include "geometry.hpp"
#include "layout.hpp"
#include "model.hpp"

namespace intercept {

// Horizontal gap of the slope encoding. A power of two, so slopes are exact
// scalings of the deltas.
inline constexpr double kSlopeGap = 512.0;

// Samples in the fallback scan of magnification_solve.
inline constexpr int kMagnificationGrid = 4096;

// 100 * |a - b| / max(a, b).
double percentage_difference(double a, double b);

struct BaselineEncodings {
  double slopePct = 0.0;
  double barDiffPct = 0.0;
};

BaselineEncodings baseline_encodings(const StateChangeItem& a, const StateChangeItem& b,
                                     const AxisScale& scale);

// Percentage difference of the intercepted lengths of two angles at radius
// r; nullopt when neither segment reaches the inner circle.
std::optional<double> intercepted_pct(double thetaA, double thetaB, double r, double R);

// Largest inner radius at which the intercepted lengths of the two angles
// differ by at least targetPct percent.
double magnification_solve(double thetaSmall, double thetaLarge, double R, double targetPct);

struct ComparisonReport {
  std::string itemA;
  std::string itemB;
  double rawPct = 0.0;
  double slopePct = 0.0;
  double barDiffPct = 0.0;
  std::optional<double> interceptedPct;
  double radius = 0.0;  // inner radius on itemA's side
};

ComparisonReport compare(const Dataset& dataset, const LayoutConfig& config,
                         std::string_view idA, std::string_view idB);

// Runs magnification_solve for the pair and evaluates the report with both
// items' sides set to the solved radius.
ComparisonReport compare_at_target(const Dataset& dataset, const LayoutConfig& config,
                                   std::string_view idA, std::string_view idB,
                                   double targetPct);

}  // namespace intercept
