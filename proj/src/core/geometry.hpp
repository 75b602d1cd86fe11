#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <string_view>

namespace intercept {

inline constexpr double kPi = std::numbers::pi;

// Slack applied when testing r >= R*cos(theta), relative to R.
inline constexpr double kResidueSlack = 1e-12;

// Linear map from the shared value range onto [0, span] radians. Both the
// inner and the outer circular axis use the same scale.
class AxisScale {
 public:
  AxisScale(double vmin, double vmax, double span = kPi);

  double vmin() const { return vmin_; }
  double vmax() const { return vmax_; }
  double span() const { return span_; }

  // Throws Range (naming `what` if given) for values outside [vmin, vmax].
  double angle(double value, std::string_view what = {}) const;

 private:
  double vmin_;
  double vmax_;
  double span_;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class Side { Rise, Drop };

std::string_view to_string(Side side);

double value_to_angle(double value, const AxisScale& scale);

// |a(final) - a(initial)|.
double central_angle(double initial, double final, const AxisScale& scale);

// Law of cosines: distance between a point at radius r and a point at
// radius R separated by the central angle theta.
double chord_length(double r, double R, double theta);

// The segment from the inner point to the outer point enters (or touches)
// the inner circle iff r >= R*cos(theta). Tangency counts.
bool is_residue(double r, double R, double theta);

struct Interception {
  double length = 0.0;     // part of the segment inside the inner circle
  double parameter = 0.0;  // length / chord, 0 when not residue
};

// For a residue segment of chord c the exit point sits at distance
// 2r(r - R cos(theta)) / c from the inner endpoint.
Interception intercepted_length(double r, double R, double theta);

struct TopkRadius {
  double radius = 0.0;
  bool exact = true;
  // Items that are residue at `radius`; can exceed k on ties or clamping.
  std::size_t residueCount = 0;
};

// Inner radius that keeps the k largest central angles: R*cos of the k-th
// largest angle, clamped to 0 (and flagged inexact) once that angle is
// obtuse.
TopkRadius topk_radius(std::span<const double> thetas, std::size_t k, double R);

struct ItemGeometry {
  double theta = 0.0;
  double phiInitial = 0.0;
  double phiFinal = 0.0;
  double chord = 0.0;
  double intercepted = 0.0;
  double interceptParam = 0.0;
  bool residue = false;
  Point A;  // inner axis, initial state
  Point B;  // outer axis, final state
  Point P;  // where the segment leaves the inner circle
};

// Point at `radius` and angle measured from the bottom end of the vertical
// separator. Rise sweeps through x > 0, Drop mirrors it through x < 0.
Point polar_point(double radius, double angle, Side side);

ItemGeometry item_geometry(double initial, double final, Side side, double r,
                           double R, const AxisScale& scale,
                           std::string_view what = {});

}  // namespace intercept
