#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "error.hpp"

namespace intercept {

namespace {

void check_circle(double r, double R, double theta) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    fail(ErrorKind::Argument, "outer radius must be positive and finite");
  }
  if (!(r >= 0.0 && r <= R)) {
    fail(ErrorKind::Argument, "inner radius must lie in [0, R]");
  }
  if (!(theta >= 0.0 && theta <= kPi)) {
    fail(ErrorKind::Argument, "central angle must lie in [0, pi]");
  }
}

}  // namespace

AxisScale::AxisScale(double vmin, double vmax, double span)
    : vmin_(vmin), vmax_(vmax), span_(span) {
  if (!std::isfinite(vmin) || !std::isfinite(vmax) || !(vmax > vmin)) {
    fail(ErrorKind::Range, "degenerate value range: vmax must exceed vmin");
  }
  if (!(span > 0.0 && span <= kPi)) {
    fail(ErrorKind::Argument, "angular span must lie in (0, pi]");
  }
}

double AxisScale::angle(double value, std::string_view what) const {
  if (!(value >= vmin_ && value <= vmax_)) {
    std::string message = "value " + std::to_string(value) + " outside axis range";
    if (!what.empty()) message += " for item '" + std::string(what) + "'";
    fail(ErrorKind::Range, message);
  }
  return span_ * (value - vmin_) / (vmax_ - vmin_);
}

std::string_view to_string(Side side) {
  return side == Side::Rise ? "rise" : "drop";
}

double value_to_angle(double value, const AxisScale& scale) {
  return scale.angle(value);
}

double central_angle(double initial, double final, const AxisScale& scale) {
  scale.angle(initial);
  scale.angle(final);
  // span*|delta|/width rather than a difference of angles, so that theta is
  // monotone in |delta| to the last bit.
  const double theta = scale.span() * std::abs(final - initial) / (scale.vmax() - scale.vmin());
  return std::min(theta, scale.span());
}

double chord_length(double r, double R, double theta) {
  check_circle(r, R, theta);
  const double squared = r * r + R * R - 2.0 * r * R * std::cos(theta);
  return std::sqrt(std::max(squared, 0.0));
}

bool is_residue(double r, double R, double theta) {
  check_circle(r, R, theta);
  return r >= R * std::cos(theta) - kResidueSlack * R;
}

Interception intercepted_length(double r, double R, double theta) {
  const double c = chord_length(r, R, theta);
  if (!is_residue(r, R, theta) || c <= 0.0) return {};
  const double inside = 2.0 * r * (r - R * std::cos(theta)) / c;
  const double length = std::clamp(inside, 0.0, c);
  return {length, length / c};
}

TopkRadius topk_radius(std::span<const double> thetas, std::size_t k, double R) {
  if (k < 1 || k > thetas.size()) {
    fail(ErrorKind::Argument, "k must lie in [1, " + std::to_string(thetas.size()) + "]");
  }
  for (const double theta : thetas) check_circle(0.0, R, theta);

  std::vector<double> sorted(thetas.begin(), thetas.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   sorted.end(), std::greater<>());
  const double kth = sorted[k - 1];

  TopkRadius result;
  if (kth <= kPi / 2) {
    result.radius = std::clamp(R * std::cos(kth), 0.0, R);
  } else {
    result.radius = 0.0;
    result.exact = false;
  }
  result.residueCount = static_cast<std::size_t>(std::count_if(
      thetas.begin(), thetas.end(),
      [&](double theta) { return is_residue(result.radius, R, theta); }));
  return result;
}

Point polar_point(double radius, double angle, Side side) {
  const double x = radius * std::sin(angle);
  return {side == Side::Rise ? x : -x, -radius * std::cos(angle)};
}

ItemGeometry item_geometry(double initial, double final, Side side, double r,
                           double R, const AxisScale& scale, std::string_view what) {
  ItemGeometry g;
  g.phiInitial = scale.angle(initial, what);
  g.phiFinal = scale.angle(final, what);
  g.theta = central_angle(initial, final, scale);
  g.chord = chord_length(r, R, g.theta);
  g.residue = is_residue(r, R, g.theta);
  const auto cut = intercepted_length(r, R, g.theta);
  g.intercepted = cut.length;
  g.interceptParam = cut.parameter;
  g.A = polar_point(r, g.phiInitial, side);
  g.B = polar_point(R, g.phiFinal, side);
  g.P = {g.A.x + g.interceptParam * (g.B.x - g.A.x),
         g.A.y + g.interceptParam * (g.B.y - g.A.y)};
  return g;
}

}  // namespace intercept
