#pragma once

#include <span>
#include <vector>

namespace camforge {

enum class SplineEnd {
  Natural,   // zero second derivative at both ends
  NotAKnot,  // continuous third derivative at the second and penultimate knots
};

/// Cubic spline through strictly increasing knots. At least two knots; two
/// knots give a line, three knots with NotAKnot give the interpolating parabola.
class CubicSpline {
 public:
  CubicSpline(std::span<const double> x, std::span<const double> y,
              SplineEnd end = SplineEnd::Natural);

  double lower() const noexcept { return x_.front(); }
  double upper() const noexcept { return x_.back(); }

  double value(double x) const;
  double slope(double x) const;
  double curvature(double x) const;

  /// Exact integral of the interpolant over [lower(), x].
  double integral_from_start(double x) const;

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;           // second derivatives at the knots
  std::vector<double> cumulative_;  // integral from x_[0] to x_[i]
};

/// Throws NonMonotoneX unless x is strictly increasing with at least two points.
void require_increasing(std::span<const double> x);

}  // namespace camforge
