#pragma once

#include <memory>
#include <span>
#include <vector>

#include "camforge/gsm_model.hpp"
#include "camforge/spline.hpp"

namespace camforge {

/// Roller trajectory Y(X) with its first two derivatives.
class Profile {
 public:
  virtual ~Profile() = default;

  virtual double value(double x) const = 0;
  virtual double slope(double x) const = 0;
  virtual double curvature(double x) const = 0;

  /// Y * Y'. Profiles that know a finite closed form near Y = 0 override this.
  virtual double value_times_slope(double x) const { return value(x) * slope(x); }
  /// d(Y * Y')/dX = Y'^2 + Y * Y''.
  virtual double value_times_slope_derivative(double x) const {
    const double s = slope(x);
    return s * s + value(x) * curvature(x);
  }
};

/// Y(X) as an explicit polynomial (ascending coefficients).
class PolynomialProfile final : public Profile {
 public:
  explicit PolynomialProfile(std::vector<double> coefficients);

  double value(double x) const override;
  double slope(double x) const override;
  double curvature(double x) const override;

 private:
  std::vector<double> c_;
};

class SplineProfile final : public Profile {
 public:
  explicit SplineProfile(CubicSpline spline) : spline_(std::move(spline)) {}

  double value(double x) const override { return spline_.value(x); }
  double slope(double x) const override { return spline_.slope(x); }
  double curvature(double x) const override { return spline_.curvature(x); }

 private:
  CubicSpline spline_;
};

enum class BoundaryKind {
  TravelLimit,      // |Y| -> L
  RootTouch,        // Y -> 0 on a preloaded branch
  SearchTruncated,  // search window or table edge reached
  BasePoint,        // closed end at X = 0 of a one-sided zero-preload branch
};

/// Interval of admissible X. Ends are open unless flagged closed.
struct Domain {
  double lo{};
  double hi{};
  BoundaryKind lo_kind{BoundaryKind::SearchTruncated};
  BoundaryKind hi_kind{BoundaryKind::SearchTruncated};
  bool lo_closed{false};
  bool hi_closed{false};

  bool contains(double x) const noexcept {
    return (x > lo || (lo_closed && x == lo)) && (x < hi || (hi_closed && x == hi));
  }
  double width() const noexcept { return hi - lo; }
};

/// A roller track realised with a linear spring. Immutable.
class Track {
 public:
  /// Validates that 0 is in the domain, |Y(0)| < L, and |Y| < L at a
  /// uniform sample of the domain (TravelExceeded otherwise). The preload is
  /// taken from Y(0).
  Track(std::shared_ptr<const Profile> profile, LinearGsm gsm, Domain domain);

  const Profile& profile() const noexcept { return *profile_; }
  const LinearGsm& gsm() const noexcept { return gsm_; }
  double preload() const noexcept { return preload_; }
  const Domain& domain() const noexcept { return domain_; }

  /// Throws OutOfDomain when x is outside the domain.
  void require_in_domain(double x) const;

 private:
  std::shared_ptr<const Profile> profile_;
  LinearGsm gsm_;
  Domain domain_;
  double preload_;
};

/// -K Y(x) [N], the spring force along Y.
double spring_force(const Track& track, double x);

/// -K Y(x) Y'(x) [N], the force the track exerts on the mass along X.
double restoring_force(const Track& track, double x);

/// (K/2)(Y(x)^2 - Y(0)^2) [J]; zero at X = 0.
double potential_energy(const Track& track, double x);

/// -dF/dX = K (Y'^2 + Y Y'') [N/m]; positive means a stabilising slope.
double effective_stiffness(const Track& track, double x);

struct TrackSample {
  double x;
  double y;
};

/// Not-a-knot cubic spline track through samples. The samples must be
/// strictly increasing in X (NonMonotoneX), bracket X = 0, and keep
/// |Y| < L (TravelExceeded). The domain is the open sample range.
Track fit_track(std::span<const TrackSample> samples, const LinearGsm& gsm);

}  // namespace camforge
