#include "camforge/forward_model.hpp"

#include <cmath>
#include <sstream>

#include "camforge/error.hpp"

namespace camforge {

PolynomialProfile::PolynomialProfile(std::vector<double> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) c_.push_back(0.0);
}

double PolynomialProfile::value(double x) const {
  double acc = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

double PolynomialProfile::slope(double x) const {
  double acc = 0.0;
  for (std::size_t k = c_.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * c_[k];
  return acc;
}

double PolynomialProfile::curvature(double x) const {
  double acc = 0.0;
  for (std::size_t k = c_.size(); k-- > 2;) acc = acc * x + static_cast<double>(k * (k - 1)) * c_[k];
  return acc;
}

namespace {

constexpr int kTravelCheckSamples = 256;

}  // namespace

Track::Track(std::shared_ptr<const Profile> profile, LinearGsm gsm, Domain domain)
    : profile_(std::move(profile)), gsm_(gsm), domain_(domain), preload_(0.0) {
  if (!profile_) throw Error(ErrorCode::InvalidArgument, "track needs a profile");
  if (!(domain_.lo <= domain_.hi) || !domain_.contains(0.0)) {
    throw Error(ErrorCode::InvalidArgument, "track domain must contain X = 0");
  }
  preload_ = profile_->value(0.0);
  const double limit = gsm_.travel_limit();
  if (!(std::abs(preload_) < limit)) {
    throw Error(ErrorCode::TravelExceeded, "track preload reaches the travel limit");
  }
  for (int i = 1; i < kTravelCheckSamples; ++i) {
    const double x = domain_.lo + domain_.width() * i / kTravelCheckSamples;
    if (!domain_.contains(x)) continue;
    if (!(std::abs(profile_->value(x)) < limit)) {
      std::ostringstream msg;
      msg << "track reaches |Y| >= " << limit << " at X = " << x;
      throw Error(ErrorCode::TravelExceeded, msg.str());
    }
  }
}

void Track::require_in_domain(double x) const {
  if (!domain_.contains(x)) {
    std::ostringstream msg;
    msg << "X = " << x << " is outside the track domain (" << domain_.lo << ", " << domain_.hi << ")";
    throw Error(ErrorCode::OutOfDomain, msg.str());
  }
}

double spring_force(const Track& track, double x) {
  track.require_in_domain(x);
  return -track.gsm().stiffness() * track.profile().value(x);
}

double restoring_force(const Track& track, double x) {
  track.require_in_domain(x);
  return -track.gsm().stiffness() * track.profile().value_times_slope(x);
}

double potential_energy(const Track& track, double x) {
  track.require_in_domain(x);
  if (x == 0.0) return 0.0;
  const double y = track.profile().value(x);
  const double d = track.preload();
  return 0.5 * track.gsm().stiffness() * (y - d) * (y + d);
}

double effective_stiffness(const Track& track, double x) {
  track.require_in_domain(x);
  return track.gsm().stiffness() * track.profile().value_times_slope_derivative(x);
}

Track fit_track(std::span<const TrackSample> samples, const LinearGsm& gsm) {
  std::vector<double> xs, ys;
  xs.reserve(samples.size());
  ys.reserve(samples.size());
  for (const auto& s : samples) {
    if (!(std::abs(s.y) < gsm.travel_limit())) {
      std::ostringstream msg;
      msg << "sample Y = " << s.y << " at X = " << s.x << " reaches the travel limit "
          << gsm.travel_limit();
      throw Error(ErrorCode::TravelExceeded, msg.str());
    }
    xs.push_back(s.x);
    ys.push_back(s.y);
  }
  require_increasing(xs);
  if (!(xs.front() <= 0.0 && xs.back() >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "track samples must bracket X = 0");
  }
  Domain domain{xs.front(), xs.back(), BoundaryKind::SearchTruncated, BoundaryKind::SearchTruncated};
  // A sample range that ends exactly at 0 keeps 0 as a closed end.
  domain.lo_closed = xs.front() == 0.0;
  domain.hi_closed = xs.back() == 0.0;
  auto profile = std::make_shared<SplineProfile>(CubicSpline(xs, ys, SplineEnd::NotAKnot));
  return Track(std::move(profile), gsm, domain);
}

}  // namespace camforge
