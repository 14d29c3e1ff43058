#include "camforge/inverse_design.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <thread>

#include "camforge/error.hpp"

namespace camforge {

namespace {

constexpr std::array<std::string_view, 8> kLabelNames{"Y11", "Y21", "Y12", "Y22",
                                                      "Y13", "Y23", "Y14", "Y24"};
constexpr int kMarchSteps = 1024;
constexpr int kContinuityProbes = 1024;

}  // namespace

std::string_view label_name(BranchLabel label) { return kLabelNames[static_cast<std::size_t>(label)]; }

std::optional<BranchLabel> parse_label(std::string_view name) {
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == name) return static_cast<BranchLabel>(i);
  }
  return std::nullopt;
}

BranchLabel make_label(int sign, StiffnessClass stiffness, PreloadClass preload) {
  const bool plus = sign > 0;
  const bool positive_k = stiffness == StiffnessClass::Positive;
  if (preload == PreloadClass::Nonzero) {
    if (positive_k) return plus ? BranchLabel::Y11 : BranchLabel::Y21;
    return plus ? BranchLabel::Y12 : BranchLabel::Y22;
  }
  if (positive_k) return plus ? BranchLabel::Y13 : BranchLabel::Y23;
  return plus ? BranchLabel::Y14 : BranchLabel::Y24;
}

void DesignProblem::validate() const {
  if (!force) throw Error(ErrorCode::InvalidArgument, "design problem has no force");
  if (stiffness == 0.0) throw Error(ErrorCode::ZeroStiffness, "K_GSM must be nonzero");
  if (!std::isfinite(stiffness)) throw Error(ErrorCode::InvalidArgument, "K_GSM must be finite");
  if (!(travel_limit > 0.0) || !std::isfinite(travel_limit)) {
    throw Error(ErrorCode::InvalidArgument, "travel limit L must be positive");
  }
  if (!(std::abs(preload) < travel_limit)) {
    throw Error(ErrorCode::InvalidArgument, "preload must satisfy |Delta| < L");
  }
  const double w = window();
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw Error(ErrorCode::InvalidArgument, "search window must be positive");
  }
  if (!(tolerances.boundary > 0.0) || !(tolerances.quadrature > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  }
}

TrackBranch::TrackBranch(int sign, double stiffness, double preload_magnitude, double travel_limit,
                         Domain domain, std::shared_ptr<const IntegralCache> integral,
                         double boundary_tolerance)
    : sign_(sign >= 0 ? 1 : -1),
      stiffness_(stiffness),
      preload_magnitude_(std::abs(preload_magnitude)),
      travel_limit_(travel_limit),
      domain_(domain),
      integral_(std::move(integral)),
      boundary_tolerance_(boundary_tolerance) {
  if (stiffness_ == 0.0) throw Error(ErrorCode::ZeroStiffness, "K_GSM must be nonzero");
  if (!integral_) throw Error(ErrorCode::InvalidArgument, "branch needs an integral cache");
}

double TrackBranch::radicand(double x) const {
  const double d2 = preload_magnitude_ * preload_magnitude_;
  if (x == 0.0) return d2;
  return d2 - 2.0 * (*integral_)(x) / stiffness_;
}

TrackBranch TrackBranch::mirrored() const {
  TrackBranch out = *this;
  out.sign_ = -sign_;
  return out;
}

const TrackBranch* BranchSet::find(BranchLabel label) const {
  for (const auto& b : branches) {
    if (b.label() == label) return &b;
  }
  return nullptr;
}

namespace {

enum class Status { Ok, Root, Travel };

struct SideResult {
  bool exists{true};
  double edge{};
  BoundaryKind kind{BoundaryKind::SearchTruncated};
};

struct ClassResult {
  double stiffness{};
  double preload_magnitude{};
  std::shared_ptr<const IntegralCache> integral;
  SideResult left;
  SideResult right;
};

class DomainSearch {
 public:
  DomainSearch(const IntegralCache& integral, double stiffness, double preload_magnitude,
               double travel_limit, double tolerance)
      : integral_(integral),
        stiffness_(stiffness),
        d2_(preload_magnitude * preload_magnitude),
        l2_(travel_limit * travel_limit),
        tolerance_(tolerance),
        zero_preload_(preload_magnitude == 0.0) {}

  double radicand(double x) const { return x == 0.0 ? d2_ : d2_ - 2.0 * integral_(x) / stiffness_; }

  Status status(double x) const {
    const double r = radicand(x);
    if (!(r > 0.0)) return Status::Root;
    if (!(r < l2_)) return Status::Travel;
    return Status::Ok;
  }

  /// Marches from 0 in direction dir (+1/-1) up to `reach`.
  SideResult side(double dir, double step, double reach) const {
    if (!(reach > 0.0)) return {!zero_preload_, 0.0, BoundaryKind::SearchTruncated};
    double good = 0.0;
    for (int k = 1;; ++k) {
      const double dist = std::min(step * k, reach);
      const double x = dir * dist;
      const Status s = status(x);
      if (s == Status::Ok) {
        good = x;
        if (dist >= reach) return {true, x, BoundaryKind::SearchTruncated};
        continue;
      }
      if (k == 1 && zero_preload_ && s == Status::Root) return {false, 0.0, BoundaryKind::BasePoint};
      const double edge = bisect(good, x, s);
      return {true, edge, s == Status::Root ? BoundaryKind::RootTouch : BoundaryKind::TravelLimit};
    }
  }

 private:
  /// Shrinks [good, bad] until it is no wider than the tolerance; returns the good end.
  double bisect(double good, double bad, Status violated) const {
    auto holds = [&](double x) {
      const double r = radicand(x);
      return violated == Status::Root ? r > 0.0 : r < l2_;
    };
    while (std::abs(bad - good) > tolerance_) {
      const double mid = 0.5 * (good + bad);
      if (mid == good || mid == bad) break;
      if (holds(mid)) {
        good = mid;
      } else {
        bad = mid;
      }
    }
    return good;
  }

  const IntegralCache& integral_;
  double stiffness_;
  double d2_;
  double l2_;
  double tolerance_;
  bool zero_preload_;
};

void check_finite_samples(const ForceSpec& force, double lo, double hi) {
  for (int i = 0; i <= kContinuityProbes; ++i) {
    const double x = lo + (hi - lo) * i / kContinuityProbes;
    const double f = force.eval(x);
    if (!std::isfinite(f)) {
      std::ostringstream msg;
      msg << "target force is not finite at X = " << x;
      throw Error(ErrorCode::NonFiniteForce, msg.str());
    }
  }
}

std::string class_name(double stiffness, double preload_magnitude) {
  const auto k = stiffness > 0.0 ? StiffnessClass::Positive : StiffnessClass::Negative;
  const auto p = preload_magnitude == 0.0 ? PreloadClass::Zero : PreloadClass::Nonzero;
  std::string out(label_name(make_label(1, k, p)));
  out += ", ";
  out += label_name(make_label(-1, k, p));
  out += stiffness > 0.0 ? " (K > 0, " : " (K < 0, ";
  out += preload_magnitude == 0.0 ? "zero preload)" : "nonzero preload)";
  return out;
}

}  // namespace

BranchSet design_branches(const DesignProblem& problem, const DesignOptions& options) {
  problem.validate();
  const double window = problem.window();
  const double step = window / kMarchSteps;
  if (!(step > problem.tolerances.boundary)) {
    throw Error(ErrorCode::SearchWindowEmpty,
                "search window is too small: march step does not exceed the boundary tolerance");
  }
  const auto [table_lo, table_hi] = problem.force->range();
  if (!(table_lo <= 0.0 && table_hi >= 0.0) || !(table_hi > table_lo)) {
    throw Error(ErrorCode::SearchWindowEmpty, "force table does not contain X = 0");
  }
  const double reach_left = std::min(window, -table_lo);
  const double reach_right = std::min(window, table_hi);
  if (problem.force->kind() != ForceSpec::Kind::Polynomial) {
    check_finite_samples(*problem.force, -reach_left, reach_right);
  }

  const double magnitude = std::abs(problem.preload);
  std::vector<std::pair<double, double>> classes;  // (stiffness, |Delta|)
  std::vector<double> stiffnesses{problem.stiffness};
  if (options.both_stiffness_signs) stiffnesses = {std::abs(problem.stiffness), -std::abs(problem.stiffness)};
  for (double k : stiffnesses) {
    if (magnitude != 0.0) classes.emplace_back(k, magnitude);
  }
  if (options.include_zero_preload || magnitude == 0.0) {
    for (double k : stiffnesses) classes.emplace_back(k, 0.0);
  }

  auto solve = [&](double k, double d) {
    ClassResult r;
    r.stiffness = k;
    r.preload_magnitude = d;
    auto cache = std::make_shared<IntegralCache>(problem.force, problem.tolerances.quadrature, step);
    const DomainSearch search(*cache, k, d, problem.travel_limit, problem.tolerances.boundary);
    r.left = search.side(-1.0, step, reach_left);
    r.right = search.side(1.0, step, reach_right);
    r.integral = std::move(cache);
    return r;
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  std::vector<ClassResult> results(classes.size());
  if (threads <= 1 || classes.size() <= 1) {
    for (std::size_t i = 0; i < classes.size(); ++i) results[i] = solve(classes[i].first, classes[i].second);
  } else {
    std::vector<std::future<ClassResult>> pending;
    std::size_t next = 0;
    while (next < classes.size()) {
      pending.clear();
      const std::size_t batch_start = next;
      for (unsigned t = 0; t < threads && next < classes.size(); ++t, ++next) {
        pending.push_back(std::async(std::launch::async, solve, classes[next].first, classes[next].second));
      }
      for (std::size_t j = 0; j < pending.size(); ++j) results[batch_start + j] = pending[j].get();
    }
  }

  BranchSet set;
  set.problem = problem;
  for (const auto& r : results) {
    const std::string name = class_name(r.stiffness, r.preload_magnitude);
    if (!r.left.exists && !r.right.exists) {
      set.existence_notes.push_back(name + ": condition -L^2 < (2/K) I(X) < 0 fails on both sides of X = 0; excluded");
      continue;
    }
    Domain domain;
    if (r.left.exists) {
      domain.lo = r.left.edge;
      domain.lo_kind = r.left.kind;
      domain.lo_closed = r.left.edge == 0.0;
    } else {
      domain.lo = 0.0;
      domain.lo_kind = BoundaryKind::BasePoint;
      domain.lo_closed = true;
      set.existence_notes.push_back(name + ": admissible only for X > 0");
    }
    if (r.right.exists) {
      domain.hi = r.right.edge;
      domain.hi_kind = r.right.kind;
      domain.hi_closed = r.right.edge == 0.0;
    } else {
      domain.hi = 0.0;
      domain.hi_kind = BoundaryKind::BasePoint;
      domain.hi_closed = true;
      set.existence_notes.push_back(name + ": admissible only for X < 0");
    }
    for (int sign : {1, -1}) {
      set.branches.emplace_back(sign, r.stiffness, r.preload_magnitude, problem.travel_limit, domain,
                                r.integral, problem.tolerances.boundary);
    }
  }
  std::stable_sort(set.branches.begin(), set.branches.end(),
                   [](const TrackBranch& a, const TrackBranch& b) { return a.label() < b.label(); });
  return set;
}

double eval_branch(const TrackBranch& branch, double x) {
  if (!branch.domain().contains(x)) {
    std::ostringstream msg;
    msg << "X = " << x << " is outside the domain of " << label_name(branch.label());
    throw Error(ErrorCode::OutOfDomain, msg.str());
  }
  const double r = branch.radicand(x);
  return branch.sign() * std::sqrt(std::max(r, 0.0));
}

double branch_derivative(const TrackBranch& branch, double x) {
  const double y = eval_branch(branch, x);
  if (std::abs(y) < branch.boundary_tolerance()) {
    std::ostringstream msg;
    msg << "slope of " << label_name(branch.label()) << " is singular at X = " << x << " (Y = " << y
        << ")";
    throw Error(ErrorCode::RootSingularity, msg.str());
  }
  return -branch.force().eval(x) / (branch.stiffness() * y);
}

namespace {

std::vector<double> lobatto_points(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  const double c = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo);
  for (std::size_t k = 0; k < n; ++k) {
    // Mirror the half-range so that the centre is exactly c for odd n.
    const std::size_t j = std::min(k, n - 1 - k);
    const double offset = r * std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n - 1));
    out[k] = (k == j) ? c - offset : c + offset;
    if (2 * k + 1 == n) out[k] = c;
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

template <class Residual>
ResidualReport summarise(const std::vector<double>& xs, const Residual& residual) {
  ResidualReport rep;
  rep.samples = xs.size();
  double sum2 = 0.0;
  for (double x : xs) {
    const auto [res, force] = residual(x);
    rep.sup_abs = std::max(rep.sup_abs, res);
    rep.max_force = std::max(rep.max_force, std::abs(force));
    sum2 += res * res;
  }
  rep.rms_abs = std::sqrt(sum2 / static_cast<double>(xs.size()));
  rep.sup_rel = rep.sup_abs / (1.0 + rep.max_force);
  rep.rms_rel = rep.rms_abs / (1.0 + rep.max_force);
  return rep;
}

}  // namespace

ResidualReport reconstruction_residual(const TrackBranch& branch, std::size_t n_samples) {
  if (n_samples < 3) throw Error(ErrorCode::InvalidArgument, "residual needs at least 3 samples");
  const double tol = branch.boundary_tolerance();
  const double lo = branch.domain().lo + tol;
  const double hi = branch.domain().hi - tol;
  if (!(hi > lo)) throw Error(ErrorCode::EmptyDomain, "branch domain is empty after shrinking");
  const auto xs = lobatto_points(lo, hi, n_samples);
  return summarise(xs, [&](double x) {
    const double f = branch.force().eval(x);
    const double y = eval_branch(branch, x);
    if (std::abs(y) < tol) return std::pair{0.0, f};
    const double slope = branch_derivative(branch, x);
    return std::pair{std::abs(-branch.stiffness() * y * slope - f), f};
  });
}

ResidualReport track_residual(const Track& track, const ForceSpec& force, std::size_t n_samples,
                              double shrink) {
  if (n_samples < 3) throw Error(ErrorCode::InvalidArgument, "residual needs at least 3 samples");
  const double lo = track.domain().lo + shrink;
  const double hi = track.domain().hi - shrink;
  if (!(hi > lo)) throw Error(ErrorCode::EmptyDomain, "track domain is empty after shrinking");
  const auto xs = lobatto_points(lo, hi, n_samples);
  return summarise(xs, [&](double x) {
    const double f = force.eval(x);
    return std::pair{std::abs(restoring_force(track, x) - f), f};
  });
}

namespace {

class BranchProfile final : public Profile {
 public:
  explicit BranchProfile(TrackBranch branch) : branch_(std::move(branch)) {}

  double value(double x) const override { return eval_branch(branch_, x); }
  double slope(double x) const override { return branch_derivative(branch_, x); }
  double curvature(double x) const override {
    const double y = value(x);
    const double s = slope(x);
    return (-branch_.force().derivative(x) / branch_.stiffness() - s * s) / y;
  }
  // Y Y' = -F/K stays finite where Y' does not.
  double value_times_slope(double x) const override {
    value(x);
    return -branch_.force().eval(x) / branch_.stiffness();
  }
  double value_times_slope_derivative(double x) const override {
    value(x);
    return -branch_.force().derivative(x) / branch_.stiffness();
  }

 private:
  TrackBranch branch_;
};

}  // namespace

Track to_track(const TrackBranch& branch) {
  return Track(std::make_shared<BranchProfile>(branch), LinearGsm(branch.stiffness(), branch.travel_limit()),
               branch.domain());
}

}  // namespace camforge
