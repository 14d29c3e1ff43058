#include "camforge/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "camforge/error.hpp"

namespace camforge {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "Completed";
    case Termination::Locked: return "Locked";
    case Termination::DomainExit: return "DomainExit";
    case Termination::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

void SimConfig::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw Error(ErrorCode::InvalidArgument, "mass must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::InvalidArgument, "t_end must be positive");
  if (lock_guard && !(*lock_guard > 0.0)) throw Error(ErrorCode::InvalidArgument, "lock guard must be positive");
  if (record_stride < 1) throw Error(ErrorCode::InvalidArgument, "record stride must be at least 1");
}

namespace {

enum class StepOutcome { Ok, OutOfDomain, Locked, NonFinite };

// Model requirements:
//   std::optional<double> force(double x)   nullopt outside the admissible set
//   bool locked(double x)
//   Termination exit_kind(double x)        why an inadmissible x ended the run
//   double potential(double x)
template <class Model>
SimResult integrate(const Model& model, const SimConfig& config, double x0, double v0) {
  config.validate();
  const double m = config.mass;
  const double dt = config.dt;
  const long n_steps = std::max(1L, std::lround(config.t_end / dt));

  SimResult out;
  auto initial_force = model.force(x0);
  if (!initial_force) throw Error(ErrorCode::InvalidInitialState, "initial position is not admissible");
  double x = x0;
  double v = v0;
  double a = *initial_force / m;
  out.samples.push_back({0.0, x, v, 0.5 * m * v * v + model.potential(x)});
  bool last_recorded = true;

  // Acceleration at a trial position, or why the position is unusable.
  auto probe = [&](double at, double& acc) -> StepOutcome {
    if (!std::isfinite(at)) return StepOutcome::NonFinite;
    const auto f = model.force(at);
    if (!f) return StepOutcome::OutOfDomain;
    acc = *f / m;
    return std::isfinite(acc) ? StepOutcome::Ok : StepOutcome::NonFinite;
  };

  for (long step = 1; step <= n_steps; ++step) {
    const double t = static_cast<double>(step) * dt;
    double x1 = x, v1 = v, a1 = 0.0;
    StepOutcome outcome = StepOutcome::Ok;
    if (config.method == Integrator::VelocityVerlet) {
      const double vh = v + 0.5 * dt * a;
      x1 = x + dt * vh;
      outcome = probe(x1, a1);
      v1 = vh + 0.5 * dt * a1;
    } else {
      double a2 = 0.0, a3 = 0.0, a4 = 0.0;
      const double v2 = v + 0.5 * dt * a;
      outcome = probe(x + 0.5 * dt * v, a2);
      const double v3 = v + 0.5 * dt * a2;
      if (outcome == StepOutcome::Ok) outcome = probe(x + 0.5 * dt * v2, a3);
      const double v4 = v + dt * a3;
      if (outcome == StepOutcome::Ok) outcome = probe(x + dt * v3, a4);
      x1 = x + dt / 6.0 * (v + 2.0 * v2 + 2.0 * v3 + v4);
      v1 = v + dt / 6.0 * (a + 2.0 * a2 + 2.0 * a3 + a4);
      if (outcome == StepOutcome::Ok) outcome = probe(x1, a1);
    }

    double energy = 0.0;
    if (outcome == StepOutcome::Ok) {
      if (!std::isfinite(v1)) {
        outcome = StepOutcome::NonFinite;
      } else if (model.locked(x1)) {
        outcome = StepOutcome::Locked;
      } else {
        energy = 0.5 * m * v1 * v1 + model.potential(x1);
        if (!std::isfinite(energy)) outcome = StepOutcome::NonFinite;
      }
    }
    if (outcome != StepOutcome::Ok) {
      switch (outcome) {
        case StepOutcome::OutOfDomain: out.termination = model.exit_kind(x1); break;
        case StepOutcome::Locked: out.termination = Termination::Locked; break;
        default: out.termination = Termination::NonFinite; break;
      }
      out.stop_t = t;
      out.stop_x = x1;
      if (!last_recorded) {
        out.samples.push_back({static_cast<double>(out.steps) * dt, x, v,
                               0.5 * m * v * v + model.potential(x)});
      }
      return out;
    }

    x = x1;
    v = v1;
    a = a1;
    out.steps = step;
    last_recorded = step % config.record_stride == 0 || step == n_steps;
    if (last_recorded) out.samples.push_back({t, x, v, energy});
  }
  out.stop_t = static_cast<double>(out.steps) * dt;
  out.stop_x = x;
  return out;
}

class TrackModel {
 public:
  TrackModel(const Track& track, double guard)
      : track_(track), threshold_(track.gsm().travel_limit() - guard) {}

  std::optional<double> force(double x) const {
    if (!track_.domain().contains(x)) return std::nullopt;
    return restoring_force(track_, x);
  }
  bool locked(double x) const { return !(std::abs(track_.profile().value(x)) < threshold_); }
  // Stepping past a TravelLimit end means the rods have locked on the way out.
  Termination exit_kind(double x) const {
    const auto& d = track_.domain();
    const BoundaryKind side = x >= d.hi ? d.hi_kind : d.lo_kind;
    return side == BoundaryKind::TravelLimit ? Termination::Locked : Termination::DomainExit;
  }
  double potential(double x) const { return potential_energy(track_, x); }

 private:
  const Track& track_;
  double threshold_;
};

class ReferenceModel {
 public:
  explicit ReferenceModel(std::shared_ptr<const ForceSpec> force)
      : force_(force), integral_(std::move(force)) {}

  std::optional<double> force(double x) const { return force_->eval(x); }
  bool locked(double) const { return false; }
  Termination exit_kind(double) const { return Termination::DomainExit; }
  double potential(double x) const { return -integral_(x); }

 private:
  std::shared_ptr<const ForceSpec> force_;
  IntegralCache integral_;
};

}  // namespace

SimResult simulate_track(const Track& track, const SimConfig& config, double x0, double v0) {
  config.validate();
  const double guard = config.lock_guard.value_or(1e-6 * track.gsm().travel_limit());
  if (!std::isfinite(x0) || !std::isfinite(v0) || !track.domain().contains(x0)) {
    std::ostringstream msg;
    msg << "initial position X = " << x0 << " is outside the track domain";
    throw Error(ErrorCode::InvalidInitialState, msg.str());
  }
  if (!(std::abs(track.profile().value(x0)) < track.gsm().travel_limit() - guard)) {
    throw Error(ErrorCode::InvalidInitialState, "initial position is at the rod lock");
  }
  return integrate(TrackModel(track, guard), config, x0, v0);
}

SimResult simulate_reference(const ForceSpec& force, const SimConfig& config, double x0, double v0) {
  // Non-owning alias; the force outlives the simulation.
  std::shared_ptr<const ForceSpec> alias(std::shared_ptr<const ForceSpec>(), &force);
  return integrate(ReferenceModel(alias), config, x0, v0);
}

double energy_drift(const SimResult& result) {
  if (result.samples.size() < 2) throw Error(ErrorCode::InvalidArgument, "energy drift needs at least 2 samples");
  const auto [lo, hi] = std::minmax_element(result.samples.begin(), result.samples.end(),
                                            [](const SimSample& a, const SimSample& b) { return a.energy < b.energy; });
  return (hi->energy - lo->energy) /
         (std::abs(result.samples.front().energy) + std::numeric_limits<double>::min());
}

double compare_trajectories(const SimResult& a, const SimResult& b) {
  if (a.samples.empty() || b.samples.empty()) throw Error(ErrorCode::NoOverlap, "empty trajectory");
  const double start = std::max(a.samples.front().t, b.samples.front().t);
  const double end = std::min(a.samples.back().t, b.samples.back().t);
  if (start > end) throw Error(ErrorCode::NoOverlap, "trajectories share no time span");
  double sup = 0.0;
  std::size_t j = 0;
  for (const auto& s : a.samples) {
    if (s.t < start || s.t > end) continue;
    while (j + 1 < b.samples.size() && b.samples[j + 1].t <= s.t) ++j;
    double xb = b.samples[j].x;
    if (b.samples[j].t != s.t && j + 1 < b.samples.size()) {
      const auto& p = b.samples[j];
      const auto& q = b.samples[j + 1];
      xb = p.x + (q.x - p.x) * (s.t - p.t) / (q.t - p.t);
    }
    sup = std::max(sup, std::abs(s.x - xb));
  }
  return sup;
}

}  // namespace camforge
