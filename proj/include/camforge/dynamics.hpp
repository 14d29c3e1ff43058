#pragma once

#include <optional>
#include <string>
#include <vector>

#include "camforge/force_spec.hpp"
#include "camforge/forward_model.hpp"

namespace camforge {

enum class Integrator { VelocityVerlet, RK4 };

struct SimConfig {
  double mass{1.0};    // [kg]
  double dt{1e-4};     // [s]
  double t_end{1.0};   // [s]
  Integrator method{Integrator::VelocityVerlet};
  /// Distance from the travel limit at which the roller counts as locked.
  /// Defaults to 1e-6 L.
  std::optional<double> lock_guard;
  int record_stride{1};

  void validate() const;
};

struct SimSample {
  double t;
  double x;
  double v;
  double energy;
};

enum class Termination { Completed, Locked, DomainExit, NonFinite };

std::string_view to_string(Termination t);

struct SimResult {
  std::vector<SimSample> samples;
  Termination termination{Termination::Completed};
  /// Time and position of the step that triggered termination.
  double stop_t{};
  double stop_x{};
  long steps{};
};

/// Integrates M X'' = restoring_force(track, X). The last recorded sample is
/// always the last admissible state. Leaving the domain through a
/// TravelLimit end counts as Locked, through any other end as DomainExit. Throws InvalidInitialState when x0 is
/// not in the domain or |Y(x0)| >= L - lock_guard.
SimResult simulate_track(const Track& track, const SimConfig& config, double x0, double v0);

/// Integrates M X'' = F(X); energy uses -I(X) from an IntegralCache.
SimResult simulate_reference(const ForceSpec& force, const SimConfig& config, double x0, double v0);

/// (max E - min E) / (|E(0)| + DBL_MIN). Throws InvalidArgument with fewer than 2 samples.
double energy_drift(const SimResult& result);

/// sup |X_a - X_b| over the common time span, interpolating b linearly at
/// the timestamps of a. Throws NoOverlap when the spans are disjoint.
double compare_trajectories(const SimResult& a, const SimResult& b);

}  // namespace camforge
