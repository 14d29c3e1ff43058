#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "camforge/force_spec.hpp"
#include "camforge/forward_model.hpp"

namespace camforge {

struct DesignTolerances {
  double boundary = 1e-10;                          // [m]
  double quadrature = kDefaultQuadratureTolerance;  // [N m]
};

/// Find every roller track Y(X) whose linear spring realises the target
/// force F(X), with Y(0) = preload and |Y| < travel_limit.
struct DesignProblem {
  std::shared_ptr<const ForceSpec> force;
  double stiffness{};     // K_GSM [N/m], nonzero
  double preload{};       // Delta [m]
  double travel_limit{};  // L [m]
  /// Half-width of the domain search. Defaults to 10 L.
  std::optional<double> search_window;
  DesignTolerances tolerances;

  double window() const { return search_window.value_or(10.0 * travel_limit); }
  /// Throws ZeroStiffness or InvalidArgument.
  void validate() const;
};

enum class StiffnessClass { Positive, Negative };
enum class PreloadClass { Nonzero, Zero };

/// Branch names. Declaration order is the report order.
enum class BranchLabel { Y11, Y21, Y12, Y22, Y13, Y23, Y14, Y24 };

std::string_view label_name(BranchLabel label);
std::optional<BranchLabel> parse_label(std::string_view name);
BranchLabel make_label(int sign, StiffnessClass stiffness, PreloadClass preload);

/// One signed square-root solution Y = sign * sqrt(Delta^2 - (2/K) I(X))
/// on its maximal admissible interval around X = 0.
class TrackBranch {
 public:
  TrackBranch(int sign, double stiffness, double preload_magnitude, double travel_limit,
              Domain domain, std::shared_ptr<const IntegralCache> integral,
              double boundary_tolerance);

  int sign() const noexcept { return sign_; }
  double stiffness() const noexcept { return stiffness_; }
  /// Signed preload sign * |Delta|, zero for zero-preload branches.
  double preload() const noexcept { return preload_magnitude_ == 0.0 ? 0.0 : sign_ * preload_magnitude_; }
  double preload_magnitude() const noexcept { return preload_magnitude_; }
  double travel_limit() const noexcept { return travel_limit_; }
  StiffnessClass stiffness_class() const noexcept {
    return stiffness_ > 0.0 ? StiffnessClass::Positive : StiffnessClass::Negative;
  }
  PreloadClass preload_class() const noexcept {
    return preload_magnitude_ == 0.0 ? PreloadClass::Zero : PreloadClass::Nonzero;
  }
  BranchLabel label() const noexcept { return make_label(sign_, stiffness_class(), preload_class()); }
  const Domain& domain() const noexcept { return domain_; }
  double boundary_tolerance() const noexcept { return boundary_tolerance_; }
  const ForceSpec& force() const noexcept { return integral_->spec(); }
  const IntegralCache& integral() const noexcept { return *integral_; }

  /// Delta^2 - (2/K) I(x); no domain check.
  double radicand(double x) const;

  /// The sign-flipped partner sharing this branch's domain.
  TrackBranch mirrored() const;

 private:
  int sign_;
  double stiffness_;
  double preload_magnitude_;
  double travel_limit_;
  Domain domain_;
  std::shared_ptr<const IntegralCache> integral_;
  double boundary_tolerance_;
};

struct BranchSet {
  DesignProblem problem;
  std::vector<TrackBranch> branches;
  /// Why candidate branches were excluded or restricted.
  std::vector<std::string> existence_notes;

  const TrackBranch* find(BranchLabel label) const;
};

struct DesignOptions {
  /// Enumerate -K as well as the given K.
  bool both_stiffness_signs = true;
  /// Enumerate the Delta = 0 class in addition to |Delta|.
  bool include_zero_preload = true;
  /// Worker threads for candidate classes; 0 picks the hardware count.
  unsigned threads = 1;
};

/// Domain search marches outward from 0 in steps of window/1024 and
/// bisects the first violated inequality to the boundary tolerance.
BranchSet design_branches(const DesignProblem& problem, const DesignOptions& options = {});

/// Y(x) [m]. Throws OutOfDomain.
double eval_branch(const TrackBranch& branch, double x);

/// Y'(x) = -F(x) / (K Y(x)). Throws OutOfDomain, or RootSingularity when
/// |Y(x)| is below the boundary tolerance.
double branch_derivative(const TrackBranch& branch, double x);

struct ResidualReport {
  double sup_abs{};  // [N]
  double rms_abs{};  // [N]
  double sup_rel{};  // relative to 1 + max |F|
  double rms_rel{};
  double max_force{};
  std::size_t samples{};
};

/// |-K Y Y' - F| at n Chebyshev-Lobatto points of the domain shrunk by the
/// boundary tolerance. Points where |Y| is below the tolerance contribute 0.
/// Throws EmptyDomain when nothing is left after shrinking.
ResidualReport reconstruction_residual(const TrackBranch& branch, std::size_t n_samples);

/// Same residual for an arbitrary track against a target force.
ResidualReport track_residual(const Track& track, const ForceSpec& force, std::size_t n_samples,
                              double shrink);

Track to_track(const TrackBranch& branch);

}  // namespace camforge
