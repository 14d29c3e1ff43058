#pragma once

#include <optional>

namespace camforge {

/// Physical parameters of the general spring model: a vertical spring
/// (k_vertical) in parallel with a pair of oblique springs (k_oblique)
/// hinged on rigid rods of length rod_length. half_gap is half the distance
/// between the inner ends of the oblique springs at equilibrium.
///
/// Stiffnesses may take any sign. Lengths are in metres.
struct GsmParams {
  double k_vertical{};
  double k_oblique{};
  double half_gap{};
  double rod_length{};

  /// Throws InvalidArgument unless rod_length > 0 and 0 <= half_gap < rod_length.
  void validate() const;
};

/// Linearised spring used by the roller-track model. Construction rejects
/// zero stiffness because the inverse problem divides by it.
class LinearGsm {
 public:
  LinearGsm(double stiffness, double travel_limit);

  double stiffness() const noexcept { return stiffness_; }
  double travel_limit() const noexcept { return travel_limit_; }

 private:
  double stiffness_;
  double travel_limit_;
};

/// Force needed to hold the roller at displacement y [N].
/// Throws LockedRange when |y| >= rod_length.
double gsm_force(const GsmParams& params, double y);

/// Tangent stiffness d(gsm_force)/dy [N/m]. Throws LockedRange when |y| >= rod_length.
double gsm_stiffness(const GsmParams& params, double y);

struct LinearStiffness {
  double stiffness{};
  bool zero_stiffness{};
  /// Present when the stiffness is nonzero.
  std::optional<LinearGsm> gsm;
};

/// K1 - 2 K2 for the B = 0 spring. Throws NotLinear when half_gap != 0.
LinearStiffness linear_stiffness(const GsmParams& params);

/// Quasi-zero-stiffness tuning: B = 0 and |K1 - 2 K2| < 1e-9 |K1|.
bool is_quasi_zero_stiffness(const GsmParams& params);

}  // namespace camforge
