#pragma once

#include <functional>

namespace camforge {

inline constexpr int kMaxSimpsonDepth = 60;

/// Adaptive Simpson quadrature of f over [a, b] to the absolute tolerance
/// `tolerance`, with Richardson correction on accepted panels. A panel is
/// also accepted once its error estimate falls to the round-off floor of
/// the panel sum. Throws QuadratureFailure when a panel would recurse past
/// kMaxSimpsonDepth or when f returns a non-finite value.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tolerance);

}  // namespace camforge
