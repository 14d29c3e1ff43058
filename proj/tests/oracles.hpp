#pragma once

// Reference computations that do not go through the library paths under test.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

// Composite 5-point Gauss-Legendre; exact for degree <= 9 on each panel.
inline double gauss(const std::function<double(double)>& f, double a, double b, int panels = 64) {
  static const double node[5] = {0.0, 0.5384693101056831, -0.5384693101056831, 0.9061798459386640,
                                 -0.9061798459386640};
  static const double weight[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                   0.2369268850561891, 0.2369268850561891};
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < 5; ++i) sum += weight[i] * f(mid + 0.5 * h * node[i]);
  }
  return 0.5 * h * sum;
}

inline double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline std::vector<double> antiderivative(const std::vector<double>& c) {
  std::vector<double> out(c.size() + 1, 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) out[k + 1] = c[k] / static_cast<double>(k + 1);
  return out;
}

// First x along 0 -> direction * window where ok(x) fails, located by a fine
// scan and bisection. Returns direction * window when ok holds throughout.
inline double first_failure(const std::function<bool(double)>& ok, double direction, double window,
                            int scan = 200000) {
  double good = 0.0;
  for (int i = 1; i <= scan; ++i) {
    const double x = direction * window * i / scan;
    if (!ok(x)) {
      double bad = x;
      for (int k = 0; k < 200 && std::abs(bad - good) > 1e-14; ++k) {
        const double mid = 0.5 * (good + bad);
        (ok(mid) ? good : bad) = mid;
      }
      return 0.5 * (good + bad);
    }
    good = x;
  }
  return direction * window;
}

// |a - b| relative to the larger magnitude; 0 when both vanish.
inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace oracle
