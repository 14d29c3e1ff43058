#include "camforge/quadrature.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "camforge/error.hpp"

namespace camforge {

namespace {

struct Panel {
  double a, fa, m, fm, b, fb, whole;
};

class Simpson {
 public:
  explicit Simpson(const std::function<double(double)>& f) : f_(f) {}

  double eval(double x) const {
    const double v = f_(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "integrand is not finite at X = " << x;
      throw Error(ErrorCode::QuadratureFailure, msg.str());
    }
    return v;
  }

  Panel panel(double a, double fa, double b, double fb) const {
    const double m = 0.5 * (a + b);
    const double fm = eval(m);
    return {a, fa, m, fm, b, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb)};
  }

  double refine(const Panel& p, double tolerance, int depth) const {
    const Panel left = panel(p.a, p.fa, p.m, p.fm);
    const Panel right = panel(p.m, p.fm, p.b, p.fb);
    const double sum = left.whole + right.whole;
    const double delta = sum - p.whole;
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                         (std::abs(left.whole) + std::abs(right.whole));
    if (std::abs(delta) <= 15.0 * tolerance || std::abs(delta) <= floor) {
      return sum + delta / 15.0;
    }
    if (depth >= kMaxSimpsonDepth) {
      std::ostringstream msg;
      msg << "adaptive Simpson exceeded depth " << kMaxSimpsonDepth << " on [" << p.a << ", "
          << p.b << "]";
      throw Error(ErrorCode::QuadratureFailure, msg.str());
    }
    return refine(left, 0.5 * tolerance, depth + 1) + refine(right, 0.5 * tolerance, depth + 1);
  }

 private:
  const std::function<double(double)>& f_;
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tolerance) {
  if (a == b) return 0.0;
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "quadrature tolerance must be positive");
  const Simpson s(f);
  // Start from four panels so a single symmetric panel cannot fake convergence.
  double total = 0.0;
  constexpr int kPanels = 4;
  double x0 = a;
  double f0 = s.eval(a);
  for (int i = 1; i <= kPanels; ++i) {
    const double x1 = i == kPanels ? b : a + (b - a) * i / kPanels;
    const double f1 = s.eval(x1);
    total += s.refine(s.panel(x0, f0, x1, f1), tolerance / kPanels, 1);
    x0 = x1;
    f0 = f1;
  }
  return total;
}

}  // namespace camforge
