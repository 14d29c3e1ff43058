#include "camforge/spline.hpp"

#include <algorithm>
#include <cmath>

#include "camforge/error.hpp"

namespace camforge {

void require_increasing(std::span<const double> x) {
  if (x.size() < 2) throw Error(ErrorCode::NonMonotoneX, "need at least two samples");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw Error(ErrorCode::NonMonotoneX, "non-finite sample abscissa");
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw Error(ErrorCode::NonMonotoneX, "sample abscissae must be strictly increasing");
    }
  }
}

CubicSpline::CubicSpline(std::span<const double> x, std::span<const double> y, SplineEnd end)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  require_increasing(x);
  if (y.size() != x.size()) throw Error(ErrorCode::InvalidArgument, "spline x/y size mismatch");
  const std::size_t n = x_.size();
  m_.assign(n, 0.0);
  auto h = [&](std::size_t i) { return x_[i + 1] - x_[i]; };

  if (n == 3 && end == SplineEnd::NotAKnot) {
    const double curv = 2.0 * ((y_[2] - y_[1]) / h(1) - (y_[1] - y_[0]) / h(0)) / (x_[2] - x_[0]);
    m_.assign(3, curv);
  } else if (n > 2) {
    // Tridiagonal system for the interior second derivatives m_[1..n-2].
    std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      sub[i] = h(i - 1);
      diag[i] = 2.0 * (h(i - 1) + h(i));
      sup[i] = h(i);
      rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h(i) - (y_[i] - y_[i - 1]) / h(i - 1));
    }
    if (end == SplineEnd::NotAKnot) {
      const double h0 = h(0), h1 = h(1);
      diag[1] = (h0 + h1) * (h0 + 2.0 * h1) / h1;
      sup[1] = (h1 * h1 - h0 * h0) / h1;
      const double a = h(n - 3), b = h(n - 2);
      sub[n - 2] = (a * a - b * b) / a;
      diag[n - 2] = (a + b) * (2.0 * a + b) / a;
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
      const double w = sub[i] / diag[i - 1];
      diag[i] -= w * sup[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m_[i] = (rhs[i] - (i + 2 < n ? sup[i] * m_[i + 1] : 0.0)) / diag[i];
      if (i == 1) break;
    }
    if (end == SplineEnd::NotAKnot) {
      const double h0 = h(0), h1 = h(1);
      m_[0] = ((h0 + h1) * m_[1] - h0 * m_[2]) / h1;
      const double a = h(n - 3), b = h(n - 2);
      m_[n - 1] = ((a + b) * m_[n - 2] - b * m_[n - 3]) / a;
    }
  }

  cumulative_.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = x_[i + 1] - x_[i];
    cumulative_[i + 1] = cumulative_[i] + 0.5 * h * (y_[i] + y_[i + 1]) -
                         h * h * h * (m_[i] + m_[i + 1]) / 24.0;
  }
}

std::size_t CubicSpline::segment(double x) const {
  if (!(x >= x_.front() && x <= x_.back())) {
    throw Error(ErrorCode::OutOfTable, "query outside the spline range");
  }
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const auto idx = static_cast<std::size_t>(std::distance(x_.begin(), it));
  return std::clamp<std::size_t>(idx, 1, x_.size() - 1) - 1;
}

double CubicSpline::value(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::slope(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h -
         (3.0 * a * a - 1.0) * h * m_[i] / 6.0 + (3.0 * b * b - 1.0) * h * m_[i + 1] / 6.0;
}

double CubicSpline::curvature(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

double CubicSpline::integral_from_start(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double t = x - x_[i];
  // Antiderivative of the segment cubic in terms of a = (x1-x)/h, b = (x-x0)/h.
  const double a = (x_[i + 1] - x) / h;
  const double b = t / h;
  const double lin = 0.5 * h * (y_[i] * (1.0 - a * a) + y_[i + 1] * b * b);
  const double cub = h * h * h / 24.0 *
                     (m_[i] * (-(a * a * a * a) + 2.0 * a * a - 1.0) +
                      m_[i + 1] * (b * b * b * b - 2.0 * b * b));
  return cumulative_[i] + lin + cub;
}

}  // namespace camforge
