#include "camforge/force_spec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "camforge/error.hpp"
#include "camforge/quadrature.hpp"

namespace camforge {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void out_of_table(double x, double lo, double hi) {
  std::ostringstream msg;
  msg << "X = " << x << " lies outside the force table [" << lo << ", " << hi << "]";
  throw Error(ErrorCode::OutOfTable, msg.str());
}

double horner(std::span<const double> c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

ForceSpec ForceSpec::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) {
    throw Error(ErrorCode::InvalidArgument, "polynomial force needs at least one coefficient");
  }
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
  }
  PolynomialForce p;
  p.antiderivative.resize(coefficients.size());
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    p.antiderivative[k] = coefficients[k] / static_cast<double>(k + 1);
  }
  p.coefficients = std::move(coefficients);
  return ForceSpec(std::move(p));
}

ForceSpec ForceSpec::expression(Expression expr) { return ForceSpec(ExpressionForce{std::move(expr)}); }

ForceSpec ForceSpec::sampled(std::vector<double> x, std::vector<double> force,
                             Interpolation interpolation) {
  require_increasing(x);
  if (force.size() != x.size()) {
    throw Error(ErrorCode::InvalidArgument, "force table columns differ in length");
  }
  for (double f : force) {
    if (!std::isfinite(f)) throw Error(ErrorCode::NonFiniteForce, "non-finite force in table");
  }
  SampledForce s;
  s.interpolation = interpolation;
  s.cumulative.assign(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    s.cumulative[i + 1] = s.cumulative[i] + 0.5 * (x[i + 1] - x[i]) * (force[i] + force[i + 1]);
  }
  if (interpolation == Interpolation::Cubic) s.spline.emplace(x, force);
  s.x = std::move(x);
  s.force = std::move(force);
  return ForceSpec(std::move(s));
}

std::size_t ForceSpec::SampledForce::segment(double at) const {
  if (!(at >= x.front() && at <= x.back())) out_of_table(at, x.front(), x.back());
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const auto idx = static_cast<std::size_t>(std::distance(x.begin(), it));
  return std::clamp<std::size_t>(idx, 1, x.size() - 1) - 1;
}

double ForceSpec::SampledForce::integral_from_start(double at) const {
  if (spline) {
    if (!(at >= x.front() && at <= x.back())) out_of_table(at, x.front(), x.back());
    return spline->integral_from_start(at);
  }
  const std::size_t i = segment(at);
  const double h = at - x[i];
  const double slope = (force[i + 1] - force[i]) / (x[i + 1] - x[i]);
  return cumulative[i] + h * (force[i] + 0.5 * slope * h);
}

ForceSpec::Kind ForceSpec::kind() const noexcept {
  return static_cast<Kind>(impl_.index());
}

double ForceSpec::eval(double x) const {
  return std::visit(overloaded{
                        [x](const PolynomialForce& p) { return horner(p.coefficients, x); },
                        [x](const ExpressionForce& e) { return e.expr.eval(x); },
                        [x](const SampledForce& s) {
                          if (s.spline) {
                            if (!(x >= s.x.front() && x <= s.x.back())) {
                              out_of_table(x, s.x.front(), s.x.back());
                            }
                            return s.spline->value(x);
                          }
                          const std::size_t i = s.segment(x);
                          const double t = (x - s.x[i]) / (s.x[i + 1] - s.x[i]);
                          return s.force[i] + t * (s.force[i + 1] - s.force[i]);
                        },
                    },
                    impl_);
}

double ForceSpec::derivative(double x) const {
  return std::visit(overloaded{
                        [x](const PolynomialForce& p) {
                          double acc = 0.0;
                          for (std::size_t k = p.coefficients.size(); k-- > 1;) {
                            acc = acc * x + static_cast<double>(k) * p.coefficients[k];
                          }
                          return acc;
                        },
                        [x](const ExpressionForce& e) { return e.expr.eval_with_derivative(x).second; },
                        [x](const SampledForce& s) {
                          if (s.spline) {
                            if (!(x >= s.x.front() && x <= s.x.back())) {
                              out_of_table(x, s.x.front(), s.x.back());
                            }
                            return s.spline->slope(x);
                          }
                          const std::size_t i = s.segment(x);
                          return (s.force[i + 1] - s.force[i]) / (s.x[i + 1] - s.x[i]);
                        },
                    },
                    impl_);
}

std::optional<double> ForceSpec::exact_integral(double x) const {
  return std::visit(
      overloaded{
          [x](const PolynomialForce& p) -> std::optional<double> {
            if (x == 0.0) return 0.0;
            return x * horner(p.antiderivative, x);
          },
          [](const ExpressionForce&) -> std::optional<double> { return std::nullopt; },
          [x](const SampledForce& s) -> std::optional<double> {
            if (x == 0.0) return 0.0;
            return s.integral_from_start(x) - s.integral_from_start(0.0);
          },
      },
      impl_);
}

std::pair<double, double> ForceSpec::range() const {
  if (const auto* s = std::get_if<SampledForce>(&impl_)) return {s->x.front(), s->x.back()};
  const double inf = std::numeric_limits<double>::infinity();
  return {-inf, inf};
}

std::span<const double> ForceSpec::coefficients() const {
  if (const auto* p = std::get_if<PolynomialForce>(&impl_)) return p->coefficients;
  return {};
}

const Expression* ForceSpec::expression_tree() const {
  if (const auto* e = std::get_if<ExpressionForce>(&impl_)) return &e->expr;
  return nullptr;
}

std::span<const double> ForceSpec::table_x() const {
  if (const auto* s = std::get_if<SampledForce>(&impl_)) return s->x;
  return {};
}

std::span<const double> ForceSpec::table_force() const {
  if (const auto* s = std::get_if<SampledForce>(&impl_)) return s->force;
  return {};
}

Interpolation ForceSpec::interpolation() const {
  if (const auto* s = std::get_if<SampledForce>(&impl_)) return s->interpolation;
  return Interpolation::Cubic;
}

bool ForceSpec::is_odd_polynomial() const {
  const auto* p = std::get_if<PolynomialForce>(&impl_);
  if (!p) return false;
  for (std::size_t k = 0; k < p->coefficients.size(); k += 2) {
    if (p->coefficients[k] != 0.0) return false;
  }
  return true;
}

std::string ForceSpec::describe() const {
  return std::visit(overloaded{
                        [](const PolynomialForce& p) { return format_polynomial(p.coefficients); },
                        [](const ExpressionForce& e) { return e.expr.text(); },
                        [](const SampledForce& s) {
                          std::ostringstream out;
                          out << "table(" << s.x.size() << " points, "
                              << (s.spline ? "cubic" : "linear") << ")";
                          return out.str();
                        },
                    },
                    impl_);
}

ForceSpec parse_force(std::string_view text, ParseOptions options) {
  Expression expr = Expression::parse(text);
  if (options.normalize_polynomials) {
    if (auto coefficients = expr.as_polynomial()) return ForceSpec::polynomial(std::move(*coefficients));
  }
  return ForceSpec::expression(std::move(expr));
}

double eval_force(const ForceSpec& spec, double x) { return spec.eval(x); }

// --- IntegralCache ---------------------------------------------------------

namespace {

// Beyond this many checkpoints a query is integrated directly from 0.
constexpr std::size_t kMaxCheckpoints = std::size_t{1} << 20;

}  // namespace

IntegralCache::IntegralCache(std::shared_ptr<const ForceSpec> spec, double tolerance, double spacing)
    : spec_(std::move(spec)), tolerance_(tolerance), spacing_(spacing) {
  if (!spec_) throw Error(ErrorCode::InvalidArgument, "integral cache needs a force");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "quadrature tolerance must be positive");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw Error(ErrorCode::InvalidArgument, "checkpoint spacing must be positive");
  }
}

double IntegralCache::segment(double a, double b) const {
  const Expression& expr = *spec_->expression_tree();
  return adaptive_simpson([&expr](double t) { return expr.eval(t); }, a, b, tolerance_);
}

double IntegralCache::checkpoint(std::size_t k, bool positive) const {
  {
    std::shared_lock lock(mutex_);
    const auto& side = positive ? positive_ : negative_;
    if (k < side.size()) return side[k];
  }
  std::unique_lock lock(mutex_);
  auto& side = positive ? positive_ : negative_;
  const double dir = positive ? 1.0 : -1.0;
  while (side.size() <= k) {
    const std::size_t j = side.size() - 1;
    const double a = dir * spacing_ * static_cast<double>(j);
    const double b = dir * spacing_ * static_cast<double>(j + 1);
    side.push_back(side.back() + segment(a, b));
  }
  return side[k];
}

double IntegralCache::operator()(double x) const {
  if (x == 0.0) return 0.0;
  if (auto exact = spec_->exact_integral(x)) return *exact;
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "integral bound is not finite");
  const double steps = std::floor(std::abs(x) / spacing_);
  if (steps >= static_cast<double>(kMaxCheckpoints)) return segment(0.0, x);
  const auto k = static_cast<std::size_t>(steps);
  const bool positive = x > 0.0;
  const double base = (positive ? 1.0 : -1.0) * spacing_ * static_cast<double>(k);
  return checkpoint(k, positive) + segment(base, x);
}

std::size_t IntegralCache::checkpoint_count() const {
  std::shared_lock lock(mutex_);
  return positive_.size() + negative_.size() - 2;
}

double integral(const IntegralCache& cache, double x) { return cache(x); }

}  // namespace camforge
