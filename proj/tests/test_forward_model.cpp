#include <doctest.h>

#include <cmath>
#include <functional>

#include "camforge/error.hpp"
#include "camforge/forward_model.hpp"
#include "oracles.hpp"

using namespace camforge;

namespace {

Track poly_track(std::vector<double> c, double k, double L, double lo, double hi) {
  return Track(std::make_shared<PolynomialProfile>(std::move(c)), LinearGsm(k, L),
               Domain{lo, hi, BoundaryKind::TravelLimit, BoundaryKind::TravelLimit});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

std::vector<TrackSample> sample(const std::function<double(double)>& y, double lo, double hi, int n) {
  std::vector<TrackSample> out;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    out.push_back({x, y(x)});
  }
  return out;
}

}  // namespace

TEST_CASE("spring force") {
  const auto parabola = poly_track({0, 0, 5}, -100, 0.2, -0.2, 0.2);
  CHECK(spring_force(parabola, 0.0) == 0.0);
  CHECK(spring_force(parabola, 0.1) == doctest::Approx(5.0).epsilon(1e-14));
  const auto preloaded = poly_track({0.1, 0, -20}, 100, 0.2, -0.07, 0.07);
  CHECK(preloaded.preload() == 0.1);
  CHECK(spring_force(preloaded, 0.0) == doctest::Approx(-10.0));
}

TEST_CASE("restoring force") {
  const auto parabola = poly_track({0, 0, 5}, -100, 0.2, -0.2, 0.2);
  CHECK(restoring_force(parabola, 0.1) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(restoring_force(parabola, 0.0) == 0.0);
  for (double x : {0.03, 0.11, 0.19}) {
    CHECK(restoring_force(parabola, x) == doctest::Approx(5000 * x * x * x).epsilon(1e-14));
    CHECK(restoring_force(parabola, -x) == -restoring_force(parabola, x));
  }
  CHECK(code_of([&] { restoring_force(parabola, 0.2); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { spring_force(parabola, -0.3); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("potential energy") {
  const auto parabola = poly_track({0, 0, 5}, -100, 0.2, -0.2, 0.2);
  CHECK(potential_energy(parabola, 0.0) == 0.0);
  CHECK(potential_energy(parabola, 0.1) == doctest::Approx(-0.125).epsilon(1e-14));
  const auto mirror = poly_track({0, 0, -5}, -100, 0.2, -0.2, 0.2);
  CHECK(potential_energy(mirror, 0.1) == potential_energy(parabola, 0.1));
}

TEST_CASE("effective stiffness") {
  const auto parabola = poly_track({0, 0, 5}, -100, 0.2, -0.2, 0.2);
  CHECK(effective_stiffness(parabola, 0.0) == 0.0);
  // restoring force 5000 x^3 rises with slope 150 at x = 0.1
  CHECK(effective_stiffness(parabola, 0.1) == doctest::Approx(-150.0).epsilon(1e-13));
  for (double k : {40.0, -7.5}) {
    const auto identity = poly_track({0, 1}, k, 0.2, -0.19, 0.19);
    CHECK(effective_stiffness(identity, 0.05) == k);
    // M X'' = -K X
    CHECK(restoring_force(identity, 0.05) == -k * 0.05);
  }
}

TEST_CASE("mirror invariance, work and derivative consistency") {
  const std::vector<double> c{0.04, 0.3, -1.2, 0.5};
  std::vector<double> neg;
  for (double v : c) neg.push_back(-v);
  const auto a = poly_track(c, 250, 0.3, -0.1, 0.1);
  const auto b = poly_track(neg, 250, 0.3, -0.1, 0.1);
  for (int i = -9; i <= 9; ++i) {
    const double x = 0.0105 * i;
    const double fa = restoring_force(a, x);
    CHECK(oracle::rel_diff(fa, restoring_force(b, x)) <= 1e-12);
    CHECK(oracle::rel_diff(potential_energy(a, x), potential_energy(b, x)) <= 1e-12);
    const double work = oracle::gauss([&](double t) { return restoring_force(a, t); }, 0.0, x, 32);
    CHECK(std::abs(potential_energy(a, x) + work) <= 1e-9);
    const double h = 1e-6;
    const double fd = (restoring_force(a, x + h) - restoring_force(a, x - h)) / (2 * h);
    const double ke = effective_stiffness(a, x);
    CHECK(std::abs(fd + ke) <= 1e-5 * std::max(1.0, std::abs(ke)));
  }
}

TEST_CASE("track validation") {
  CHECK(code_of([] { poly_track({0, 0, 5}, -100, 0.2, -0.25, 0.2); }) == ErrorCode::TravelExceeded);
  CHECK(code_of([] { poly_track({0.2}, 100, 0.2, -0.1, 0.1); }) == ErrorCode::TravelExceeded);
  CHECK(code_of([] { poly_track({0, 1}, 100, 0.2, 0.01, 0.1); }) == ErrorCode::InvalidArgument);
  // a one-sided domain closed at 0
  Domain half{0.0, 0.1, BoundaryKind::BasePoint, BoundaryKind::TravelLimit, true, false};
  Track t(std::make_shared<PolynomialProfile>(std::vector<double>{0, 1}), LinearGsm(1, 0.2), half);
  CHECK(restoring_force(t, 0.0) == 0.0);
  CHECK(code_of([&] { restoring_force(t, -1e-9); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("fit_track") {
  const auto samples = sample([](double x) { return 5 * x * x; }, -0.19, 0.19, 200);
  const auto track = fit_track(samples, LinearGsm(-100, 0.2));
  CHECK(std::abs(track.preload()) < 1e-9);
  double sup = 0.0;
  for (int i = 1; i < 400; ++i) {
    const double x = -0.185 + 0.37 * i / 400;
    sup = std::max(sup, std::abs(restoring_force(track, x) - 5000 * x * x * x));
  }
  CHECK(sup / (1 + 5000 * std::pow(0.19, 3)) <= 1e-3);

  const auto line = fit_track(std::vector<TrackSample>{{-1, -0.1}, {1, 0.1}}, LinearGsm(10, 0.2));
  CHECK(line.profile().value(0.5) == doctest::Approx(0.05));
  CHECK(restoring_force(line, 0.5) == doctest::Approx(-10 * 0.05 * 0.1));

  CHECK(code_of([] { fit_track(std::vector<TrackSample>{{-1, 0}, {-1, 0.1}}, LinearGsm(10, 0.2)); }) ==
        ErrorCode::NonMonotoneX);
  CHECK(code_of([] { fit_track(std::vector<TrackSample>{{-1, 0}, {1, 0.2}}, LinearGsm(10, 0.2)); }) ==
        ErrorCode::TravelExceeded);
  CHECK(code_of([] { fit_track(std::vector<TrackSample>{{0.1, 0}, {1, 0.1}}, LinearGsm(10, 0.2)); }) ==
        ErrorCode::InvalidArgument);
}
