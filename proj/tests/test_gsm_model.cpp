#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "camforge/error.hpp"
#include "camforge/gsm_model.hpp"

using namespace camforge;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("force law examples") {
  const GsmParams linear{100, 30, 0, 0.2};
  CHECK(gsm_force(linear, 0.0) == 0.0);
  CHECK(gsm_force(linear, 0.1) == doctest::Approx(4.0).epsilon(1e-14));

  const GsmParams gap{100, 30, 0.05, 0.2};
  // 10 - 60 (1 - 0.05 / sqrt(0.03)) * 0.1
  const double expected = 10.0 - 6.0 * (1.0 - 0.05 / std::sqrt(0.03));
  CHECK(gsm_force(gap, 0.1) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(gsm_force(gap, 0.1) == doctest::Approx(5.732).epsilon(1e-4));
}

TEST_CASE("stiffness examples") {
  for (double y : {-0.19, -0.05, 0.0, 0.1, 0.199}) {
    CHECK(gsm_stiffness({100, 30, 0, 0.2}, y) == doctest::Approx(40.0));
    CHECK(gsm_stiffness({100, 50, 0, 0.2}, y) == 0.0);
  }
  const double expected = 40.0 + 60.0 * 0.05 * 0.04 / std::pow(0.03, 1.5);
  CHECK(gsm_stiffness({100, 30, 0.05, 0.2}, 0.1) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(gsm_stiffness({100, 30, 0.05, 0.2}, 0.1) == doctest::Approx(63.094).epsilon(1e-5));
}

TEST_CASE("linear stiffness") {
  CHECK(linear_stiffness({100, 30, 0, 0.2}).stiffness == 40.0);
  CHECK(linear_stiffness({100, 30, 0, 0.2}).gsm->stiffness() == 40.0);
  CHECK(linear_stiffness({100, 150, 0, 0.2}).stiffness == -200.0);
  const auto qzs = linear_stiffness({100, 50, 0, 0.2});
  CHECK(qzs.stiffness == 0.0);
  CHECK(qzs.zero_stiffness);
  CHECK_FALSE(qzs.gsm.has_value());
  CHECK(code_of([] { linear_stiffness({100, 30, 0.01, 0.2}); }) == ErrorCode::NotLinear);
  CHECK(code_of([] { LinearGsm(0.0, 0.2); }) == ErrorCode::ZeroStiffness);
}

TEST_CASE("quasi-zero stiffness flag") {
  CHECK(is_quasi_zero_stiffness({100, 50, 0, 0.2}));
  CHECK_FALSE(is_quasi_zero_stiffness({100, 50.001, 0, 0.2}));
  CHECK_FALSE(is_quasi_zero_stiffness({100, 50, 0.01, 0.2}));
}

TEST_CASE("lock boundary") {
  const GsmParams p{100, 30, 0.05, 0.2};
  for (double y : {0.2, -0.2, 0.3}) {
    CHECK(code_of([&] { gsm_force(p, y); }) == ErrorCode::LockedRange);
    CHECK(code_of([&] { gsm_stiffness(p, y); }) == ErrorCode::LockedRange);
  }
  CHECK(std::isfinite(gsm_force(p, std::nextafter(0.2, 0.0))));
  CHECK(code_of([] { GsmParams{1, 1, 0.2, 0.2}.validate(); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { GsmParams{1, 1, -0.1, 0.2}.validate(); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { GsmParams{1, 1, 0, 0}.validate(); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("random parameters: odd symmetry and finite-difference stiffness") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> k(-500, 500), len(0.05, 1.0), frac(0.0, 0.95), unit(-0.9, 0.9);
  for (int trial = 0; trial < 200; ++trial) {
    const double L = len(rng);
    const GsmParams p{k(rng), k(rng), frac(rng) * L, L};
    const double h = 1e-7 * L;
    for (int i = 0; i < 16; ++i) {
      const double y = unit(rng) * L;  // |y| <= 0.9 L
      const double f = gsm_force(p, y);
      CHECK(std::abs(f + gsm_force(p, -y)) <= 1e-12 * std::max(1e-300, std::abs(f)));
      const double fd = (gsm_force(p, y + h) - gsm_force(p, y - h)) / (2 * h);
      const double exact = gsm_stiffness(p, y);
      CHECK(std::abs(fd - exact) <= 1e-6 * std::abs(exact));
    }
  }
}

TEST_CASE("zero gap keeps stiffness constant") {
  const GsmParams p{123.5, -41.25, 0, 0.3};
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i <= 100; ++i) {
    const double s = gsm_stiffness(p, -0.29 + 0.58 * i / 100);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(hi - lo < 1e-12);
  CHECK(lo == linear_stiffness(p).stiffness);
}
