#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "camforge/dynamics.hpp"
#include "camforge/error.hpp"
#include "camforge/inverse_design.hpp"

using namespace camforge;

namespace {

Track identity_track(double k = 100, double L = 0.2) {
  return Track(std::make_shared<PolynomialProfile>(std::vector<double>{0, 1}), LinearGsm(k, L),
               Domain{-L, L, BoundaryKind::TravelLimit, BoundaryKind::TravelLimit});
}

const BranchSet& duffing() {
  static const BranchSet set = [] {
    DesignProblem p;
    p.force = std::make_shared<const ForceSpec>(ForceSpec::polynomial({0, 0, 0, 5000}));
    p.stiffness = 100;
    p.preload = 0.1;
    p.travel_limit = 0.2;
    return design_branches(p);
  }();
  return set;
}

SimConfig config(double dt, double t_end, Integrator method = Integrator::VelocityVerlet) {
  SimConfig c;
  c.dt = dt;
  c.t_end = t_end;
  c.method = method;
  return c;
}

}  // namespace

TEST_CASE("harmonic limit on the identity track") {
  const double period = 2 * std::numbers::pi / 10;
  const auto r = simulate_track(identity_track(), config(1e-4, period), 0.01, 0.0);
  CHECK(r.termination == Termination::Completed);
  for (const auto& s : r.samples) CHECK(std::abs(s.x - 0.01 * std::cos(10 * s.t)) <= 1e-6);
  CHECK(std::abs(r.samples.back().x - 0.01) <= 1e-6);
  CHECK(r.samples.back().t == doctest::Approx(period).epsilon(1e-4));
}

TEST_CASE("energy drift over ten periods") {
  const double t_end = 10 * 2 * std::numbers::pi / 10;
  const auto verlet = simulate_track(identity_track(), config(1e-4, t_end), 0.01, 0.0);
  CHECK(energy_drift(verlet) <= 1e-6);
  const auto rk4 = simulate_track(identity_track(), config(1e-4, t_end, Integrator::RK4), 0.01, 0.0);
  CHECK(energy_drift(rk4) <= 1e-8);
  SimResult single;
  single.samples.push_back({0, 0, 0, 0});
  CHECK_THROWS_AS(energy_drift(single), Error);
}

TEST_CASE("Verlet is time reversible") {
  const auto track = identity_track();
  auto c = config(1e-4, 0.37);
  const auto fwd = simulate_track(track, c, 0.01, 0.02);
  const auto& end = fwd.samples.back();
  const auto back = simulate_track(track, c, end.x, -end.v);
  CHECK(std::abs(back.samples.back().x - 0.01) <= 1e-9 * 0.01);
  CHECK(std::abs(back.samples.back().v + 0.02) <= 1e-9 * 0.02);
}

TEST_CASE("softening Duffing branch escapes") {
  const auto track = to_track(*duffing().find(BranchLabel::Y14));
  const auto r = simulate_track(track, config(1e-5, 2.0), 0.05, 0.0);
  CHECK((r.termination == Termination::DomainExit || r.termination == Termination::Locked));
  CHECK(std::abs(r.samples.back().x) == doctest::Approx(0.2).epsilon(1e-2));
  for (std::size_t i = 1; i < r.samples.size(); ++i) CHECK(r.samples[i].x >= r.samples[i - 1].x);
  CHECK(r.samples.back().t < r.stop_t);

  const auto ref = simulate_reference(*duffing().problem.force, config(1e-5, r.samples.back().t), 0.05, 0.0);
  CHECK(compare_trajectories(r, ref) <= 1e-5);
}

TEST_CASE("reference integration") {
  const auto spring = ForceSpec::polynomial({0, -100});
  const auto r = simulate_reference(spring, config(1e-4, 1.0), 0.02, 0.0);
  for (const auto& s : r.samples) CHECK(std::abs(s.x - 0.02 * std::cos(10 * s.t)) <= 1e-6);
  CHECK(energy_drift(r) <= 1e-6);
  const auto rest = simulate_reference(ForceSpec::polynomial({0, 0, 0, 5000}), config(1e-3, 1.0), 0.0, 0.0);
  for (const auto& s : rest.samples) CHECK(s.x == 0.0);

  const auto table = ForceSpec::sampled({-0.01, 0.01}, {1, -1}, Interpolation::Linear);
  try {
    simulate_reference(table, config(1e-3, 1.0), 0.0, 1.0);
    FAIL("expected OutOfTable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfTable);
  }
}

TEST_CASE("mirror tracks give identical trajectories") {
  const auto a = to_track(*duffing().find(BranchLabel::Y11));
  const auto b = to_track(*duffing().find(BranchLabel::Y21));
  const auto ra = simulate_track(a, config(1e-4, 0.5), 0.03, 0.1);
  const auto rb = simulate_track(b, config(1e-4, 0.5), 0.03, 0.1);
  CHECK(compare_trajectories(ra, rb) <= 1e-12);
  CHECK(compare_trajectories(ra, ra) == 0.0);
}

TEST_CASE("equilibrium stays put") {
  const auto r = simulate_track(to_track(*duffing().find(BranchLabel::Y12)), config(1e-3, 0.5), 0.0, 0.0);
  CHECK(r.termination == Termination::Completed);
  for (const auto& s : r.samples) CHECK(s.x == 0.0);
}

TEST_CASE("lock detection") {
  // a stiff outward push drives |Y| to L on the identity track with negative stiffness
  const auto track = identity_track(-100, 0.2);
  const auto r = simulate_track(track, config(1e-4, 5.0), 0.01, 0.0);
  CHECK(r.termination == Termination::Locked);
  CHECK(std::abs(r.samples.back().x) < 0.2 - 1e-6 * 0.2);
}

TEST_CASE("recording stride") {
  auto c = config(1e-3, 0.1);
  c.record_stride = 7;
  const auto r = simulate_track(identity_track(), c, 0.01, 0.0);
  CHECK(r.steps == 100);
  CHECK(r.samples.size() == 1 + 14 + 1);
  CHECK(r.samples.back().t == doctest::Approx(0.1));
  for (std::size_t i = 1; i < r.samples.size(); ++i) CHECK(r.samples[i].t > r.samples[i - 1].t);
}

TEST_CASE("invalid input") {
  auto code_of = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::IoError;
  };
  const auto track = identity_track();
  CHECK(code_of([&] { simulate_track(track, config(1e-4, 1), 0.3, 0); }) == ErrorCode::InvalidInitialState);
  CHECK(code_of([&] { simulate_track(track, config(1e-4, 1), 0.2 - 1e-8, 0); }) == ErrorCode::InvalidInitialState);
  CHECK(code_of([&] { simulate_track(track, config(-1e-4, 1), 0.0, 0); }) == ErrorCode::InvalidArgument);
  auto c = config(1e-4, 1);
  c.mass = 0;
  CHECK(code_of([&] { simulate_track(track, c, 0.0, 0); }) == ErrorCode::InvalidArgument);
  SimResult a, b;
  a.samples = {{0, 0, 0, 0}, {1, 0, 0, 0}};
  b.samples = {{2, 0, 0, 0}, {3, 0, 0, 0}};
  CHECK(code_of([&] { compare_trajectories(a, b); }) == ErrorCode::NoOverlap);
}
