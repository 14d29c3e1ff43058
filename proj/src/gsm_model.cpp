#include "camforge/gsm_model.hpp"

#include <cmath>
#include <sstream>

#include "camforge/error.hpp"

namespace camforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::LockedRange: return "LockedRange";
    case ErrorCode::NotLinear: return "NotLinear";
    case ErrorCode::ZeroStiffness: return "ZeroStiffness";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonIntegerExponent: return "NonIntegerExponent";
    case ErrorCode::OutOfTable: return "OutOfTable";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NonFiniteForce: return "NonFiniteForce";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::TravelExceeded: return "TravelExceeded";
    case ErrorCode::NonMonotoneX: return "NonMonotoneX";
    case ErrorCode::SearchWindowEmpty: return "SearchWindowEmpty";
    case ErrorCode::RootSingularity: return "RootSingularity";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::InvalidInitialState: return "InvalidInitialState";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

void GsmParams::validate() const {
  if (!(rod_length > 0.0) || !std::isfinite(rod_length)) {
    throw Error(ErrorCode::InvalidArgument, "rod length must be positive");
  }
  if (!(half_gap >= 0.0) || !(half_gap < rod_length)) {
    throw Error(ErrorCode::InvalidArgument, "half gap B must satisfy 0 <= B < L");
  }
  if (!std::isfinite(k_vertical) || !std::isfinite(k_oblique)) {
    throw Error(ErrorCode::InvalidArgument, "spring stiffnesses must be finite");
  }
}

LinearGsm::LinearGsm(double stiffness, double travel_limit)
    : stiffness_(stiffness), travel_limit_(travel_limit) {
  if (!(travel_limit > 0.0) || !std::isfinite(travel_limit)) {
    throw Error(ErrorCode::InvalidArgument, "travel limit must be positive");
  }
  if (stiffness == 0.0) {
    throw Error(ErrorCode::ZeroStiffness, "spring stiffness K_GSM is zero");
  }
  if (!std::isfinite(stiffness)) {
    throw Error(ErrorCode::InvalidArgument, "spring stiffness must be finite");
  }
}

namespace {

void require_unlocked(const GsmParams& params, double y) {
  if (!(std::abs(y) < params.rod_length)) {
    std::ostringstream msg;
    msg << "displacement " << y << " reaches the rod lock at |y| = " << params.rod_length;
    throw Error(ErrorCode::LockedRange, msg.str());
  }
}

}  // namespace

double gsm_force(const GsmParams& params, double y) {
  params.validate();
  require_unlocked(params, y);
  // Extended precision so the result is close to correctly rounded; finite
  // differences of the force stay accurate where the stiffness nearly cancels.
  const long double L = params.rod_length;
  const long double t = y;
  const long double root = std::sqrt((L - t) * (L + t));
  const long double k2 = params.k_oblique;
  return static_cast<double>((params.k_vertical - 2.0L * k2) * t + 2.0L * k2 * params.half_gap * t / root);
}

double gsm_stiffness(const GsmParams& params, double y) {
  params.validate();
  require_unlocked(params, y);
  const long double L = params.rod_length;
  const long double gap2 = (L - y) * (L + y);
  const long double k2 = params.k_oblique;
  return static_cast<double>(params.k_vertical - 2.0L * k2 + 2.0L * k2 * params.half_gap * L * L / (gap2 * std::sqrt(gap2)));
}

LinearStiffness linear_stiffness(const GsmParams& params) {
  params.validate();
  if (params.half_gap != 0.0) {
    throw Error(ErrorCode::NotLinear, "spring is nonlinear: half gap B is nonzero");
  }
  LinearStiffness out;
  out.stiffness = params.k_vertical - 2.0 * params.k_oblique;
  out.zero_stiffness = out.stiffness == 0.0;
  if (!out.zero_stiffness) out.gsm.emplace(out.stiffness, params.rod_length);
  return out;
}

bool is_quasi_zero_stiffness(const GsmParams& params) {
  if (params.half_gap != 0.0) return false;
  return std::abs(params.k_vertical - 2.0 * params.k_oblique) < 1e-9 * std::abs(params.k_vertical);
}

}  // namespace camforge
